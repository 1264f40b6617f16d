#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace tfsq {

// Analytic Gaussian wavelet psi(t) = g(t) e^{i*omega0*t} with
// ghat(w) = sqrt(2*pi*sigma) * exp(-sigma*w^2/2), g(t) = exp(-t^2/(2*sigma)).
struct WaveletSpec {
    double omega0 = 6.0;  // carrier [rad]
    double sigma = 1.0;   // Gaussian shape parameter

    // Effective time-domain support radius: |g| < 1e-8 outside [-d, d].
    double support_radius() const;
    double ghat0() const;  // ghat(0) = sqrt(2*pi*sigma)

    void validate() const;
};

double gauss_hat(const WaveletSpec& spec, double omega);

// Linear frequency grid aligned with FFT bins: omegas[j] = (k_min+j)*dxi,
// j = 0 .. L/2 - k_min, scales a_j = omega0 / omegas[j].
struct ScaleGrid {
    std::vector<double> omegas;  // strictly increasing [rad/s]
    std::vector<double> scales;  // omega0 / omega, strictly decreasing
    std::size_t k_min = 0;       // first FFT bin
    std::size_t signal_len = 0;  // L the grid was built for
    double fs = 0.0;

    std::size_t size() const { return omegas.size(); }
    double freq_step_rad() const;  // dxi = 2*pi*fs/L
};

ScaleGrid make_scale_grid(std::size_t len, double fs, const WaveletSpec& spec,
                          std::size_t k_min);

enum class WindowWeight { plain, freq_weighted, time_weighted };

// Length-L frequency-domain multipliers for one scale row, evaluated on the
// unwrapped DFT grid xi_m = m * dxi, m = 0 .. L-1 (no Nyquist cut; the
// window decays past L/2 on its own):
//   plain         ghat(a*(xi - w))
//   freq_weighted a*(xi - w) * ghat(a*(xi - w))
//   time_weighted i*sigma*a*(xi - w) * ghat(a*(xi - w))
// where w = omega0/a. The time_weighted sign follows the conjugated kernel
// of the analysis integral; the Dirac test pins it.
std::vector<std::complex<double>> window_row(const WaveletSpec& spec, double a,
                                             WindowWeight weight, std::size_t len,
                                             double fs);

}  // namespace tfsq
