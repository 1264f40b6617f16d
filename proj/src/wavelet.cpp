#include "tfsq/wavelet.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tfsq {

void WaveletSpec::validate() const {
    if (!(sigma > 0.0)) throw std::invalid_argument("wavelet sigma must be positive");
    if (!(omega0 > 0.0)) throw std::invalid_argument("wavelet omega0 must be positive");
}

double WaveletSpec::support_radius() const {
    // g(t) = exp(-t^2/(2*sigma)) < 1e-8  <=>  |t| > sqrt(2*sigma*ln(1e8))
    return std::sqrt(2.0 * sigma * std::log(1e8));
}

double WaveletSpec::ghat0() const { return std::sqrt(2.0 * std::numbers::pi * sigma); }

double gauss_hat(const WaveletSpec& spec, double omega) {
    return spec.ghat0() * std::exp(-0.5 * spec.sigma * omega * omega);
}

double ScaleGrid::freq_step_rad() const {
    return 2.0 * std::numbers::pi * fs / static_cast<double>(signal_len);
}

ScaleGrid make_scale_grid(std::size_t len, double fs, const WaveletSpec& spec,
                          std::size_t k_min) {
    spec.validate();
    if (len < 8) throw std::invalid_argument("scale grid: signal length must be >= 8");
    if (k_min < 1 || k_min >= len / 2)
        throw std::out_of_range("scale grid: k_min must satisfy 1 <= k_min < L/2");
    ScaleGrid grid;
    grid.k_min = k_min;
    grid.signal_len = len;
    grid.fs = fs;
    const double dxi = 2.0 * std::numbers::pi * fs / static_cast<double>(len);
    const std::size_t count = len / 2 - k_min + 1;
    grid.omegas.reserve(count);
    grid.scales.reserve(count);
    for (std::size_t j = 0; j < count; ++j) {
        const double w = static_cast<double>(k_min + j) * dxi;
        grid.omegas.push_back(w);
        grid.scales.push_back(spec.omega0 / w);
    }
    return grid;
}

std::vector<std::complex<double>> window_row(const WaveletSpec& spec, double a,
                                             WindowWeight weight, std::size_t len,
                                             double fs) {
    if (!(a > 0.0)) throw std::invalid_argument("window row: scale must be positive");
    const double dxi = 2.0 * std::numbers::pi * fs / static_cast<double>(len);
    const double omega = spec.omega0 / a;
    std::vector<std::complex<double>> row(len);
    for (std::size_t m = 0; m < len; ++m) {
        // Unwrapped DFT grid: xi runs 0 .. 2*pi*fs. Bins above L/2 act as
        // super-Nyquist continuation, so the Gaussian is never cut at the
        // Nyquist bin; its value at both grid ends is <= ghat(omega0), which
        // is what suppresses the conjugate half of a real signal's spectrum.
        const double xi = static_cast<double>(m) * dxi;
        const double u = a * (xi - omega);
        const double g = gauss_hat(spec, u);
        switch (weight) {
            case WindowWeight::plain:
                row[m] = {g, 0.0};
                break;
            case WindowWeight::freq_weighted:
                row[m] = {u * g, 0.0};
                break;
            case WindowWeight::time_weighted:
                // Conjugated transform of t*g at the shifted argument.
                row[m] = {0.0, spec.sigma * u * g};
                break;
        }
    }
    return row;
}

}  // namespace tfsq
