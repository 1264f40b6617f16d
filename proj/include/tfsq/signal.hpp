#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

namespace tfsq {

// Uniformly sampled time series. Real signals are stored with zero
// imaginary parts; analytic signals carry both parts.
struct DiscreteSignal {
    std::vector<std::complex<double>> samples;
    double fs = 0.0;  // sample rate [Hz]
    double t0 = 0.0;  // start time [s], metadata only

    std::size_t size() const { return samples.size(); }
    bool is_real(double tol = 0.0) const;
    double power() const;  // mean |x|^2
};

// Full-length DFT with the strictly-negative-frequency half zeroed.
// Convention: bins are the plain unnormalized DFT of the samples; no x2
// on positive bins. Reconstruction therefore returns the analytic signal
// and real signals are recovered as 2*Re{.} (bin 0 / Nyquist excepted).
struct ComplexSpectrum {
    std::vector<std::complex<double>> bins;  // length L
    double freq_step_rad = 0.0;              // 2*pi/(L*T)
};

struct GaussianBand {
    double center_rad = 0.0;
    double width_rad = 0.0;
};

// Frequency-domain component model: phase phi(w) = sum beta_k w^k / k!,
// amplitude either constant or a Gaussian profile, supported on
// [omega_lo, omega_hi] (rad/s).
struct ChirpModel {
    std::array<double, 3> beta{0.0, 0.0, 0.0};
    double amplitude = 1.0;
    std::optional<GaussianBand> band_profile;
    double omega_lo = 0.0;
    double omega_hi = 0.0;

    double phi(double w) const;
    double phi_prime(double w) const { return beta[1] + beta[2] * w; }
    double phi_second() const { return beta[2]; }
    double group_delay(double w) const { return -phi_prime(w); }
    double amp(double w) const;

    void validate() const;  // throws std::invalid_argument
};

DiscreteSignal synth_dirac(double t0_s, std::size_t len, double fs);

// Builds x on the nonnegative-frequency grid from A(xi)*exp(i*phi(xi))
// and inverse-transforms; the result is an analytic signal.
DiscreteSignal synth_gd_chirp(const ChirpModel& model, std::size_t len, double fs);

struct PulseShape {
    double carrier_hz = 0.0;
    double decay_per_s = 0.0;
};

DiscreteSignal synth_pulse_train(double period_s, int n_pulses, std::size_t len,
                                 double fs, const PulseShape& pulse);

// Two well-separated band-limited transient modes; the stock noisy-signal
// testbed for the entropy comparisons.
DiscreteSignal synth_two_mode(std::size_t len, double fs);

// x + white Gaussian noise scaled so the realized power ratio is exactly
// snr_db. Deterministic per seed (counter-based generator, see noise_gaussian).
// An infinite snr_db returns x unchanged.
DiscreteSignal add_noise_snr(const DiscreteSignal& x, double snr_db, std::uint64_t seed);

// Counter-based Gaussian stream: splitmix64 keyed by (seed, index) feeding
// Box-Muller. Reproducible across platforms within this implementation.
double noise_gaussian(std::uint64_t seed, std::uint64_t index);

ComplexSpectrum analytic_spectrum(const DiscreteSignal& x);

// Inverse of analytic_spectrum up to the zeroed negative half: plain
// inverse DFT of the bins.
DiscreteSignal synthesize_time(const ComplexSpectrum& spec, double fs, double t0 = 0.0);

}  // namespace tfsq
