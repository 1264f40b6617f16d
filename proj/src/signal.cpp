#include "tfsq/signal.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "tfsq/fft.hpp"

namespace tfsq {

namespace {

constexpr std::size_t kMinLength = 8;

void check_length(std::size_t len) {
    if (len < kMinLength) throw std::invalid_argument("signal length must be >= 8");
}

void check_fs(double fs) {
    if (!(fs > 0.0)) throw std::invalid_argument("sample rate must be positive");
}

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double uniform01(std::uint64_t seed, std::uint64_t index) {
    const std::uint64_t z = splitmix64(seed + index * 0x9E3779B97F4A7C15ULL);
    return (static_cast<double>(z >> 11) + 0.5) * 0x1p-53;  // open (0,1)
}

}  // namespace

bool DiscreteSignal::is_real(double tol) const {
    for (const auto& s : samples) {
        if (std::abs(s.imag()) > tol) return false;
    }
    return true;
}

double DiscreteSignal::power() const {
    double acc = 0.0;
    for (const auto& s : samples) acc += std::norm(s);
    return samples.empty() ? 0.0 : acc / static_cast<double>(samples.size());
}

double ChirpModel::phi(double w) const {
    return beta[0] + beta[1] * w + 0.5 * beta[2] * w * w;
}

double ChirpModel::amp(double w) const {
    if (w < omega_lo || w > omega_hi) return 0.0;
    if (!band_profile) return amplitude;
    const double u = (w - band_profile->center_rad) / band_profile->width_rad;
    return amplitude * std::exp(-0.5 * u * u);
}

void ChirpModel::validate() const {
    if (omega_lo < 0.0) throw std::invalid_argument("chirp band: omega_lo must be >= 0");
    if (!(omega_hi > omega_lo)) throw std::invalid_argument("chirp band: omega_hi <= omega_lo");
    if (band_profile && !(band_profile->width_rad > 0.0))
        throw std::invalid_argument("chirp band profile: width must be positive");
    if (amplitude != 0.0) {
        if (group_delay(omega_lo) <= 0.0 || group_delay(omega_hi) <= 0.0)
            throw std::invalid_argument("chirp group delay must be positive over the band");
    }
}

DiscreteSignal synth_dirac(double t0_s, std::size_t len, double fs) {
    check_length(len);
    check_fs(fs);
    if (t0_s < 0.0 || t0_s >= static_cast<double>(len) / fs)
        throw std::out_of_range("dirac position outside the record");
    // Nearest bin, ties toward +inf.
    const auto idx = static_cast<std::size_t>(std::floor(t0_s * fs + 0.5));
    if (idx >= len) throw std::out_of_range("dirac position rounds past the record");
    DiscreteSignal x;
    x.samples.assign(len, {0.0, 0.0});
    x.samples[idx] = {1.0, 0.0};
    x.fs = fs;
    return x;
}

DiscreteSignal synth_gd_chirp(const ChirpModel& model, std::size_t len, double fs) {
    check_length(len);
    check_fs(fs);
    model.validate();
    if (model.omega_hi > std::numbers::pi * fs + 1e-12)
        throw std::out_of_range("chirp band exceeds Nyquist");
    ComplexSpectrum spec;
    spec.bins.assign(len, {0.0, 0.0});
    spec.freq_step_rad = 2.0 * std::numbers::pi * fs / static_cast<double>(len);
    for (std::size_t m = 0; m <= len / 2; ++m) {
        const double w = static_cast<double>(m) * spec.freq_step_rad;
        const double a = model.amp(w);
        if (a != 0.0) spec.bins[m] = std::polar(a, model.phi(w));
    }
    return synthesize_time(spec, fs);
}

DiscreteSignal synth_pulse_train(double period_s, int n_pulses, std::size_t len,
                                 double fs, const PulseShape& pulse) {
    check_length(len);
    check_fs(fs);
    if (n_pulses < 1) throw std::invalid_argument("pulse train needs at least one pulse");
    if (!(period_s > 0.0)) throw std::invalid_argument("pulse period must be positive");
    if (static_cast<double>(n_pulses) * period_s * fs > static_cast<double>(len))
        throw std::out_of_range("pulse train overflows the record");
    DiscreteSignal x;
    x.samples.assign(len, {0.0, 0.0});
    x.fs = fs;
    const double two_pi_f = 2.0 * std::numbers::pi * pulse.carrier_hz;
    for (int p = 0; p < n_pulses; ++p) {
        const double tp = static_cast<double>(p) * period_s;
        const auto n_start = static_cast<std::size_t>(std::ceil(tp * fs - 1e-9));
        for (std::size_t n = n_start; n < len; ++n) {
            const double dt = static_cast<double>(n) / fs - tp;
            x.samples[n] += std::exp(-pulse.decay_per_s * dt) * std::cos(two_pi_f * dt);
        }
    }
    return x;
}

DiscreteSignal synth_two_mode(std::size_t len, double fs) {
    check_length(len);
    check_fs(fs);
    const double w_ny = std::numbers::pi * fs;
    const double t_rec = static_cast<double>(len) / fs;

    ChirpModel c1;
    c1.beta = {0.0, -0.40 * t_rec, -0.50 * t_rec / w_ny};
    c1.band_profile = GaussianBand{0.25 * w_ny, 0.09 * w_ny};
    c1.omega_lo = 0.10 * w_ny;
    c1.omega_hi = 0.45 * w_ny;

    ChirpModel c2;
    c2.beta = {0.0, -0.80 * t_rec, 0.30 * t_rec / w_ny};
    c2.band_profile = GaussianBand{0.33 * w_ny, 0.10 * w_ny};
    c2.omega_lo = 0.15 * w_ny;
    c2.omega_hi = 0.55 * w_ny;

    DiscreteSignal a = synth_gd_chirp(c1, len, fs);
    const DiscreteSignal b = synth_gd_chirp(c2, len, fs);
    for (std::size_t n = 0; n < len; ++n) a.samples[n] += b.samples[n];
    return a;
}

double noise_gaussian(std::uint64_t seed, std::uint64_t index) {
    const std::uint64_t pair = index / 2;
    const double u1 = uniform01(seed, 2 * pair);
    const double u2 = uniform01(seed, 2 * pair + 1);
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    return (index % 2 == 0) ? r * std::cos(theta) : r * std::sin(theta);
}

DiscreteSignal add_noise_snr(const DiscreteSignal& x, double snr_db, std::uint64_t seed) {
    if (std::isinf(snr_db) && snr_db > 0.0) return x;
    const double px = x.power();
    if (px == 0.0) throw std::domain_error("SNR undefined for a zero signal");
    const std::size_t len = x.size();
    const bool real_input = x.is_real();

    std::vector<std::complex<double>> w(len);
    double pw = 0.0;
    for (std::size_t n = 0; n < len; ++n) {
        if (real_input) {
            w[n] = {noise_gaussian(seed, n), 0.0};
        } else {
            w[n] = {noise_gaussian(seed, 2 * n), noise_gaussian(seed, 2 * n + 1)};
        }
        pw += std::norm(w[n]);
    }
    pw /= static_cast<double>(len);
    // Scale from realized noise power: the requested ratio holds exactly.
    const double scale = std::sqrt(px / (pw * std::pow(10.0, snr_db / 10.0)));
    DiscreteSignal out = x;
    for (std::size_t n = 0; n < len; ++n) out.samples[n] += scale * w[n];
    return out;
}

ComplexSpectrum analytic_spectrum(const DiscreteSignal& x) {
    const std::size_t len = x.size();
    check_length(len);
    ComplexSpectrum spec;
    spec.bins = fft(x.samples);
    spec.freq_step_rad = 2.0 * std::numbers::pi * x.fs / static_cast<double>(len);
    // Zero the strictly negative frequencies; bin 0 and Nyquist stay as-is.
    for (std::size_t m = len / 2 + 1; m < len; ++m) spec.bins[m] = {0.0, 0.0};
    return spec;
}

DiscreteSignal synthesize_time(const ComplexSpectrum& spec, double fs, double t0) {
    DiscreteSignal x;
    x.samples = ifft(spec.bins);
    x.fs = fs;
    x.t0 = t0;
    return x;
}

}  // namespace tfsq
