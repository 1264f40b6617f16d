#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

#include "tfsq/fft.hpp"
#include "tfsq/signal.hpp"

using namespace tfsq;

namespace {

constexpr double kPi = std::numbers::pi;

double rel_err(const std::vector<std::complex<double>>& a,
               const std::vector<std::complex<double>>& b) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num += std::norm(a[i] - b[i]);
        den += std::norm(a[i]);
    }
    return den == 0.0 ? std::sqrt(num) : std::sqrt(num / den);
}

}  // namespace

TEST_CASE("synth_dirac places a unit sample at the rounded position") {
    const auto x = synth_dirac(0.5, 200, 200.0);
    REQUIRE(x.size() == 200);
    CHECK(x.samples[100] == std::complex<double>{1.0, 0.0});
    double off_sum = 0.0;
    for (std::size_t n = 0; n < x.size(); ++n)
        if (n != 100) off_sum += std::abs(x.samples[n]);
    CHECK(off_sum == 0.0);

    const auto y = synth_dirac(0.0, 8, 1.0);
    CHECK(y.samples[0] == std::complex<double>{1.0, 0.0});

    // nearest-bin rounding
    const auto z = synth_dirac(0.4999, 200, 200.0);
    CHECK(z.samples[100] == std::complex<double>{1.0, 0.0});
    const auto t = synth_dirac(0.5026, 200, 200.0);  // 100.52 samples -> 101
    CHECK(t.samples[101] == std::complex<double>{1.0, 0.0});
}

TEST_CASE("synth_dirac rejects positions outside the record") {
    CHECK_THROWS_AS(synth_dirac(-0.1, 64, 100.0), std::out_of_range);
    CHECK_THROWS_AS(synth_dirac(0.64, 64, 100.0), std::out_of_range);
    CHECK_THROWS_AS(synth_dirac(0.5, 4, 100.0), std::invalid_argument);  // too short
}

TEST_CASE("synth_gd_chirp with constant group delay concentrates at -beta1") {
    ChirpModel m;
    m.beta = {0.0, -0.5, 0.0};
    m.omega_lo = 0.0;
    m.omega_hi = kPi * 200.0;
    const auto x = synth_gd_chirp(m, 200, 200.0);
    std::size_t peak = 0;
    double best = 0.0;
    for (std::size_t n = 0; n < x.size(); ++n) {
        if (std::abs(x.samples[n]) > best) {
            best = std::abs(x.samples[n]);
            peak = n;
        }
    }
    CHECK(peak == 100);  // t = 0.5 s at fs = 200
}

TEST_CASE("synth_gd_chirp forward transform reproduces the constructed spectrum") {
    ChirpModel m;
    m.beta = {0.3, -0.3, -2e-3};
    m.band_profile = GaussianBand{60.0, 15.0};
    m.omega_lo = 20.0;
    m.omega_hi = 120.0;
    const std::size_t len = 256;
    const double fs = 64.0;
    const auto x = synth_gd_chirp(m, len, fs);

    const auto bins = fft(x.samples);
    const double dxi = 2.0 * kPi * fs / static_cast<double>(len);
    std::vector<std::complex<double>> expect(len, {0.0, 0.0});
    for (std::size_t k = 0; k <= len / 2; ++k) {
        const double w = static_cast<double>(k) * dxi;
        const double a = m.amp(w);
        if (a != 0.0) expect[k] = std::polar(a, m.phi(w));
    }
    CHECK(rel_err(expect, bins) < 1e-10);
}

TEST_CASE("synth_gd_chirp validates its band") {
    ChirpModel m;
    m.beta = {0.0, -0.5, 0.0};
    m.omega_lo = 0.0;
    m.omega_hi = kPi * 300.0;  // past Nyquist for fs=200
    CHECK_THROWS_AS(synth_gd_chirp(m, 200, 200.0), std::out_of_range);

    ChirpModel bad;
    bad.beta = {0.0, 0.5, 0.0};  // negative group delay
    bad.omega_lo = 0.0;
    bad.omega_hi = 100.0;
    CHECK_THROWS_AS(synth_gd_chirp(bad, 200, 200.0), std::invalid_argument);
}

TEST_CASE("synth_pulse_train spacing and degenerate train") {
    const double fs = 25600.0;
    const auto x = synth_pulse_train(9.3e-3, 8, 2048, fs, {1060.0, 800.0});
    REQUIRE(x.size() == 2048);

    // envelope autocorrelation peaks at the sample-rounded period
    std::vector<double> env(x.size());
    for (std::size_t n = 0; n < x.size(); ++n) env[n] = std::abs(x.samples[n]);
    const long period = std::lround(9.3e-3 * fs);  // 238
    double best = 0.0;
    long best_lag = 0;
    for (long lag = period / 2; lag < 3 * period / 2; ++lag) {
        double acc = 0.0;
        for (std::size_t n = 0; n + static_cast<std::size_t>(lag) < env.size(); ++n)
            acc += env[n] * env[n + static_cast<std::size_t>(lag)];
        if (acc > best) {
            best = acc;
            best_lag = lag;
        }
    }
    CHECK(std::abs(best_lag - period) <= 1);

    const auto single = synth_pulse_train(9.3e-3, 1, 512, fs, {1060.0, 800.0});
    CHECK(std::abs(single.samples[0].real() - 1.0) < 1e-12);  // cos(0) at onset

    CHECK_THROWS_AS(synth_pulse_train(9.3e-3, 100, 2048, fs, {1060.0, 800.0}),
                    std::out_of_range);
}

TEST_CASE("add_noise_snr realizes the requested power ratio exactly") {
    const auto x = synth_two_mode(512, 1024.0);
    const auto y = add_noise_snr(x, 0.0, 3);
    double pw = 0.0;
    for (std::size_t n = 0; n < x.size(); ++n) pw += std::norm(y.samples[n] - x.samples[n]);
    pw /= static_cast<double>(x.size());
    CHECK(std::abs(pw / x.power() - 1.0) < 1e-12);
}

TEST_CASE("add_noise_snr determinism and sentinels") {
    const auto x = synth_two_mode(256, 512.0);
    const auto a = add_noise_snr(x, 10.0, 42);
    const auto b = add_noise_snr(x, 10.0, 42);
    CHECK(a.samples == b.samples);
    const auto c = add_noise_snr(x, 10.0, 43);
    CHECK(c.samples != a.samples);

    const auto clean = add_noise_snr(x, std::numeric_limits<double>::infinity(), 42);
    CHECK(clean.samples == x.samples);

    DiscreteSignal zero;
    zero.samples.assign(64, {0.0, 0.0});
    zero.fs = 100.0;
    CHECK_THROWS_AS(add_noise_snr(zero, 10.0, 1), std::domain_error);
}

TEST_CASE("noise_gaussian is a reproducible unit-variance stream") {
    CHECK(noise_gaussian(7, 123) == noise_gaussian(7, 123));
    double mean = 0.0, var = 0.0;
    const std::size_t n = 65536;
    for (std::size_t i = 0; i < n; ++i) mean += noise_gaussian(11, i);
    mean /= static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double d = noise_gaussian(11, i) - mean;
        var += d * d;
    }
    var /= static_cast<double>(n);
    CHECK(std::abs(mean) < 0.02);
    CHECK(std::abs(var - 1.0) < 0.03);
}

TEST_CASE("analytic_spectrum zeroes the negative half and keeps bin 0/Nyquist") {
    const std::size_t len = 64;
    DiscreteSignal x;
    x.fs = 64.0;
    x.samples.resize(len);
    for (std::size_t n = 0; n < len; ++n)
        x.samples[n] = std::cos(2.0 * kPi * 5.0 * static_cast<double>(n) / len);
    const auto spec = analytic_spectrum(x);
    REQUIRE(spec.bins.size() == len);
    CHECK(std::abs(spec.bins[5]) == doctest::Approx(len / 2.0).epsilon(1e-12));
    for (std::size_t m = 0; m < len; ++m) {
        if (m == 5) continue;
        CHECK(std::abs(spec.bins[m]) < 1e-9);
    }
}

TEST_CASE("analytic_spectrum round trip recovers a real signal as 2*Re") {
    const std::size_t len = 64;
    DiscreteSignal x;
    x.fs = 32.0;
    x.samples.resize(len);
    for (std::size_t n = 0; n < len; ++n) x.samples[n] = noise_gaussian(5, n);
    auto spec = analytic_spectrum(x);
    // halve bin 0 and Nyquist so that 2*Re reproduces them once
    spec.bins[0] *= 0.5;
    spec.bins[len / 2] *= 0.5;
    const auto y = synthesize_time(spec, x.fs);
    double worst = 0.0;
    for (std::size_t n = 0; n < len; ++n)
        worst = std::max(worst, std::abs(2.0 * y.samples[n].real() - x.samples[n].real()));
    CHECK(worst < 1e-10);
}

TEST_CASE("Parseval holds for the continuous-normalization spectrum") {
    const std::size_t len = 128;
    const double fs = 50.0;
    const double T = 1.0 / fs;
    DiscreteSignal x;
    x.fs = fs;
    x.samples.resize(len);
    for (std::size_t n = 0; n < len; ++n) x.samples[n] = noise_gaussian(9, n);
    const auto bins = fft(x.samples);  // full spectrum, before zeroing
    const double dxi = 2.0 * kPi * fs / static_cast<double>(len);
    double lhs = 0.0, rhs = 0.0;
    for (std::size_t n = 0; n < len; ++n) lhs += std::norm(x.samples[n]) * T;
    // x_hat(xi) ~ T * DFT approximates the continuous transform
    for (std::size_t m = 0; m < len; ++m) rhs += std::norm(T * bins[m]) / (2.0 * kPi) * dxi;
    CHECK(std::abs(lhs - rhs) / lhs < 1e-10);
}

TEST_CASE("synth_two_mode concentrates its spectrum in the design bands") {
    const auto x = synth_two_mode(512, 1024.0);
    const auto spec = analytic_spectrum(x);
    const double w_ny = kPi * x.fs;
    double in_band = 0.0, total = 0.0;
    for (std::size_t m = 0; m <= 256; ++m) {
        const double w = static_cast<double>(m) * spec.freq_step_rad;
        const double e = std::norm(spec.bins[m]);
        total += e;
        if (w >= 0.05 * w_ny && w <= 0.60 * w_ny) in_band += e;
    }
    CHECK(in_band / total > 0.999);
}
