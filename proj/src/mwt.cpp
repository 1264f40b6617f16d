#include "tfsq/mwt.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "tfsq/fft.hpp"
#include "tfsq/parallel.hpp"

namespace tfsq {

double TFMatrix::row_omega(std::size_t k) const {
    return 2.0 * std::numbers::pi * fs * static_cast<double>(k_min + k) /
           static_cast<double>(cols);
}

double TFMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& z : data) m = std::max(m, std::abs(z));
    return m;
}

namespace {

void check_grid(const DiscreteSignal& x, const ScaleGrid& grid) {
    if (grid.signal_len != x.size() || grid.fs != x.fs)
        throw std::invalid_argument("scale grid was built for a different signal");
}

}  // namespace

TFMatrix mwt(const DiscreteSignal& x, const ScaleGrid& grid, const WaveletSpec& spec,
             WindowWeight weight, int threads) {
    check_grid(x, grid);
    const std::size_t len = x.size();
    const std::size_t n_rows = grid.size();
    // Full DFT; the window rows suppress the conjugate half themselves.
    const std::vector<std::complex<double>> xhat = fft(x.samples);

    TFMatrix out;
    out.rows = n_rows;
    out.cols = len;
    out.k_min = grid.k_min;
    out.fs = x.fs;
    out.t0 = x.t0;
    out.data.assign(n_rows * len, {0.0, 0.0});

    parallel_blocks(n_rows, threads, [&](std::size_t begin, std::size_t end) {
        Fft plan(len);
        std::vector<std::complex<double>> prod(len);
        for (std::size_t k = begin; k < end; ++k) {
            const auto win = window_row(spec, grid.scales[k], weight, len, x.fs);
            for (std::size_t m = 0; m < len; ++m) prod[m] = xhat[m] * win[m];
            std::complex<double>* row = out.row(k);
            plan.inverse(prod.data(), row);
            // Extra phase e^{-i*omega_k*t_n}; omega_k sits exactly on bin
            // k_min + k, so the angle is -2*pi*(k_min+k)*n/L.
            const double step =
                -2.0 * std::numbers::pi * static_cast<double>(grid.k_min + k) /
                static_cast<double>(len);
            for (std::size_t n = 0; n < len; ++n) {
                row[n] *= std::polar(1.0, step * static_cast<double>(n));
            }
        }
    });
    return out;
}

namespace {

// g(t) by trapezoidal quadrature of ghat over its effective support; kept
// numerical so the oracle does not share the engine's closed forms.
class WindowQuadrature {
public:
    explicit WindowQuadrature(const WaveletSpec& spec) {
        const double w_max = 9.0 / std::sqrt(spec.sigma);
        step_ = 2.0 * w_max / static_cast<double>(kSteps);
        nodes_.reserve(kSteps + 1);
        values_.reserve(kSteps + 1);
        for (std::size_t i = 0; i <= kSteps; ++i) {
            const double w = -w_max + static_cast<double>(i) * step_;
            nodes_.push_back(w);
            values_.push_back(gauss_hat(spec, w));
        }
    }

    double g(double t) const {
        double acc = 0.0;
        for (std::size_t i = 0; i <= kSteps; ++i) {
            const double term = values_[i] * std::cos(nodes_[i] * t);
            acc += (i == 0 || i == kSteps) ? 0.5 * term : term;
        }
        return acc * step_ / (2.0 * std::numbers::pi);
    }

private:
    static constexpr std::size_t kSteps = 2048;
    double step_ = 0.0;
    std::vector<double> nodes_;
    std::vector<double> values_;
};

}  // namespace

TFMatrix direct_mwt_oracle(const DiscreteSignal& x, const ScaleGrid& grid,
                           const WaveletSpec& spec) {
    check_grid(x, grid);
    const std::size_t len = x.size();
    if (len > 256) throw std::invalid_argument("direct_mwt_oracle: L > 256 refused");
    const std::size_t n_rows = grid.size();
    const double dt = 1.0 / x.fs;
    const WindowQuadrature quad(spec);

    TFMatrix out;
    out.rows = n_rows;
    out.cols = len;
    out.k_min = grid.k_min;
    out.fs = x.fs;
    out.t0 = x.t0;
    out.data.assign(n_rows * len, {0.0, 0.0});

    const auto half = static_cast<long>(len) / 2;
    for (std::size_t k = 0; k < n_rows; ++k) {
        const double a = grid.scales[k];
        const double omega = grid.omegas[k];
        std::vector<std::complex<double>> phased(len);
        for (std::size_t j = 0; j < len; ++j) {
            phased[j] = x.samples[j] *
                        std::polar(1.0, -omega * static_cast<double>(j) * dt);
        }
        // Circular window table: periodized g over wrapped sample distances
        // (the +-1 aliases cover scales whose support nears the record).
        std::vector<double> gtab(len);
        const double period = static_cast<double>(len) * dt / a;
        for (std::size_t d = 0; d < len; ++d) {
            long wrapped = static_cast<long>(d);
            if (wrapped >= half) wrapped -= static_cast<long>(len);
            const double t = static_cast<double>(wrapped) * dt / a;
            gtab[d] = quad.g(t) + quad.g(t - period) + quad.g(t + period);
        }
        for (std::size_t n = 0; n < len; ++n) {
            std::complex<double> acc{0.0, 0.0};
            for (std::size_t j = 0; j < len; ++j) {
                acc += phased[j] * gtab[(j + len - n) % len];
            }
            out.at(k, n) = acc * (dt / a);
        }
    }
    return out;
}

}  // namespace tfsq
