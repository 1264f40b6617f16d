#include "tfsq/gd.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tfsq {

void ThresholdConfig::validate() const {
    if (relative) {
        if (!(upsilon > 0.0 && upsilon < 1.0))
            throw std::invalid_argument("relative threshold must be in (0, 1)");
    } else if (!(upsilon >= 0.0)) {
        throw std::invalid_argument("absolute threshold must be nonnegative");
    }
}

std::vector<std::uint8_t> support_set(const TFMatrix& W, const ThresholdConfig& cfg) {
    cfg.validate();
    const double level = cfg.resolve(W.max_abs());
    std::vector<std::uint8_t> mask(W.data.size());
    for (std::size_t i = 0; i < W.data.size(); ++i) {
        mask[i] = std::abs(W.data[i]) > level ? 1 : 0;
    }
    return mask;
}

GDMap gd_estimate(const TFMatrix& W, const TFMatrix& Wtg, const WaveletSpec& spec,
                  const ThresholdConfig& cfg) {
    if (!W.same_shape(Wtg))
        throw std::invalid_argument("gd_estimate: matrices have mismatched shapes");
    GDMap gd;
    gd.rows = W.rows;
    gd.cols = W.cols;
    gd.mask = support_set(W, cfg);
    gd.delays.assign(W.data.size(), 0.0);
    for (std::size_t k = 0; k < W.rows; ++k) {
        const double a = W.row_scale(k, spec.omega0);
        for (std::size_t n = 0; n < W.cols; ++n) {
            const std::size_t i = k * W.cols + n;
            if (!gd.mask[i]) continue;
            const double shift_s = (a * Wtg.data[i] / W.data[i]).real();
            const double d = static_cast<double>(n) + shift_s * W.fs;
            if (!std::isfinite(d)) {
                gd.mask[i] = 0;
                continue;
            }
            gd.delays[i] = d;
        }
    }
    return gd;
}

std::vector<double> if_estimate(const TFMatrix& W, const TFMatrix& Wxi,
                                const WaveletSpec& spec, const ThresholdConfig& cfg) {
    if (!W.same_shape(Wxi))
        throw std::invalid_argument("if_estimate: matrices have mismatched shapes");
    const auto mask = support_set(W, cfg);
    std::vector<double> out(W.data.size(), std::numeric_limits<double>::quiet_NaN());
    for (std::size_t k = 0; k < W.rows; ++k) {
        const double a = W.row_scale(k, spec.omega0);
        const double omega = W.row_omega(k);
        for (std::size_t n = 0; n < W.cols; ++n) {
            const std::size_t i = k * W.cols + n;
            if (!mask[i]) continue;
            out[i] = omega + (Wxi.data[i] / (a * W.data[i])).real();
        }
    }
    return out;
}

namespace {

long round_half_away(double v) {
    return static_cast<long>(std::round(v));
}

// result[n] = second.delays at round(first.delays[n]); invalid when the
// lookup leaves the record or lands on an unmasked cell.
GDMap compose(const GDMap& first, const GDMap& second) {
    GDMap out;
    out.rows = first.rows;
    out.cols = first.cols;
    out.delays.assign(first.delays.size(), 0.0);
    out.mask.assign(first.mask.size(), 0);
    const auto cols = static_cast<long>(first.cols);
    for (std::size_t k = 0; k < first.rows; ++k) {
        const std::size_t base = k * first.cols;
        for (std::size_t n = 0; n < first.cols; ++n) {
            if (!first.mask[base + n]) continue;
            const long target = round_half_away(first.delays[base + n]);
            if (target < 0 || target >= cols) continue;
            const std::size_t j = base + static_cast<std::size_t>(target);
            if (!second.mask[j]) continue;
            out.delays[base + n] = second.delays[j];
            out.mask[base + n] = 1;
        }
    }
    return out;
}

}  // namespace

GDMap gd_iterate(const GDMap& gd, int n_iter, IterMode mode) {
    if (n_iter < 1) throw std::invalid_argument("gd_iterate: N must be >= 1");
    if (n_iter == 1) return gd;
    if (mode == IterMode::linear) {
        GDMap acc = gd;
        for (int i = 1; i < n_iter; ++i) acc = compose(acc, gd);
        return acc;
    }
    if (!std::has_single_bit(static_cast<unsigned>(n_iter)))
        throw std::invalid_argument("gd_iterate: exponential mode requires a power-of-two N");
    GDMap acc = gd;
    for (unsigned bits = static_cast<unsigned>(n_iter); bits > 1; bits >>= 1) {
        acc = compose(acc, acc);
    }
    return acc;
}

double contraction_factor(const ChirpModel& model, double scale, const WaveletSpec& spec) {
    const double curv = model.phi_second();
    const double band = scale * scale * spec.sigma;
    const double denom = curv * curv + band * band;
    return denom == 0.0 ? 0.0 : curv * curv / denom;
}

std::vector<double> gd_closed_form(const ChirpModel& model, const ScaleGrid& grid,
                                   const WaveletSpec& spec, std::size_t len, double fs,
                                   int n_iter) {
    if (n_iter < 1) throw std::invalid_argument("gd_closed_form: N must be >= 1");
    const std::size_t n_rows = grid.size();
    std::vector<double> out(n_rows * len);
    for (std::size_t k = 0; k < n_rows; ++k) {
        const double gd_true = -model.phi_prime(grid.omegas[k]);
        const double ratio = std::pow(
            contraction_factor(model, grid.scales[k], spec), n_iter);
        for (std::size_t n = 0; n < len; ++n) {
            const double b = static_cast<double>(n) / fs;
            out[k * len + n] = (gd_true + ratio * (b - gd_true)) * fs;
        }
    }
    return out;
}

}  // namespace tfsq
