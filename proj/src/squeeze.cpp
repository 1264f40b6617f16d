#include "tfsq/squeeze.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "tfsq/fft.hpp"
#include "tfsq/signal.hpp"

namespace tfsq {

namespace {

void check_shapes(const TFMatrix& W, const GDMap& gd) {
    if (W.rows != gd.rows || W.cols != gd.cols)
        throw std::invalid_argument("squeeze: matrix and GD map shapes differ");
}

TFMatrix squeeze_matrix(const TFMatrix& W, const GDMap& gd) {
    TFMatrix S = W;
    std::fill(S.data.begin(), S.data.end(), std::complex<double>{0.0, 0.0});
    const auto cols = static_cast<long>(W.cols);
    for (std::size_t k = 0; k < W.rows; ++k) {
        const std::size_t base = k * W.cols;
        for (std::size_t n = 0; n < W.cols; ++n) {
            if (!gd.mask[base + n]) continue;
            const long tau = static_cast<long>(std::round(gd.delays[base + n]));
            if (tau < 0 || tau >= cols) continue;
            S.data[base + static_cast<std::size_t>(tau)] += W.data[base + n];
        }
    }
    return S;
}

}  // namespace

SqueezeResult wtsst(const TFMatrix& W, const GDMap& gd, const ThresholdConfig& cfg) {
    check_shapes(W, gd);
    SqueezeResult out;
    out.S = squeeze_matrix(W, gd);
    out.method = SqueezeMethod::wtsst;
    out.iterations = 1;
    out.threshold = cfg;
    return out;
}

SqueezeResult wtmsst(const TFMatrix& W, const GDMap& gd, int n_iter, IterMode mode,
                     const ThresholdConfig& cfg) {
    check_shapes(W, gd);
    SqueezeResult out;
    out.S = squeeze_matrix(W, gd_iterate(gd, n_iter, mode));
    out.method = SqueezeMethod::wtmsst;
    out.iterations = n_iter;
    out.mode = mode;
    out.threshold = cfg;
    return out;
}

std::vector<double> rm(const TFMatrix& W, const GDMap& gd, const std::vector<double>& ifm) {
    check_shapes(W, gd);
    if (ifm.size() != W.data.size())
        throw std::invalid_argument("rm: IF matrix shape differs");
    std::vector<double> R(W.data.size(), 0.0);
    const auto cols = static_cast<long>(W.cols);
    const auto rows = static_cast<long>(W.rows);
    const double dxi = W.row_omega(1) - W.row_omega(0);
    const double omega0 = W.row_omega(0);
    for (std::size_t k = 0; k < W.rows; ++k) {
        const std::size_t base = k * W.cols;
        for (std::size_t n = 0; n < W.cols; ++n) {
            if (!gd.mask[base + n]) continue;
            const long tau = static_cast<long>(std::round(gd.delays[base + n]));
            if (tau < 0 || tau >= cols) continue;
            const double what = ifm[base + n];
            if (!std::isfinite(what)) continue;
            const long eta = static_cast<long>(std::round((what - omega0) / dxi));
            if (eta < 0 || eta >= rows) continue;
            R[static_cast<std::size_t>(eta) * W.cols + static_cast<std::size_t>(tau)] +=
                std::norm(W.data[base + n]);
        }
    }
    return R;
}

namespace {

ComplexSpectrum row_sums_to_spectrum(const TFMatrix& S, const WaveletSpec& spec,
                                     const std::vector<RowBand>* bands) {
    ComplexSpectrum out;
    out.bins.assign(S.cols, {0.0, 0.0});
    out.freq_step_rad = 2.0 * std::numbers::pi * S.fs / static_cast<double>(S.cols);
    const double inv_g0 = 1.0 / spec.ghat0();
    const auto cols = static_cast<long>(S.cols);
    for (std::size_t k = 0; k < S.rows; ++k) {
        long lo = 0;
        long hi = cols - 1;
        if (bands) {
            lo = std::max((*bands)[k].lo, 0L);
            hi = std::min((*bands)[k].hi, cols - 1);
            if (hi < lo) continue;
        }
        std::complex<double> acc{0.0, 0.0};
        const std::complex<double>* row = S.row(k);
        for (long n = lo; n <= hi; ++n) acc += row[static_cast<std::size_t>(n)];
        out.bins[S.k_min + k] = acc * inv_g0;
    }
    return out;
}

}  // namespace

ComplexSpectrum reconstruct_spectrum(const SqueezeResult& S, const WaveletSpec& spec) {
    if (S.method == SqueezeMethod::rm)
        throw std::invalid_argument("reconstruct: RM output is not invertible");
    return row_sums_to_spectrum(S.S, spec, nullptr);
}

DiscreteSignal reconstruct_time(const SqueezeResult& S, const WaveletSpec& spec) {
    return synthesize_time(reconstruct_spectrum(S, spec), S.S.fs, S.S.t0);
}

ComplexSpectrum extract_mode(const SqueezeResult& S, const WaveletSpec& spec,
                             const std::vector<RowBand>& bands) {
    if (S.method == SqueezeMethod::rm)
        throw std::invalid_argument("extract_mode: RM output is not invertible");
    if (bands.size() != S.S.rows)
        throw std::invalid_argument("extract_mode: one band per row required");
    bool any = false;
    const auto cols = static_cast<long>(S.S.cols);
    for (const auto& b : bands) {
        if (std::max(b.lo, 0L) <= std::min(b.hi, cols - 1)) {
            any = true;
            break;
        }
    }
    if (!any) throw std::invalid_argument("extract_mode: all row bands are empty");
    return row_sums_to_spectrum(S.S, spec, &bands);
}

std::vector<RowBand> ridge_bands(const SqueezeResult& S, long half_width) {
    std::vector<RowBand> bands(S.S.rows);
    for (std::size_t k = 0; k < S.S.rows; ++k) {
        const std::complex<double>* row = S.S.row(k);
        std::size_t best = 0;
        double best_mag = 0.0;
        for (std::size_t n = 0; n < S.S.cols; ++n) {
            const double m = std::abs(row[n]);
            if (m > best_mag) {
                best_mag = m;
                best = n;
            }
        }
        bands[k].lo = static_cast<long>(best) - half_width;
        bands[k].hi = static_cast<long>(best) + half_width;
    }
    return bands;
}

}  // namespace tfsq
