#pragma once

#include <cstdint>
#include <vector>

#include "tfsq/mwt.hpp"
#include "tfsq/signal.hpp"
#include "tfsq/wavelet.hpp"

namespace tfsq {

// Hard threshold for the numerical support set. In relative mode upsilon
// is a fraction of max|W| over the whole matrix.
struct ThresholdConfig {
    double upsilon = 1e-3;
    bool relative = true;

    double resolve(double max_abs) const { return relative ? upsilon * max_abs : upsilon; }
    void validate() const;
};

// Per-cell group-delay estimates in sample-index units plus validity mask.
struct GDMap {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> delays;        // row-major, defined where mask is set
    std::vector<std::uint8_t> mask;    // 1 = estimate valid

    double& delay(std::size_t k, std::size_t n) { return delays[k * cols + n]; }
    double delay(std::size_t k, std::size_t n) const { return delays[k * cols + n]; }
    bool valid(std::size_t k, std::size_t n) const { return mask[k * cols + n] != 0; }
};

enum class IterMode { linear, exponential };

std::vector<std::uint8_t> support_set(const TFMatrix& W, const ThresholdConfig& cfg);

// delays[k,n] = n + Re{a_k * Wtg[k,n] / W[k,n]} * fs  on the support set.
GDMap gd_estimate(const TFMatrix& W, const TFMatrix& Wtg, const WaveletSpec& spec,
                  const ThresholdConfig& cfg);

// Instantaneous-frequency candidate omega_k + Re{Wxi/(a_k*W)} [rad/s];
// NaN off the support set.
std::vector<double> if_estimate(const TFMatrix& W, const TFMatrix& Wxi,
                                const WaveletSpec& spec, const ThresholdConfig& cfg);

// N-fold self-composition of the per-row delay map by integer table lookup
// (round half away from zero). Out-of-range or unmasked targets invalidate
// the cell. Linear mode applies N-1 single compositions; exponential mode
// doubles the map log2(N) times and requires N to be a power of two. Both
// modes produce identical maps for power-of-two N.
GDMap gd_iterate(const GDMap& gd, int n_iter, IterMode mode);

// Analytic prediction for the second-order model with the Gaussian window:
//   that^[N](w_k, b_n) = -phi'(w_k) + r_k^N * (phi'(w_k) + b_n),
//   r_k = phi''^2 / (phi''^2 + (a_k^2 sigma)^2),
// converted to sample units; K x L row-major.
std::vector<double> gd_closed_form(const ChirpModel& model, const ScaleGrid& grid,
                                   const WaveletSpec& spec, std::size_t len, double fs,
                                   int n_iter);

double contraction_factor(const ChirpModel& model, double scale, const WaveletSpec& spec);

}  // namespace tfsq
