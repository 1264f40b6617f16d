#pragma once

#include <cstddef>
#include <vector>

#include "tfsq/gd.hpp"
#include "tfsq/mwt.hpp"

namespace tfsq {

enum class SqueezeMethod { wtsst, wtmsst, rm };

struct SqueezeResult {
    TFMatrix S;
    SqueezeMethod method = SqueezeMethod::wtsst;
    int iterations = 1;
    IterMode mode = IterMode::linear;
    ThresholdConfig threshold;
};

// Time-direction synchrosqueezing: S[k,tau] accumulates W[k,n] at
// tau = round(delays[k,n]) for masked in-range cells, sequentially in n.
SqueezeResult wtsst(const TFMatrix& W, const GDMap& gd,
                    const ThresholdConfig& cfg = {});

// wtsst with the N-fold iterated GD map; bitwise equal to
// wtsst(W, gd_iterate(gd, N, mode)).
SqueezeResult wtmsst(const TFMatrix& W, const GDMap& gd, int n_iter, IterMode mode,
                     const ThresholdConfig& cfg = {});

// Classical bidirectional reassignment: |W|^2 scattered to
// (nearest row of ifm[k,n], round(delays[k,n])). Non-invertible.
std::vector<double> rm(const TFMatrix& W, const GDMap& gd, const std::vector<double>& ifm);

// x_hat(omega_k) = sum_tau S[k,tau] / ghat(0), mapped onto spectrum bins
// k_min .. k_min+K-1. Throws for RM input.
ComplexSpectrum reconstruct_spectrum(const SqueezeResult& S, const WaveletSpec& spec);

// Inverse transform of reconstruct_spectrum; returns the analytic signal.
DiscreteSignal reconstruct_time(const SqueezeResult& S, const WaveletSpec& spec);

// Per-row inclusive column interval; empty when hi < lo.
struct RowBand {
    long lo = 0;
    long hi = -1;
    bool empty() const { return hi < lo; }
};

// reconstruct_spectrum restricted to the banded columns; bands clipped to
// [0, L). Throws if every row's band is empty.
ComplexSpectrum extract_mode(const SqueezeResult& S, const WaveletSpec& spec,
                             const std::vector<RowBand>& bands);

// Heuristic per-row max-magnitude ridge with fixed half-width, for use as
// an extract_mode band when the mode's delay law is unknown.
std::vector<RowBand> ridge_bands(const SqueezeResult& S, long half_width);

}  // namespace tfsq
