#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "tfsq/signal.hpp"
#include "tfsq/wavelet.hpp"

namespace tfsq {

// Dense complex K x L coefficient matrix (row = scale, column = time bin).
struct TFMatrix {
    std::size_t rows = 0;   // K
    std::size_t cols = 0;   // L
    std::size_t k_min = 0;  // first FFT bin of the scale grid
    double fs = 0.0;
    double t0 = 0.0;
    std::vector<std::complex<double>> data;  // row-major

    std::complex<double>& at(std::size_t k, std::size_t n) { return data[k * cols + n]; }
    const std::complex<double>& at(std::size_t k, std::size_t n) const {
        return data[k * cols + n];
    }
    const std::complex<double>* row(std::size_t k) const { return data.data() + k * cols; }
    std::complex<double>* row(std::size_t k) { return data.data() + k * cols; }

    double row_omega(std::size_t k) const;    // analyzed frequency [rad/s]
    double row_scale(std::size_t k, double omega0) const { return omega0 / row_omega(k); }
    double max_abs() const;

    bool same_shape(const TFMatrix& other) const {
        return rows == other.rows && cols == other.cols && k_min == other.k_min;
    }
};

// Modified wavelet transform: per scale row, pointwise product of the full
// DFT with the window row, inverse FFT, then the extra phase
// e^{-i*omega_k*t_n}. Normalization: an impulse of height 1 at sample n0
// yields |W[k, n0]| = g(0) / (a_k * fs), and sum_n W[k, n] = xhat[k_min+k]
// * ghat(0) exactly (the reconstruction identity). Rows are computed
// independently and may be parallelized; output bytes do not depend on the
// thread count.
TFMatrix mwt(const DiscreteSignal& x, const ScaleGrid& grid, const WaveletSpec& spec,
             WindowWeight weight, int threads = 1);

// Direct quadratic-time summation against the time-domain window obtained
// by numerically inverse-transforming ghat. Independent of the FFT path;
// refuses L > 256.
TFMatrix direct_mwt_oracle(const DiscreteSignal& x, const ScaleGrid& grid,
                           const WaveletSpec& spec);

}  // namespace tfsq
