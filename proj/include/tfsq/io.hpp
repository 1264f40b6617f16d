#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tfsq/mwt.hpp"
#include "tfsq/signal.hpp"

namespace tfsq {

// CSV signal format: header `# fs_hz=<float> t0_s=<float>`, then one sample
// per line, `real` or `real,imag`. UTF-8, LF, '.' decimal separator.
void write_signal_csv(const std::string& path, const DiscreteSignal& x);
DiscreteSignal read_signal_csv(const std::string& path);

// TFR1 binary container: magic "TFR1", little-endian u32 K, u32 L, f64 fs,
// f64 t0, u8 kind (0=complex, 1=real), then row-major f64 pairs or singles.
// The scale grid is implicit: k_min = L/2 - K + 1.
enum class TfrKind : std::uint8_t { complex_matrix = 0, real_matrix = 1 };

struct TfrData {
    std::uint32_t rows = 0;
    std::uint32_t cols = 0;
    double fs = 0.0;
    double t0 = 0.0;
    TfrKind kind = TfrKind::complex_matrix;
    std::vector<std::complex<double>> cdata;  // kind == complex_matrix
    std::vector<double> rdata;                // kind == real_matrix

    TFMatrix to_tfmatrix() const;  // complex_matrix only
};

void write_tfr(const std::string& path, const TFMatrix& m);
void write_tfr_real(const std::string& path, const std::vector<double>& data,
                    std::uint32_t rows, std::uint32_t cols, double fs, double t0);
TfrData read_tfr(const std::string& path);

}  // namespace tfsq
