#pragma once

#include <cstddef>
#include <vector>

#include "tfsq/signal.hpp"
#include "tfsq/squeeze.hpp"

namespace tfsq {

// Renyi entropy of order alpha over normalized squared magnitudes:
// (1/(1-alpha)) * log2( sum p^alpha ), p = |T|^2 / sum|T|^2.
double renyi_entropy(const TFMatrix& T, double alpha);
double renyi_entropy(const std::vector<double>& mag, double alpha);

struct TfesResult {
    std::vector<double> spectrum_peak;  // per row, max envelope-spectrum magnitude
    std::vector<std::size_t> peak_bin;  // DFT bin of that maximum
    std::size_t best_row = 0;
    std::vector<double> envelope;       // |S[best_row, .]|
    std::vector<double> intervals_s;    // detected pulse spacings [s]
};

// Per frequency row: subtract the row mean, take the magnitude of the row's
// DFT, record the maximum over nonzero frequencies. The best row's magnitude
// envelope is peak-picked into pulse intervals.
TfesResult tfes(const SqueezeResult& S, double min_separation_s = 1e-3);

// Peaks are local maxima above 50% of the global maximum, at least
// min_separation_s apart (larger peak wins); returns consecutive
// differences of the peak times. Fewer than two peaks -> empty.
std::vector<double> pulse_intervals(const std::vector<double>& envelope, double fs,
                                    double min_separation_s);

struct ReconError {
    double rel_l2 = 0.0;
    double snr_db = 0.0;
};

ReconError reconstruction_error(const DiscreteSignal& x, const DiscreteSignal& y);

}  // namespace tfsq
