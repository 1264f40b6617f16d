#include "tfsq/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "tfsq/fft.hpp"

namespace tfsq {

namespace {

double renyi_from_energies(const std::vector<double>& e, double alpha) {
    if (alpha <= 0.0 || alpha == 1.0)
        throw std::invalid_argument("renyi_entropy: alpha must be positive and != 1");
    double total = 0.0;
    for (double v : e) total += v;
    if (!(total > 0.0)) throw std::domain_error("renyi_entropy: empty distribution");
    double acc = 0.0;
    for (double v : e) {
        if (v > 0.0) acc += std::pow(v / total, alpha);
    }
    return std::log2(acc) / (1.0 - alpha);
}

}  // namespace

double renyi_entropy(const TFMatrix& T, double alpha) {
    std::vector<double> e(T.data.size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::norm(T.data[i]);
    return renyi_from_energies(e, alpha);
}

double renyi_entropy(const std::vector<double>& mag, double alpha) {
    std::vector<double> e(mag.size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = mag[i] * mag[i];
    return renyi_from_energies(e, alpha);
}

std::vector<double> pulse_intervals(const std::vector<double>& envelope, double fs,
                                    double min_separation_s) {
    const std::size_t n = envelope.size();
    if (n < 3) return {};
    double global_max = 0.0;
    for (double v : envelope) global_max = std::max(global_max, v);
    const double thr = 0.5 * global_max;
    if (!(global_max > 0.0)) return {};

    std::vector<std::size_t> cand;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (envelope[i] > thr && envelope[i] > envelope[i - 1] &&
            envelope[i] >= envelope[i + 1])
            cand.push_back(i);
    }
    // larger peak wins within the separation window
    std::sort(cand.begin(), cand.end(), [&](std::size_t a, std::size_t b) {
        return envelope[a] > envelope[b];
    });
    const double min_sep = min_separation_s * fs;
    std::vector<std::size_t> picked;
    for (std::size_t i : cand) {
        bool ok = true;
        for (std::size_t j : picked) {
            if (std::abs(static_cast<double>(i) - static_cast<double>(j)) < min_sep) {
                ok = false;
                break;
            }
        }
        if (ok) picked.push_back(i);
    }
    std::sort(picked.begin(), picked.end());
    std::vector<double> out;
    for (std::size_t i = 1; i < picked.size(); ++i)
        out.push_back(static_cast<double>(picked[i] - picked[i - 1]) / fs);
    return out;
}

TfesResult tfes(const SqueezeResult& S, double min_separation_s) {
    const std::size_t K = S.S.rows;
    const std::size_t L = S.S.cols;
    TfesResult out;
    out.spectrum_peak.assign(K, 0.0);
    out.peak_bin.assign(K, 0);

    Fft fft(L);
    std::vector<std::complex<double>> row(L), spec(L);
    for (std::size_t k = 0; k < K; ++k) {
        const std::complex<double>* src = S.S.row(k);
        double mean = 0.0;
        for (std::size_t n = 0; n < L; ++n) mean += std::abs(src[n]);
        mean /= static_cast<double>(L);
        for (std::size_t n = 0; n < L; ++n) row[n] = std::abs(src[n]) - mean;
        fft.forward(row.data(), spec.data());
        double best = 0.0;
        std::size_t best_bin = 0;
        for (std::size_t m = 1; m <= L / 2; ++m) {
            const double mag = std::abs(spec[m]);
            if (mag > best) {
                best = mag;
                best_bin = m;
            }
        }
        out.spectrum_peak[k] = best;
        out.peak_bin[k] = best_bin;
        if (best > out.spectrum_peak[out.best_row]) out.best_row = k;
    }

    out.envelope.resize(L);
    const std::complex<double>* src = S.S.row(out.best_row);
    for (std::size_t n = 0; n < L; ++n) out.envelope[n] = std::abs(src[n]);
    out.intervals_s = pulse_intervals(out.envelope, S.S.fs, min_separation_s);
    return out;
}

ReconError reconstruction_error(const DiscreteSignal& x, const DiscreteSignal& y) {
    if (x.size() != y.size())
        throw std::invalid_argument("reconstruction_error: length mismatch");
    double num = 0.0, den = 0.0;
    for (std::size_t n = 0; n < x.size(); ++n) {
        num += std::norm(x.samples[n] - y.samples[n]);
        den += std::norm(x.samples[n]);
    }
    if (!(den > 0.0)) throw std::domain_error("reconstruction_error: zero reference");
    ReconError e;
    e.rel_l2 = std::sqrt(num / den);
    e.snr_db = num > 0.0 ? 10.0 * std::log10(den / num)
                         : std::numeric_limits<double>::infinity();
    return e;
}

}  // namespace tfsq
