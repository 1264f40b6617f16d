#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace tfsq {

// Thin FFTW wrapper holding forward/inverse plans for one length. FFTW
// planning is not thread-safe, so construction is serialized internally;
// use one instance per worker thread.
class Fft {
public:
    explicit Fft(std::size_t n);
    ~Fft();
    Fft(const Fft&) = delete;
    Fft& operator=(const Fft&) = delete;

    std::size_t size() const { return n_; }

    // Unnormalized forward DFT.
    void forward(const std::complex<double>* in, std::complex<double>* out);
    // Inverse DFT with 1/n normalization.
    void inverse(const std::complex<double>* in, std::complex<double>* out);

private:
    std::size_t n_ = 0;
    void* plan_fwd_ = nullptr;
    void* plan_inv_ = nullptr;
    void* buf_in_ = nullptr;
    void* buf_out_ = nullptr;
};

std::vector<std::complex<double>> fft(const std::vector<std::complex<double>>& x);
std::vector<std::complex<double>> ifft(const std::vector<std::complex<double>>& x);

}  // namespace tfsq
