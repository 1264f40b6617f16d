#include "tfsq/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <mutex>
#include <stdexcept>

namespace tfsq {

namespace {
std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}
}  // namespace

Fft::Fft(std::size_t n) : n_(n) {
    if (n == 0) throw std::invalid_argument("Fft: zero length");
    std::lock_guard<std::mutex> lock(plan_mutex());
    buf_in_ = fftw_alloc_complex(n);
    buf_out_ = fftw_alloc_complex(n);
    auto* in = static_cast<fftw_complex*>(buf_in_);
    auto* out = static_cast<fftw_complex*>(buf_out_);
    plan_fwd_ = fftw_plan_dft_1d(static_cast<int>(n), in, out, FFTW_FORWARD, FFTW_ESTIMATE);
    plan_inv_ = fftw_plan_dft_1d(static_cast<int>(n), in, out, FFTW_BACKWARD, FFTW_ESTIMATE);
}

Fft::~Fft() {
    std::lock_guard<std::mutex> lock(plan_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
    fftw_destroy_plan(static_cast<fftw_plan>(plan_inv_));
    fftw_free(buf_in_);
    fftw_free(buf_out_);
}

void Fft::forward(const std::complex<double>* in, std::complex<double>* out) {
    std::memcpy(buf_in_, in, n_ * sizeof(std::complex<double>));
    fftw_execute(static_cast<fftw_plan>(plan_fwd_));
    std::memcpy(out, buf_out_, n_ * sizeof(std::complex<double>));
}

void Fft::inverse(const std::complex<double>* in, std::complex<double>* out) {
    std::memcpy(buf_in_, in, n_ * sizeof(std::complex<double>));
    fftw_execute(static_cast<fftw_plan>(plan_inv_));
    const double scale = 1.0 / static_cast<double>(n_);
    auto* o = static_cast<fftw_complex*>(buf_out_);
    for (std::size_t i = 0; i < n_; ++i) {
        out[i] = std::complex<double>(o[i][0] * scale, o[i][1] * scale);
    }
}

std::vector<std::complex<double>> fft(const std::vector<std::complex<double>>& x) {
    Fft plan(x.size());
    std::vector<std::complex<double>> out(x.size());
    plan.forward(x.data(), out.data());
    return out;
}

std::vector<std::complex<double>> ifft(const std::vector<std::complex<double>>& x) {
    Fft plan(x.size());
    std::vector<std::complex<double>> out(x.size());
    plan.inverse(x.data(), out.data());
    return out;
}

}  // namespace tfsq
