#include "mlev/fftconv.hpp"

#include "mlev/errors.hpp"

#include <fftw3.h>

#include <mutex>

namespace mlev {

namespace {
// FFTW planning is not thread-safe; execution via the new-array API is.
std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}
} // namespace

Fft::Fft(std::size_t length) : length_(length) {
    if (length == 0 || (length & (length - 1)) != 0)
        throw InvalidDimensionError("Fft: length must be a power of two, got " +
                                    std::to_string(length));
    std::lock_guard<std::mutex> lock(plan_mutex());
    auto* buf = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * length));
    if (buf == nullptr) throw std::bad_alloc();
    // FFTW_UNALIGNED lets the plans run on ordinary vector storage.
    plan_fwd_ = fftw_plan_dft_1d(static_cast<int>(length), buf, buf, FFTW_FORWARD,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
    plan_inv_ = fftw_plan_dft_1d(static_cast<int>(length), buf, buf, FFTW_BACKWARD,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buf);
    if (plan_fwd_ == nullptr || plan_inv_ == nullptr)
        throw std::runtime_error("Fft: plan creation failed");
}

Fft::~Fft() {
    std::lock_guard<std::mutex> lock(plan_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
    fftw_destroy_plan(static_cast<fftw_plan>(plan_inv_));
}

void Fft::forward(std::complex<double>* data) const {
    auto* p = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(static_cast<fftw_plan>(plan_fwd_), p, p);
}

void Fft::inverse(std::complex<double>* data) const {
    auto* p = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(static_cast<fftw_plan>(plan_inv_), p, p);
}

void self_convolve(const Fft& fft, const std::vector<std::complex<double>>& in,
                   std::vector<std::complex<double>>& scratch,
                   std::vector<std::complex<double>>& out) {
    const std::size_t n = in.size();
    const std::size_t padded = fft.length();
    if (padded != 2 * n)
        throw InvalidDimensionError("self_convolve: transform length must be twice the input");

    scratch.assign(padded, {0.0, 0.0});
    std::copy(in.begin(), in.end(), scratch.begin());
    fft.forward(scratch.data());
    for (auto& c : scratch) c *= c;
    fft.inverse(scratch.data());

    out.resize(padded);
    const double inv_n = 1.0 / static_cast<double>(padded);
    for (std::size_t i = 0; i < padded; ++i) out[i] = scratch[i] * inv_n;
}

} // namespace mlev
