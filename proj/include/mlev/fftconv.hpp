#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace mlev {

/// Power-of-two complex FFT pair with plans prepared once at construction.
/// Plan creation is serialized internally; execution uses the new-array
/// interface and is safe from concurrent runs as long as each run owns its
/// buffers.
class Fft {
  public:
    explicit Fft(std::size_t length);
    ~Fft();

    Fft(const Fft&) = delete;
    Fft& operator=(const Fft&) = delete;

    std::size_t length() const { return length_; }

    /// In-place forward / inverse transform; buffer size must equal length().
    /// The inverse is unnormalized (scaled by length()).
    void forward(std::complex<double>* data) const;
    void inverse(std::complex<double>* data) const;

  private:
    std::size_t length_;
    void* plan_fwd_;
    void* plan_inv_;
    // plan construction scratch is freed after setup
};

/// Linear self-convolution out[m] = sum_k in[k]*in[m-k], m = 0..2n-2,
/// computed through a zero-padded transform of length 2n. `out` is resized
/// to 2n (last slot stays zero). `fft` must have length 2n.
void self_convolve(const Fft& fft, const std::vector<std::complex<double>>& in,
                   std::vector<std::complex<double>>& scratch,
                   std::vector<std::complex<double>>& out);

} // namespace mlev
