#pragma once

#include <complex>
#include <vector>

namespace ztoa {

/// Thin FFTW wrapper holding plans and an aligned buffer for one transform
/// size.  Plans are created with FFTW_ESTIMATE (deterministic) under a
/// process-wide lock; execution is lock-free.  Use for_size() to get a
/// per-thread cached instance.
class SpectralEngine {
public:
    explicit SpectralEngine(int n);
    ~SpectralEngine();
    SpectralEngine(const SpectralEngine&) = delete;
    SpectralEngine& operator=(const SpectralEngine&) = delete;

    int size() const { return n_; }

    /// In-place unnormalized FFT: a[j] <- sum_m a[m] exp(-2 pi i j m / n).
    void forward(std::complex<double>* data);
    /// In-place unnormalized inverse; forward then backward multiplies by n.
    void backward(std::complex<double>* data);

    /// Per-thread engine cache keyed by transform size.
    static SpectralEngine& for_size(int n);

private:
    int n_;
    void* plan_fwd_;
    void* plan_bwd_;
    std::complex<double>* buf_;
};

} // namespace ztoa
