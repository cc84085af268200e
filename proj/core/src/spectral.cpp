#include "ztoa/spectral.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace ztoa {

namespace {
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}
} // namespace

SpectralEngine::SpectralEngine(int n) : n_(n) {
    if (n <= 0) throw std::invalid_argument("SpectralEngine: size must be positive");
    std::lock_guard<std::mutex> lock(planner_mutex());
    buf_ = reinterpret_cast<std::complex<double>*>(fftw_malloc(sizeof(fftw_complex) * n));
    auto* b = reinterpret_cast<fftw_complex*>(buf_);
    plan_fwd_ = fftw_plan_dft_1d(n, b, b, FFTW_FORWARD, FFTW_ESTIMATE);
    plan_bwd_ = fftw_plan_dft_1d(n, b, b, FFTW_BACKWARD, FFTW_ESTIMATE);
    if (!plan_fwd_ || !plan_bwd_) throw std::runtime_error("SpectralEngine: FFTW planning failed");
}

SpectralEngine::~SpectralEngine() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
    fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
    fftw_free(buf_);
}

void SpectralEngine::forward(std::complex<double>* data) {
    std::memcpy(buf_, data, sizeof(std::complex<double>) * n_);
    fftw_execute(static_cast<fftw_plan>(plan_fwd_));
    std::memcpy(data, buf_, sizeof(std::complex<double>) * n_);
}

void SpectralEngine::backward(std::complex<double>* data) {
    std::memcpy(buf_, data, sizeof(std::complex<double>) * n_);
    fftw_execute(static_cast<fftw_plan>(plan_bwd_));
    std::memcpy(data, buf_, sizeof(std::complex<double>) * n_);
}

SpectralEngine& SpectralEngine::for_size(int n) {
    thread_local std::map<int, std::unique_ptr<SpectralEngine>> cache;
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<SpectralEngine>(n);
    return *slot;
}

} // namespace ztoa
