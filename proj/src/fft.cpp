#include "halfspace/fft.hpp"

#include <mutex>
#include <stdexcept>

#include <fftw3.h>

namespace halfspace {

namespace {

// FFTW planning is not thread-safe; execution of independent plans is.
std::mutex& plan_mutex() {
    static std::mutex mu;
    return mu;
}

void run(std::vector<std::complex<double>>& a, int dim, std::size_t n, int sign) {
    const std::size_t total = (dim == 1) ? n : n * n;
    if (a.size() != total) throw std::invalid_argument("fft: buffer size mismatch");
    fftw_complex* buf = reinterpret_cast<fftw_complex*>(a.data());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(plan_mutex());
        plan = (dim == 1)
                   ? fftw_plan_dft_1d(static_cast<int>(n), buf, buf, sign, FFTW_ESTIMATE)
                   : fftw_plan_dft_2d(static_cast<int>(n), static_cast<int>(n), buf, buf,
                                      sign, FFTW_ESTIMATE);
    }
    if (!plan) throw std::runtime_error("fft: planner failed");
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(plan_mutex());
        fftw_destroy_plan(plan);
    }
}

}  // namespace

void fft_forward(std::vector<std::complex<double>>& a, int dim, std::size_t n) {
    run(a, dim, n, FFTW_FORWARD);
}

void fft_inverse(std::vector<std::complex<double>>& a, int dim, std::size_t n) {
    run(a, dim, n, FFTW_BACKWARD);
    const double scale = 1.0 / static_cast<double>((dim == 1) ? n : n * n);
    for (auto& v : a) v *= scale;
}

}  // namespace halfspace
