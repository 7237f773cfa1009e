#ifndef HALFSPACE_FFT_HPP
#define HALFSPACE_FFT_HPP

#include <complex>
#include <cstddef>
#include <vector>

namespace halfspace {

/// In-place c2c transforms, 1D length n or 2D n x n (row-major). Forward uses
/// the e^{-i x xi} sign convention; inverse includes the 1/N normalization.
void fft_forward(std::vector<std::complex<double>>& a, int dim, std::size_t n);
void fft_inverse(std::vector<std::complex<double>>& a, int dim, std::size_t n);

/// Signed lattice index for bin k of an n-point transform: 0..n/2-1, then
/// -n/2..-1.
inline long fft_signed_index(std::size_t k, std::size_t n) {
    return k < n / 2 ? static_cast<long>(k) : static_cast<long>(k) - static_cast<long>(n);
}

}  // namespace halfspace

#endif
