#include "halfspace/multiplier.hpp"

#include <cmath>
#include <string>

#include "halfspace/fft.hpp"

namespace halfspace {

GridField apply_multiplier(const GridField& f, const Symbol& symbol, ZeroMode zero_mode) {
    const std::size_t n = f.n();
    const double dxi = M_PI / f.extent();  // 2 pi / (2L)
    std::vector<std::complex<double>> a(f.samples().begin(), f.samples().end());
    fft_forward(a, f.dim(), n);

    if (f.dim() == 1) {
        for (std::size_t k = 0; k < n; ++k) {
            if (k == 0) {
                if (zero_mode == ZeroMode::SetZero)
                    a[0] = 0.0;
                else
                    a[0] *= symbol(0.0, 0.0);
                continue;
            }
            a[k] *= symbol(dxi * static_cast<double>(fft_signed_index(k, n)), 0.0);
        }
    } else {
        for (std::size_t ky = 0; ky < n; ++ky)
            for (std::size_t kx = 0; kx < n; ++kx) {
                std::size_t idx = ky * n + kx;
                if (kx == 0 && ky == 0) {
                    if (zero_mode == ZeroMode::SetZero)
                        a[idx] = 0.0;
                    else
                        a[idx] *= symbol(0.0, 0.0);
                    continue;
                }
                a[idx] *= symbol(dxi * static_cast<double>(fft_signed_index(kx, n)),
                                 dxi * static_cast<double>(fft_signed_index(ky, n)));
            }
    }

    for (std::size_t i = 0; i < a.size(); ++i)
        if (!std::isfinite(a[i].real()) || !std::isfinite(a[i].imag())) {
            std::size_t kx = f.dim() == 1 ? i : i % n;
            std::size_t ky = f.dim() == 1 ? 0 : i / n;
            throw NumericalError("apply_multiplier: non-finite spectrum at k = (" +
                                 std::to_string(fft_signed_index(kx, n)) + ", " +
                                 std::to_string(f.dim() == 1 ? 0 : fft_signed_index(ky, n)) +
                                 ")");
        }

    fft_inverse(a, f.dim(), n);
    GridField out(f.dim(), f.extent(), n);
    for (std::size_t i = 0; i < a.size(); ++i) out.samples()[i] = a[i].real();
    return out;
}

GridField fractional_op(const GridField& f, FractionalKind kind) {
    switch (kind.tag) {
        case FractionalKind::Tag::SqrtNegLap:
            return apply_multiplier(
                f, [](double x, double y) { return std::complex<double>(std::hypot(x, y), 0.0); },
                ZeroMode::SetZero);
        case FractionalKind::Tag::LapPower: {
            const int p = kind.param;
            return apply_multiplier(
                f,
                [p](double x, double y) {
                    double q = -(x * x + y * y);
                    return std::complex<double>(std::pow(q, p), 0.0);
                },
                ZeroMode::SetZero);
        }
        case FractionalKind::Tag::Riesz: {
            const int axis = kind.param;
            if (axis < 0 || axis >= f.dim())
                throw std::invalid_argument("fractional_op: Riesz axis out of range");
            return apply_multiplier(
                f,
                [axis](double x, double y) {
                    double r = std::hypot(x, y);
                    double c = (axis == 0 ? x : y) / r;
                    return std::complex<double>(0.0, c);
                },
                ZeroMode::SetZero);
        }
    }
    throw std::logic_error("fractional_op: unknown kind");
}

}  // namespace halfspace
