#ifndef HALFSPACE_MULTIPLIER_HPP
#define HALFSPACE_MULTIPLIER_HPP

#include <complex>
#include <functional>

#include "halfspace/grid_field.hpp"

namespace halfspace {

enum class ZeroMode { SetZero, Keep };

/// Symbol on the frequency lattice: xi has dim components (xi[1] = 0 in 1D).
using Symbol = std::function<std::complex<double>(double xi1, double xi2)>;

/// Inverse transform of symbol * forward transform. Frequencies are the
/// continuous ones at the lattice points xi_k = pi k / L, k = -n/2..n/2-1.
/// NaN/Inf in the output spectrum raises NumericalError naming the offending
/// frequency.
GridField apply_multiplier(const GridField& f, const Symbol& symbol, ZeroMode zero_mode);

struct FractionalKind {
    enum class Tag { SqrtNegLap, LapPower, Riesz } tag;
    int param = 0;  // power p for LapPower (any integer), axis for Riesz (0-based)

    static FractionalKind sqrt_neg_lap() { return {Tag::SqrtNegLap, 0}; }
    static FractionalKind lap_power(int p) { return {Tag::LapPower, p}; }
    static FractionalKind riesz(int axis) { return {Tag::Riesz, axis}; }
};

/// |xi|, (-|xi|^2)^p, or i xi_l / |xi|; the zero mode is always cleared since
/// the interesting powers are singular there.
GridField fractional_op(const GridField& f, FractionalKind kind);

}  // namespace halfspace

#endif
