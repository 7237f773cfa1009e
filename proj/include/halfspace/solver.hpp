#ifndef HALFSPACE_SOLVER_HPP
#define HALFSPACE_SOLVER_HPP

#include <vector>

#include "halfspace/grid_field.hpp"
#include "halfspace/multiplier.hpp"
#include "halfspace/profile.hpp"

namespace halfspace {

/// Dirichlet data -> boundary-layer densities, on the frequency lattice:
///   g_j^ = sum_{k: j+k even} (-1)^{m-(j+k)/2} (M^-1)_{jk} |xi|^{2m-j-k-1} h_k^
/// (the inverse of the forward operator below; zero modes cleared).
/// Requires m > d/2.
DensityData solve_g(const DirichletData& h, int d);

/// Densities -> Dirichlet traces:
///   h_k^ = sum_{j: j+k even} (-1)^{(j+k)/2-m} M_{kj} |xi|^{j+k+1-2m} g_j^
DirichletData forward_h(const DensityData& g, int d);

/// Evaluates the trace of order `trace` of the half-space extension on the
/// slice at height xd >= 0 (trace 0 is the solution slice itself):
///   slice^ = sum_j (2 pi)^{-1} P_{trace,j}(|xi| xd) |xi|^{trace+j+1-2m} g_j^
/// with P the exact residue profiles. Profiles are cached per (m, k, j).
GridField extend(const DensityData& g, double xd, int d, int trace = 0);

struct ValidationMomentRow {
    int j;
    int degree;           // monomial total degree probed
    double value;         // discrete moment of the j-th compatibility field
    double scale;         // magnitude reference for the moment integrand
    bool required_weak;   // degree <= 2m-j-d-1 (equation form)
    bool required_text;   // degree <= 2m-j-d   (surrounding-text form)
};

struct ValidationReport {
    std::vector<double> spectral_decay;   // fitted |h_k^|(xi) power per field
    std::vector<double> tail_decay;       // fitted |h_k|(x) power per field
    std::vector<double> boundary_max;     // outer-band magnitude per field
    std::vector<ValidationMomentRow> moments;
};

/// Report-only diagnostics of Theorem-style admissibility: smoothness proxy,
/// windowed decay exponents, and the discrete moment integrals at both
/// candidate polynomial degrees.
ValidationReport validate(const DirichletData& h, int d);

struct ResidualReport {
    double residual;    // max |Delta^m u| over interior slices, FD in height
    double scale;       // max term magnitude entering the cancellation
    double normalized;  // residual / scale
};

/// Finite-difference polyharmonic residual of the extended field on the given
/// heights (ascending, uniform not required; >= 2m+1 of them). Vertical
/// derivatives use exact-order FD weights on the height stencil; horizontal
/// Laplacian powers are applied spectrally per slice.
ResidualReport polyharmonic_residual(const DensityData& g, const std::vector<double>& heights,
                                     int d);

/// FD weights for the m-th derivative at x0 on arbitrary nodes (Fornberg).
std::vector<double> fd_weights(double x0, const std::vector<double>& nodes, int order);

}  // namespace halfspace

#endif
