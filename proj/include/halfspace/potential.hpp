#ifndef HALFSPACE_POTENTIAL_HPP
#define HALFSPACE_POTENTIAL_HPP

#include <array>
#include <vector>

#include "halfspace/grid_field.hpp"
#include "halfspace/rational.hpp"

namespace halfspace {

struct SingularityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PreconditionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Point = std::array<double, 3>;  // trailing coordinates ignored below dim

/// Sum of terms c * x^alpha * |x|^e * log|x|^delta. Closed under partial
/// derivatives, which is all the fundamental-solution calculus needs: every
/// derivative of |x|^{2m-d} (log|x|) stays in this class.
class RadialLogForm {
  public:
    struct Term {
        Rational coef;
        std::array<int, 3> alpha;  // monomial exponents
        int rad_exp;               // power of |x|
        bool log;                  // carries a log|x| factor
    };

    RadialLogForm() = default;
    explicit RadialLogForm(std::vector<Term> terms) : terms_(std::move(terms)) { combine(); }

    /// phi-profile for order m in dimension d with unit constant.
    static RadialLogForm fundamental(int m, int d);

    const std::vector<Term>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    RadialLogForm derivative(int axis, int dim) const;
    RadialLogForm laplacian(int dim) const;
    RadialLogForm derivative_multi(const std::array<int, 3>& beta, int dim) const;

    double evaluate(const Point& x, int dim) const;  // throws at x = 0

    /// Homogeneity degree shared by all terms (|alpha| + rad_exp).
    int degree() const;

    /// Exact test that the log part vanishes identically (expands the
    /// polynomial p(x) (x.x)^K term by term over the rationals).
    bool log_part_is_zero(int dim) const;

  private:
    void combine();
    std::vector<Term> terms_;
};

double phi(int m, int d, const Point& x, double C);

struct Calibration {
    double C;
    double error_estimate;
};

/// Numerically determines C_{m,d} from <C phi_unit, Delta^m gamma> = gamma(0)
/// with a Gaussian probe of width sigma. The constant is intentionally never
/// hard-coded.
Calibration calibrate(int m, int d, double sigma = 1.0);

/// D^beta phi with unit constant, evaluated at x.
double dphi(int m, int d, const std::array<int, 3>& beta, const Point& x);
RadialLogForm dphi_structure(int m, int d, const std::array<int, 3>& beta);

/// Boundary kernel k_j(x, y) = lambda_{j,y} phi(x - y) with y = (y', 0):
/// Delta^{j/2} phi for even j, (d/dx_d) Delta^{(j-1)/2} phi for odd j,
/// evaluated at (x' - y', x_d), scaled by C.
double kernel_k(int j, int m, int d, const Point& x, const Point& yprime, double C);
RadialLogForm kernel_structure(int j, int m, int d);

struct QuadratureValue {
    double value;
    double error_estimate;  // coarse-grid comparison
};

/// Direct-space evaluation of the layer-potential sum at an off-boundary
/// point by trapezoid over the density grid.
QuadratureValue quadrature_Tg(const DensityData& g, const Point& x, int m, int d, double C);

struct TruncationResult {
    GridField compact;    // T_R f, hard zero outside |x| <= R
    GridField remainder;  // f - T_R f, discrete moments vanish through degree L
    std::vector<double> moment_residuals;  // |moment| of the remainder, degree 0..L
};

/// Moment-preserving truncation at radius R: smooth cutoff (identically one
/// inside R/2, zero outside R) plus the dual-function correction restoring
/// moments through degree L. Requires f to start with those moments at
/// quadrature scale, else PreconditionError listing the offenders.
TruncationResult moment_truncation(const GridField& f, double R, int L);

/// Dyadic decomposition f = f_0 + ... + f_{k-1} + tail via iterated
/// truncations at radii 2^l; returns the pieces and the final tail.
struct DyadicDecomposition {
    std::vector<GridField> pieces;
    GridField tail;
};

DyadicDecomposition dyadic_decompose(const GridField& f, int levels, int L);

struct DecayFit {
    double slope;                  // fitted log|value| vs log|x| exponent
    std::vector<double> annuli;    // annulus centers used
    std::vector<double> sup_norms; // sup |.| per annulus
};

/// Riesz transform decay study: applies the axis-0 Riesz transform (optionally
/// differentiated) spectrally and fits the decay exponent on dyadic annuli
/// between r_lo and r_hi.
DecayFit riesz_decay_study(const GridField& f, int deriv_order, double r_lo, double r_hi);

}  // namespace halfspace

#endif
