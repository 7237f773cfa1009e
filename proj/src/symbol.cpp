#include "halfspace/symbol.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

#include "halfspace/hankel.hpp"
#include "halfspace/sequences.hpp"

namespace halfspace {

namespace {

int odd(int j) { return j & 1; }

std::vector<int> deshuffle_reverse(int m) {
    // evens descending, then odds descending: (0..6) -> (6420, 531)
    std::vector<int> p;
    for (int j = m - 1 - odd(m - 1); j >= 0; j -= 2) p.push_back(j);
    for (int j = m - 1 - odd(m); j >= 1; j -= 2) p.push_back(j);
    return p;
}

}  // namespace

SymbolTable build_M(int m) {
    if (m < 1) throw std::domain_error("build_M: m must be >= 1");
    SymbolTable t;
    t.m = m;
    t.M = ExactMatrix(m, m);
    for (int k = 0; k < m; ++k)
        for (int j = 0; j < m; ++j) {
            if ((j + k) % 2 != 0) continue;
            const long idx = m - (j + k) / 2 - 1;
            if (!odd(j))
                t.M.at(k, j) = Rational::pow2(1 + j + k - 2 * m) * middle_binomial(idx);
            else
                t.M.at(k, j) = -Rational::pow2(j + k - 2 * m) * catalan(idx);
        }

    std::vector<Rational> d1(m), d2(m);
    for (int j = 0; j < m; ++j) {
        d1[j] = Rational::pow2(m - j + odd(j) - 1);
        d2[j] = Rational::pow2(m - j) * Rational(odd(j) ? -1 : 1);
    }
    t.D1 = ExactMatrix::diagonal(d1);
    t.D2 = ExactMatrix::diagonal(d2);
    t.perm = deshuffle_reverse(m);

    ExactMatrix core = t.D1 * t.M * t.D2;
    t.tildeM = ExactMatrix(m, m);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) t.tildeM.at(a, b) = core.at(t.perm[a], t.perm[b]);

    // block sanity: tildeM = blockdiag(B(n+1), C'(n)) for m = 2n+1,
    //                        blockdiag(B'(n), C(n)) for m = 2n
    {
        const int n = m / 2;
        ExactMatrix top = (m % 2 == 1) ? hankel_build(HankelKind::B, n + 1)
                                       : hankel_build(HankelKind::Bshift, n);
        const std::size_t bs = top.rows();
        for (std::size_t a = 0; a < bs; ++a)
            for (std::size_t b = 0; b < bs; ++b)
                if (t.tildeM.at(a, b) != top.at(a, b))
                    throw ConsistencyError("build_M: binomial block mismatch");
        if (n >= 1) {
            ExactMatrix bot = (m % 2 == 1) ? hankel_build(HankelKind::Cshift, n)
                                           : hankel_build(HankelKind::C, n);
            for (std::size_t a = 0; a < bot.rows(); ++a)
                for (std::size_t b = 0; b < bot.rows(); ++b)
                    if (t.tildeM.at(bs + a, bs + b) != bot.at(a, b))
                        throw ConsistencyError("build_M: catalan block mismatch");
        }
    }

    t.Minv = invert_M(m);
    return t;
}

DetM det_M(int m) {
    if (m < 1) throw std::domain_error("det_M: m must be >= 1");
    ExactMatrix M(m, m);
    for (int k = 0; k < m; ++k)
        for (int j = 0; j < m; ++j) {
            if ((j + k) % 2 != 0) continue;
            const long idx = m - (j + k) / 2 - 1;
            M.at(k, j) = odd(j) ? -Rational::pow2(j + k - 2 * m) * catalan(idx)
                                : Rational::pow2(1 + j + k - 2 * m) * middle_binomial(idx);
        }
    DetM r;
    r.computed = M.det();
    const int sgn = (m / 2) % 2 == 0 ? 1 : -1;
    r.claimed_paper = Rational(sgn) * Rational::pow2(static_cast<long>(m) * m);
    r.derived = Rational(sgn) * Rational::pow2(-static_cast<long>(m) * m);
    return r;
}

ExactMatrix invert_M(int m) {
    if (m < 1) throw std::domain_error("invert_M: m must be >= 1");
    // route 1: direct exact elimination
    ExactMatrix M(m, m);
    for (int k = 0; k < m; ++k)
        for (int j = 0; j < m; ++j) {
            if ((j + k) % 2 != 0) continue;
            const long idx = m - (j + k) / 2 - 1;
            M.at(k, j) = odd(j) ? -Rational::pow2(j + k - 2 * m) * catalan(idx)
                                : Rational::pow2(1 + j + k - 2 * m) * middle_binomial(idx);
        }
    ExactMatrix direct = M.inverse();

    // route 2: tildeM^{-1} from the closed-form Hankel inverses, conjugated
    // back: M^{-1} = D2 P^T tildeM^{-1} P D1.
    const int n = m / 2;
    ExactMatrix top_inv = (m % 2 == 1) ? hankel_closed_inverse(HankelKind::B, n + 1)
                                       : hankel_closed_inverse(HankelKind::Bshift, n);
    const std::size_t bs = top_inv.rows();
    ExactMatrix tilde_inv(m, m);
    for (std::size_t a = 0; a < bs; ++a)
        for (std::size_t b = 0; b < bs; ++b) tilde_inv.at(a, b) = top_inv.at(a, b);
    if (n >= 1) {
        ExactMatrix bot_inv = (m % 2 == 1) ? hankel_closed_inverse(HankelKind::Cshift, n)
                                           : hankel_closed_inverse(HankelKind::C, n);
        for (std::size_t a = 0; a < bot_inv.rows(); ++a)
            for (std::size_t b = 0; b < bot_inv.rows(); ++b)
                tilde_inv.at(bs + a, bs + b) = bot_inv.at(a, b);
    }
    std::vector<int> perm = deshuffle_reverse(m);
    // (P^T tilde_inv P)[i][j] = tilde_inv[a][b] with perm[a] = i, perm[b] = j
    std::vector<int> inv_perm(m);
    for (int a = 0; a < m; ++a) inv_perm[perm[a]] = a;
    ExactMatrix mid(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) mid.at(i, j) = tilde_inv.at(inv_perm[i], inv_perm[j]);
    ExactMatrix block(m, m);
    for (int i = 0; i < m; ++i) {
        const Rational d2i = Rational::pow2(m - i) * Rational(odd(i) ? -1 : 1);
        for (int j = 0; j < m; ++j) {
            const Rational d1j = Rational::pow2(m - j + odd(j) - 1);
            block.at(i, j) = d2i * mid.at(i, j) * d1j;
        }
    }

    if (direct != block)
        throw ConsistencyError("invert_M: elimination and closed-form inverses disagree");
    return direct;
}

std::complex<double> tau(int j, int m, double zeta) {
    const double q = 1.0 + zeta * zeta;
    if (j % 2 == 0) {
        double sgn = ((j / 2 + m) % 2 == 0) ? 1.0 : -1.0;
        return {sgn * std::pow(q, 0.5 * j - m), 0.0};
    }
    double sgn = (((j - 1) / 2 + m) % 2 == 0) ? 1.0 : -1.0;
    return {0.0, sgn * zeta * std::pow(q, 0.5 * (j - 1) - m)};
}

std::complex<double> omega(int k, int j, int m, int d, double zeta) {
    const double q = 1.0 + zeta * zeta;
    const double norm = ((m % 2 == 0) ? 1.0 : -1.0) / std::pow(2.0 * M_PI, d);
    if (j % 2 == 0 && k % 2 == 0) {
        double sgn = (((j + k) / 2) % 2 == 0) ? 1.0 : -1.0;
        return {norm * sgn * std::pow(q, 0.5 * (j + k) - m), 0.0};
    }
    if (j % 2 == 1 && k % 2 == 1) {
        double sgn = (((j + k) / 2) % 2 == 0) ? 1.0 : -1.0;
        return {-norm * sgn * zeta * zeta * std::pow(q, 0.5 * (j + k - 2) - m), 0.0};
    }
    // mixed parity: the trace operator contributes (-1)^{(k-1)/2} (-i zeta)
    // for odd k, while an odd layer index carries +i zeta; the sign flips
    // between the two mixed cases
    double sgn = (((j + k - 1) / 2) % 2 == 0) ? 1.0 : -1.0;
    if (k % 2 == 1) sgn = -sgn;
    return {0.0, norm * sgn * zeta * std::pow(q, 0.5 * (j + k - 1) - m)};
}

ExpPolyProfile poisson_profile(int k, int j, int m) {
    if (m < 1 || j < 0 || j >= m || k < 0 || k >= m)
        throw std::domain_error("poisson_profile: indices out of range");
    const int msign = (m % 2 == 0) ? 1 : -1;
    ExpPolyProfile base;
    int sgn;
    if (j % 2 == 0 && k % 2 == 0) {
        base = residue_profile(0, m - (j + k) / 2);
        sgn = (((j + k) / 2) % 2 == 0) ? 1 : -1;
    } else if (j % 2 == 1 && k % 2 == 1) {
        base = residue_profile(2, m + 1 - (j + k) / 2);
        sgn = (((j + k) / 2) % 2 == 0) ? -1 : 1;
    } else {
        base = residue_profile(1, m - (j + k - 1) / 2);
        sgn = (((j + k - 1) / 2) % 2 == 0) ? 1 : -1;
        if (k % 2 == 1) sgn = -sgn;  // see omega(): the k-odd mixed case flips
    }
    base.prefactor *= Rational(msign * sgn);
    return base;
}

AltBcSymbol alt_bc_symbol(int m) {
    if (m < 1) throw std::domain_error("alt_bc_symbol: m must be >= 1");
    const std::size_t n1 = static_cast<std::size_t>((m - 1) / 2) + 1;
    const std::size_t n2 = (m >= 2) ? static_cast<std::size_t>((m - 2) / 2) + 1 : 0;
    AltBcSymbol s;
    s.H1 = ExactMatrix(n1, n1);
    for (std::size_t j = 0; j < n1; ++j)
        for (std::size_t k = 0; k < n1; ++k)
            s.H1.at(j, k) = alt_bc_moment(static_cast<int>(j + k), m);
    s.H2 = ExactMatrix(n2, n2);
    for (std::size_t j = 0; j < n2; ++j)
        for (std::size_t k = 0; k < n2; ++k)
            s.H2.at(j, k) = alt_bc_moment(static_cast<int>(j + k) + 1, m);
    return s;
}

// Beta-function reduction of the even-moment integral:
//   a_n = B(n + 1/2, m - n - 1/2) = pi (2n)! (2m-2n-2)! / (4^{m-1} n! (m-n-1)! (m-1)!)
Rational alt_bc_moment(int n, int m) {
    if (n < 0 || 2 * n >= 2 * m - 1)
        throw std::domain_error("alt_bc_moment: integral diverges for this index");
    return factorial(2 * n) * factorial(2 * m - 2 * n - 2) /
           (Rational::pow2(2 * (m - 1)) * factorial(n) * factorial(m - n - 1) * factorial(m - 1));
}

double product_operator_symbol(int j, int k, double t, const std::vector<double>& r) {
    if ((j + k) % 2 != 0) return 0.0;
    if (r.empty()) throw std::domain_error("product_operator_symbol: empty r list");
    for (std::size_t a = 0; a < r.size(); ++a) {
        if (r[a] <= 0.0) throw std::domain_error("product_operator_symbol: r must be positive");
        for (std::size_t b = a + 1; b < r.size(); ++b)
            if (r[a] == r[b])
                throw std::domain_error("product_operator_symbol: repeated r value");
    }
    const double e = 0.5 * (j + k - 1);
    std::vector<double> terms(r.size());
    for (std::size_t l = 0; l < r.size(); ++l) {
        double denom = 1.0;
        for (std::size_t nu = 0; nu < r.size(); ++nu)
            if (nu != l) denom *= r[nu] * r[nu] - r[l] * r[l];
        terms[l] = std::pow(t * t + r[l] * r[l], e) / denom;
    }
    // pairwise summation keeps the near-cancelling tails honest
    std::function<double(std::size_t, std::size_t)> psum = [&](std::size_t lo,
                                                               std::size_t hi) -> double {
        if (hi - lo == 1) return terms[lo];
        std::size_t mid = lo + (hi - lo) / 2;
        return psum(lo, mid) + psum(mid, hi);
    };
    return 0.5 * psum(0, terms.size());
}

}  // namespace halfspace
