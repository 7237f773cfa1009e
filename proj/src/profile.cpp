#include "halfspace/profile.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace halfspace {

double ExpPolyProfile::eval(double t) const {
    if (is_zero()) return 0.0;
    double p = 0.0;
    for (std::size_t i = coeffs.size(); i-- > 0;) p = p * t + coeffs[i].to_double();
    return prefactor.to_double() * M_PI * std::exp(-t) * p;
}

Rational ExpPolyProfile::poly_times_prefactor(const Rational& t) const {
    Rational p;
    for (std::size_t i = coeffs.size(); i-- > 0;) p = p * t + coeffs[i];
    return prefactor * p;
}

namespace {

// Gaussian rational a + b i.
struct CQ {
    Rational re, im;
    CQ() = default;
    CQ(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    CQ operator+(const CQ& o) const { return {re + o.re, im + o.im}; }
    CQ operator*(const CQ& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    CQ operator*(const Rational& r) const { return {re * r, im * r}; }
};

using PolyT = std::vector<CQ>;  // polynomial in t

PolyT scale(const PolyT& p, const CQ& c) {
    PolyT r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) r[i] = p[i] * c;
    return r;
}

void add_into(PolyT& a, const PolyT& b) {
    if (b.size() > a.size()) a.resize(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = a[i] + b[i];
}

// multiply by i*t (one degree up, rotate coefficients by i)
PolyT times_it(const PolyT& p) {
    PolyT r(p.size() + 1);
    const CQ I{Rational(0), Rational(1)};
    for (std::size_t i = 0; i < p.size(); ++i) r[i + 1] = p[i] * I;
    return r;
}

// (2i)^e for possibly negative e
CQ two_i_pow(int e) {
    // i^e cycle and 2^e magnitude
    Rational mag = Rational::pow2(e);
    int r = ((e % 4) + 4) % 4;
    switch (r) {
        case 0: return {mag, Rational(0)};
        case 1: return {Rational(0), mag};
        case 2: return {-mag, Rational(0)};
        default: return {Rational(0), -mag};
    }
}

}  // namespace

// The integrand is N(zeta) (zeta-i)^{-M} (zeta+i)^{-M} e^{i t zeta} with
// N = zeta^p (carrying the odd kernel's i when p = 1). For t >= 0 close the
// contour above: the value is 2 pi i / (M-1)! times the (M-1)-th zeta
// derivative of N(zeta)(zeta+i)^{-M} e^{i t zeta} at zeta = i. Everything is
// Laurent in u = zeta + i with Q[i][t] coefficients, so the derivative is a
// two-term recurrence and the evaluation substitutes u = 2i.
ExpPolyProfile residue_profile(int p, int M) {
    if (M < 1) throw std::domain_error("residue_profile: M must be >= 1");
    if (p < 0 || p > 2) throw std::domain_error("residue_profile: p must be 0, 1 or 2");
    if (p >= 2 * M - 1) throw std::domain_error("residue_profile: integrand not integrable");

    const CQ one{Rational(1), Rational(0)};
    const CQ i_unit{Rational(0), Rational(1)};

    // N(zeta) expanded in u = zeta + i (zeta = u - i):
    //   p=0: 1 ; p=1: i*zeta = i u + 1 ; p=2: zeta^2 = u^2 - 2 i u - 1.
    std::map<int, PolyT> f;  // exponent of u -> coefficient polynomial in t
    auto put = [&](int e, CQ c) { f[e] = PolyT{c}; };
    switch (p) {
        case 0: put(-M, one); break;
        case 1:
            put(-M + 1, i_unit);
            put(-M, one);
            break;
        case 2:
            put(-M + 2, one);
            put(-M + 1, CQ{Rational(0), Rational(-2)});
            put(-M, CQ{Rational(-1), Rational(0)});
            break;
    }

    // d/dzeta of e^{itzeta} sum c_e(t) u^e = e^{itzeta} sum [it c_e u^e + e c_e u^{e-1}]
    for (int step = 0; step < M - 1; ++step) {
        std::map<int, PolyT> g;
        for (auto& [e, c] : f) {
            PolyT itc = times_it(c);
            add_into(g[e], itc);
            if (e != 0) add_into(g[e - 1], scale(c, CQ{Rational(e), Rational(0)}));
        }
        f = std::move(g);
    }

    // evaluate at zeta = i (u = 2i) and multiply by 2 pi i / (M-1)!
    PolyT value;
    for (auto& [e, c] : f) add_into(value, scale(c, two_i_pow(e)));
    Rational fact = factorial(M - 1);
    PolyT total = scale(value, CQ{Rational(0), Rational(2) / fact});  // 2i/(M-1)!; pi kept aside

    // the result of a real integral: imaginary parts must cancel exactly
    std::vector<Rational> coeffs(total.size());
    for (std::size_t k = 0; k < total.size(); ++k) {
        if (!total[k].im.is_zero())
            throw std::logic_error("residue_profile: nonreal coefficient survived");
        coeffs[k] = total[k].re;
    }
    while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();

    ExpPolyProfile out;
    if (coeffs.empty()) return out;
    std::size_t lead = 0;
    while (lead < coeffs.size() && coeffs[lead].is_zero()) ++lead;
    out.prefactor = coeffs[lead];
    out.coeffs.resize(coeffs.size());
    for (std::size_t k = 0; k < coeffs.size(); ++k) out.coeffs[k] = coeffs[k] / out.prefactor;
    return out;
}

}  // namespace halfspace
