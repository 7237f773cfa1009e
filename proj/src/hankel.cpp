#include "halfspace/hankel.hpp"

#include <stdexcept>

#include "halfspace/sequences.hpp"

namespace halfspace {

std::string to_string(HankelKind k) {
    switch (k) {
        case HankelKind::B: return "B";
        case HankelKind::Bshift: return "B'";
        case HankelKind::C: return "C";
        case HankelKind::Cshift: return "C'";
    }
    throw std::logic_error("unknown HankelKind");
}

HankelKind hankel_kind_from_string(const std::string& s) {
    if (s == "B") return HankelKind::B;
    if (s == "B'" || s == "Bshift" || s == "Bs") return HankelKind::Bshift;
    if (s == "C") return HankelKind::C;
    if (s == "C'" || s == "Cshift" || s == "Cs") return HankelKind::Cshift;
    throw std::invalid_argument("unknown Hankel kind '" + s + "'");
}

ExactMatrix hankel_build(HankelKind kind, std::size_t n) {
    if (n == 0) throw DimensionError("hankel_build: n must be >= 1");
    ExactMatrix m(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
            const long s = static_cast<long>(j + k);
            switch (kind) {
                case HankelKind::B: m.at(j, k) = middle_binomial(s); break;
                case HankelKind::Bshift: m.at(j, k) = middle_binomial(s + 1); break;
                case HankelKind::C: m.at(j, k) = catalan(s); break;
                case HankelKind::Cshift: m.at(j, k) = catalan(s + 1); break;
            }
        }
    return m;
}

FactorBundle hankel_factor(HankelKind kind, std::size_t n) {
    if (n == 0) throw DimensionError("hankel_factor: n must be >= 1");
    ExactMatrix L(n, n);
    std::vector<Rational> d(n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k <= j; ++k) {
            const long jj = static_cast<long>(j), kk = static_cast<long>(k);
            switch (kind) {
                case HankelKind::C: L.at(j, k) = semi_catalan(jj, kk); break;
                case HankelKind::Cshift: L.at(j, k) = shifted_semi_catalan(jj, kk); break;
                case HankelKind::B: L.at(j, k) = semi_binomial(jj, kk); break;
                case HankelKind::Bshift: L.at(j, k) = shifted_semi_binomial(jj, kk); break;
            }
        }
        switch (kind) {
            case HankelKind::C:
            case HankelKind::Cshift: d[j] = Rational(1); break;
            case HankelKind::B: d[j] = Rational(j == 0 ? 1 : 2); break;
            case HankelKind::Bshift: d[j] = Rational(2); break;
        }
    }
    return FactorBundle{kind, n, std::move(L), ExactMatrix::diagonal(d)};
}

ExactMatrix hankel_closed_inverse_factor(HankelKind kind, std::size_t n) {
    if (n == 0) throw DimensionError("hankel_closed_inverse_factor: n must be >= 1");
    ExactMatrix m(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k <= j; ++k) {
            const long jj = static_cast<long>(j), kk = static_cast<long>(k);
            Rational v;
            switch (kind) {
                case HankelKind::C: v = binomial(jj + kk, jj - kk); break;
                case HankelKind::Cshift: v = binomial(jj + kk + 1, jj - kk); break;
                case HankelKind::B:
                    v = Rational(2) * binomial(jj + kk, jj - kk) - binomial(jj + kk - 1, jj - kk);
                    break;
                case HankelKind::Bshift:
                    v = Rational(2) * binomial(jj + kk + 1, jj - kk) - binomial(jj + kk, jj - kk);
                    break;
            }
            m.at(j, k) = ((j + k) % 2 == 0) ? v : -v;
        }
    return m;
}

ExactMatrix hankel_closed_inverse(HankelKind kind, std::size_t n) {
    if (n == 0) throw DimensionError("hankel_closed_inverse: n must be >= 1");
    ExactMatrix m(n, n);
    auto term = [&](long i, long a) -> Rational {
        switch (kind) {
            case HankelKind::C: return binomial(i + a, i - a);
            case HankelKind::Cshift: return binomial(i + a + 1, i - a);
            case HankelKind::B:
                return Rational(2) * binomial(i + a, i - a) - binomial(i + a - 1, i - a);
            case HankelKind::Bshift:
                return Rational(2) * binomial(i + a + 1, i - a) - binomial(i + a, i - a);
        }
        throw std::logic_error("unknown HankelKind");
    };
    const bool halved = (kind == HankelKind::B || kind == HankelKind::Bshift);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k <= j; ++k) {
            const long jj = static_cast<long>(j), kk = static_cast<long>(k);
            Rational sum;
            for (long i = jj; i < static_cast<long>(n); ++i) sum += term(i, jj) * term(i, kk);
            if (halved) sum /= Rational(2);
            Rational v = ((j + k) % 2 == 0) ? sum : -sum;
            if (kind == HankelKind::B && j == 0 && k == 0) v += Rational(1, 2);
            m.at(j, k) = v;
            m.at(k, j) = v;
        }
    return m;
}

DeterminantIdentity hankel_determinant_identity(HankelKind kind, std::size_t n) {
    if (n == 0) throw DimensionError("hankel_determinant_identity: n must be >= 1");
    Rational claimed;
    switch (kind) {
        case HankelKind::B: claimed = Rational::pow2(static_cast<long>(n) - 1); break;
        case HankelKind::Bshift: claimed = Rational::pow2(static_cast<long>(n)); break;
        case HankelKind::C:
        case HankelKind::Cshift: claimed = Rational(1); break;
    }
    return DeterminantIdentity{claimed, hankel_build(kind, n).det()};
}

}  // namespace halfspace
