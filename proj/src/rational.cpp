#include "halfspace/rational.hpp"

#include <ostream>
#include <stdexcept>

namespace halfspace {

Rational::Rational(long num, long den) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    mpq_init(q_);
    mpq_set_si(q_, num, 1);
    mpq_t d;
    mpq_init(d);
    mpq_set_si(d, den, 1);
    mpq_div(q_, q_, d);
    mpq_clear(d);
}

Rational Rational::from_string(const std::string& s) {
    Rational r;
    if (s.empty() || mpq_set_str(r.q_, s.c_str(), 10) != 0)
        throw std::invalid_argument("Rational: cannot parse '" + s + "'");
    if (mpz_sgn(mpq_denref(r.q_)) == 0)
        throw std::invalid_argument("Rational: zero denominator in '" + s + "'");
    mpq_canonicalize(r.q_);
    return r;
}

std::string Rational::to_string() const {
    char* c = mpq_get_str(nullptr, 10, q_);
    std::string s(c);
    void (*freefn)(void*, size_t);
    mp_get_memory_functions(nullptr, nullptr, &freefn);
    freefn(c, s.size() + 1);
    return s;
}

std::string Rational::numerator_string() const {
    char* c = mpz_get_str(nullptr, 10, mpq_numref(q_));
    std::string s(c);
    void (*freefn)(void*, size_t);
    mp_get_memory_functions(nullptr, nullptr, &freefn);
    freefn(c, s.size() + 1);
    return s;
}

std::string Rational::denominator_string() const {
    char* c = mpz_get_str(nullptr, 10, mpq_denref(q_));
    std::string s(c);
    void (*freefn)(void*, size_t);
    mp_get_memory_functions(nullptr, nullptr, &freefn);
    freefn(c, s.size() + 1);
    return s;
}

Rational Rational::abs() const {
    Rational r(*this);
    mpq_abs(r.q_, r.q_);
    return r;
}

Rational Rational::pow(long e) const {
    if (e < 0 && is_zero()) throw std::domain_error("Rational::pow: 0 to negative power");
    Rational base(*this);
    if (e < 0) {
        Rational one(1);
        mpq_div(base.q_, one.q_, base.q_);
        e = -e;
    }
    Rational r(1);
    while (e > 0) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

Rational Rational::operator-() const {
    Rational r(*this);
    mpq_neg(r.q_, r.q_);
    return r;
}

Rational& Rational::operator+=(const Rational& o) {
    mpq_add(q_, q_, o.q_);
    return *this;
}

Rational& Rational::operator-=(const Rational& o) {
    mpq_sub(q_, q_, o.q_);
    return *this;
}

Rational& Rational::operator*=(const Rational& o) {
    mpq_mul(q_, q_, o.q_);
    return *this;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    mpq_div(q_, q_, o.q_);
    return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.to_string();
}

Rational Rational::pow2(long e) {
    return Rational(2).pow(e);
}

Rational Rational::from_mpz(const mpz_t z) {
    Rational r;
    mpq_set_z(r.q_, z);
    return r;
}

Rational binomial(long n, long k) {
    if (k == 0) return Rational(1);
    if (k < 0 || n < 0 || k > n) return Rational(0);
    mpz_t z;
    mpz_init(z);
    mpz_bin_uiui(z, static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    Rational r = Rational::from_mpz(z);
    mpz_clear(z);
    return r;
}

Rational factorial(long n) {
    if (n < 0) throw std::domain_error("factorial: negative argument");
    mpz_t z;
    mpz_init(z);
    mpz_fac_ui(z, static_cast<unsigned long>(n));
    Rational r = Rational::from_mpz(z);
    mpz_clear(z);
    return r;
}

}  // namespace halfspace
