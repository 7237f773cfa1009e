#ifndef HALFSPACE_RATIONAL_HPP
#define HALFSPACE_RATIONAL_HPP

#include <cstdint>
#include <iosfwd>
#include <string>

#include <gmp.h>

namespace halfspace {

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator. Arithmetic is exact; equality is structural.
class Rational {
  public:
    Rational() { mpq_init(q_); }
    Rational(long n) {
        mpq_init(q_);
        mpq_set_si(q_, n, 1);
    }
    Rational(int n) : Rational(static_cast<long>(n)) {}
    Rational(long num, long den);
    Rational(const Rational& o) {
        mpq_init(q_);
        mpq_set(q_, o.q_);
    }
    Rational(Rational&& o) noexcept {
        mpq_init(q_);
        mpq_swap(q_, o.q_);
    }
    ~Rational() { mpq_clear(q_); }

    Rational& operator=(const Rational& o) {
        mpq_set(q_, o.q_);
        return *this;
    }
    Rational& operator=(Rational&& o) noexcept {
        mpq_swap(q_, o.q_);
        return *this;
    }

    /// Parse "num", "num/den" or a decimal-free integer string. Throws
    /// std::invalid_argument on malformed input or zero denominator.
    static Rational from_string(const std::string& s);

    std::string to_string() const;  // "num" or "num/den"
    std::string numerator_string() const;
    std::string denominator_string() const;

    double to_double() const { return mpq_get_d(q_); }
    bool is_zero() const { return mpq_sgn(q_) == 0; }
    bool is_integer() const { return mpz_cmp_ui(mpq_denref(q_), 1) == 0; }
    int sign() const { return mpq_sgn(q_); }

    Rational abs() const;
    Rational pow(long e) const;  // integer exponent, e < 0 requires nonzero

    Rational operator-() const;
    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);  // throws on division by zero

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return mpq_equal(a.q_, b.q_) != 0;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return mpq_cmp(a.q_, b.q_) < 0;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r);

    /// 2^e as an exact rational (e may be negative).
    static Rational pow2(long e);

    static Rational from_mpz(const mpz_t z);

  private:
    mpq_t q_;
};

/// C(n, k) for n ≥ 0, 0 ≤ k ≤ n; 0 outside that range except that
/// C(n, 0) = 1 for every n, including negative n. The only negative case the
/// closed-form inverse formulas reach is C(-1, 0), which this makes 1.
Rational binomial(long n, long k);

Rational factorial(long n);

}  // namespace halfspace

#endif
