#pragma once

// Exact rational arithmetic and the dyadic/fuse primitives everything else
// builds on.
//
// Design notes:
//  - Rational wraps a GMP mpq_t and is always kept in canonical form
//    (lowest terms, positive denominator, zero represented as 0/1).
//  - There is no floating point anywhere; every comparison and log2-type
//    query is decided with exact integer arithmetic.
//  - exponent_of returns nullopt for 0, standing for "-infinity": 0 is the
//    only value with no odd-numerator dyadic form.
//  - Values are immutable in spirit: the arithmetic API returns new values,
//    and the few in-place helpers are local performance conveniences.

#include <gmp.h>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "fusible/error.hpp"

namespace fusible {

class Rational {
  public:
    Rational() { mpq_init(q_); }
    Rational(long n) {  // NOLINT: implicit by design, mirrors integer literals
        mpq_init(q_);
        mpq_set_si(q_, n, 1);
    }
    Rational(long num, unsigned long den);  // reduced; den == 0 is an error

    Rational(const Rational& o) {
        mpq_init(q_);
        mpq_set(q_, o.q_);
    }
    Rational(Rational&& o) noexcept {
        mpq_init(q_);
        mpq_swap(q_, o.q_);
    }
    Rational& operator=(const Rational& o) {
        if (this != &o) mpq_set(q_, o.q_);
        return *this;
    }
    Rational& operator=(Rational&& o) noexcept {
        mpq_swap(q_, o.q_);
        return *this;
    }
    ~Rational() { mpq_clear(q_); }

    // 2^k as an exact rational, for any integer k.
    static Rational pow2(long k);

    bool is_zero() const { return mpq_sgn(q_) == 0; }
    bool is_negative() const { return mpq_sgn(q_) < 0; }
    int sign() const { return mpq_sgn(q_); }
    bool is_integer() const { return mpz_cmp_ui(mpq_denref(q_), 1) == 0; }
    // True iff the reduced denominator is a power of two (integers included).
    bool is_dyadic() const { return mpz_popcount(mpq_denref(q_)) == 1; }

    Rational operator-() const {
        Rational r;
        mpq_neg(r.q_, q_);
        return r;
    }
    Rational& operator+=(const Rational& o) {
        mpq_add(q_, q_, o.q_);
        return *this;
    }
    Rational& operator-=(const Rational& o) {
        mpq_sub(q_, q_, o.q_);
        return *this;
    }
    friend Rational operator+(const Rational& a, const Rational& b) {
        Rational r;
        mpq_add(r.q_, a.q_, b.q_);
        return r;
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        Rational r;
        mpq_sub(r.q_, a.q_, b.q_);
        return r;
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        Rational r;
        mpq_mul(r.q_, a.q_, b.q_);
        return r;
    }

    // value * 2^k; stays canonical, costs one limb shift.
    Rational mul_2exp(long k) const;
    // In-place x += n. gcd(num + n*den, den) = gcd(num, den) = 1, so
    // canonical form is preserved without a reduction pass.
    Rational& add_int(long n);

    friend bool operator==(const Rational& a, const Rational& b) {
        return mpq_equal(a.q_, b.q_) != 0;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = mpq_cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
                     : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }
    friend bool operator==(const Rational& a, long b) { return mpq_cmp_si(a.q_, b, 1) == 0; }
    friend std::strong_ordering operator<=>(const Rational& a, long b) {
        int c = mpq_cmp_si(a.q_, b, 1);
        return c < 0 ? std::strong_ordering::less
                     : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }

    // Sign of (value - 2^k), decided exactly.
    int cmp_pow2(long k) const;

    // If the value is +2^k for some integer k, that k; otherwise nullopt.
    std::optional<long> as_pow2() const;

    std::size_t hash() const;

    mpq_srcptr raw() const { return q_; }
    mpq_ptr raw_mut() { return q_; }

  private:
    mpq_t q_;
};

inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }
Rational abs(const Rational& a);

// fuse(a, b) = (a + b + 1) / 2, defined only when |a - b| < 1 (strict).
// `path` is reported in the error for expression-tree evaluation.
Rational fuse(const Rational& a, const Rational& b, const std::string& path = "");

// The exponent e(a): for a = (2k+1)/2^n in lowest terms, e(a) = n (negative
// when a is an even integer, e.g. e(6) = -1 since 6 = 3/2^-1).  e(0) is
// "-infinity", returned as nullopt.  Throws NotDyadic for non-dyadics.
std::optional<long> exponent_of(const Rational& a);

// Smallest k with 2^k >= r (r > 0).  ceil_log2(1) = 0, ceil_log2(3/4) = 0,
// ceil_log2(1/2) = -1.
long ceil_log2(const Rational& r);
// Largest k with 2^k <= r (r > 0).
long floor_log2(const Rational& r);

// Denominator of x in lowest terms, as an integer-valued rational.
// denominator_of(0) = 1.
Rational denominator_of(const Rational& x);
// 1 / denominator_of(x); the zigzag scan's step size.
Rational unit_over_denominator(const Rational& x);

enum class Style { Fraction, Pow2, DecimalIfExact };

// Accepted forms: [-]INT, [-]INT/INT, [-]INT.DIGITS (exact decimal).
Rational parse_rational(std::string_view text);
// Fraction: "p/q", or "p" when q = 1.  Pow2: "2^-10"-style for dyadics
// (throws NotDyadic otherwise).  DecimalIfExact: exact decimal expansion
// when one exists, else fraction form.
std::string format_rational(const Rational& r, Style style = Style::Fraction);

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace fusible

template <>
struct std::hash<fusible::Rational> {
    std::size_t operator()(const fusible::Rational& r) const noexcept { return r.hash(); }
};
