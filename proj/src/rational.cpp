#include "fusible/rational.hpp"

#include <cctype>
#include <ostream>
#include <vector>

namespace fusible {

namespace {

// RAII for GMP's malloc'd strings.
std::string take_gmp_string(char* s) {
    std::string out(s);
    void (*free_fn)(void*, std::size_t);
    mp_get_memory_functions(nullptr, nullptr, &free_fn);
    free_fn(s, out.size() + 1);
    return out;
}

std::string mpz_to_string(mpz_srcptr z) {
    return take_gmp_string(mpz_get_str(nullptr, 10, z));
}

}  // namespace

Rational::Rational(long num, unsigned long den) {
    mpq_init(q_);
    if (den == 0) throw Error("rational with zero denominator");
    mpq_set_si(q_, num, den);
    mpq_canonicalize(q_);
}

Rational Rational::pow2(long k) {
    Rational r;
    if (k >= 0) {
        mpz_set_ui(mpq_numref(r.q_), 0);
        mpz_setbit(mpq_numref(r.q_), static_cast<mp_bitcnt_t>(k));
    } else {
        mpz_set_ui(mpq_numref(r.q_), 1);
        mpz_set_ui(mpq_denref(r.q_), 0);
        mpz_setbit(mpq_denref(r.q_), static_cast<mp_bitcnt_t>(-k));
    }
    return r;
}

Rational Rational::mul_2exp(long k) const {
    Rational r;
    if (k >= 0)
        mpq_mul_2exp(r.q_, q_, static_cast<mp_bitcnt_t>(k));
    else
        mpq_div_2exp(r.q_, q_, static_cast<mp_bitcnt_t>(-k));
    return r;
}

Rational& Rational::add_int(long n) {
    if (n >= 0)
        mpz_addmul_ui(mpq_numref(q_), mpq_denref(q_), static_cast<unsigned long>(n));
    else
        mpz_submul_ui(mpq_numref(q_), mpq_denref(q_), static_cast<unsigned long>(-n));
    return *this;
}

int Rational::cmp_pow2(long k) const {
    // value vs 2^k  <=>  num vs den*2^k (k >= 0)  or  num*2^-k vs den.
    mpz_t t;
    mpz_init(t);
    int c;
    if (k >= 0) {
        mpz_mul_2exp(t, mpq_denref(q_), static_cast<mp_bitcnt_t>(k));
        c = mpz_cmp(mpq_numref(q_), t);
    } else {
        mpz_mul_2exp(t, mpq_numref(q_), static_cast<mp_bitcnt_t>(-k));
        c = mpz_cmp(t, mpq_denref(q_));
    }
    mpz_clear(t);
    return c;
}

std::optional<long> Rational::as_pow2() const {
    if (mpq_sgn(q_) <= 0) return std::nullopt;
    if (mpz_popcount(mpq_numref(q_)) != 1 || mpz_popcount(mpq_denref(q_)) != 1)
        return std::nullopt;
    long up = static_cast<long>(mpz_scan1(mpq_numref(q_), 0));
    long down = static_cast<long>(mpz_scan1(mpq_denref(q_), 0));
    return up - down;
}

std::size_t Rational::hash() const {
    // FNV-1a over the low limbs plus sizes; nearby dyadics differ in the
    // low limbs, so this spreads the memo keys well enough.
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint64_t v) {
        h ^= v;
        h *= 1099511628211ull;
    };
    auto mix_mpz = [&](mpz_srcptr z) {
        int sz = z->_mp_size;
        mix(static_cast<std::uint64_t>(static_cast<std::int64_t>(sz)));
        int n = sz < 0 ? -sz : sz;
        const mp_limb_t* limbs = mpz_limbs_read(z);
        for (int i = 0; i < n && i < 3; ++i) mix(limbs[i]);
        if (n > 3) mix(limbs[n - 1]);
    };
    mix_mpz(mpq_numref(q_));
    mix_mpz(mpq_denref(q_));
    return static_cast<std::size_t>(h);
}

Rational abs(const Rational& a) {
    Rational r;
    mpq_abs(r.raw_mut(), a.raw());
    return r;
}

Rational fuse(const Rational& a, const Rational& b, const std::string& path) {
    Rational d = a - b;
    mpq_abs(d.raw_mut(), d.raw());
    if (mpq_cmp_ui(d.raw(), 1, 1) >= 0)
        throw InvalidFuse("|" + format_rational(a) + " - " + format_rational(b) + "| >= 1", path);
    Rational s = a + b;
    s.add_int(1);
    return s.mul_2exp(-1);
}

std::optional<long> exponent_of(const Rational& a) {
    if (a.is_zero()) return std::nullopt;
    mpz_srcptr den = mpq_denref(a.raw());
    if (mpz_cmp_ui(den, 1) == 0) {
        // Even integers have negative exponent: 6 = 3/2^-1.
        return -static_cast<long>(mpz_scan1(mpq_numref(a.raw()), 0));
    }
    if (mpz_popcount(den) != 1) throw NotDyadic(format_rational(a));
    return static_cast<long>(mpz_scan1(den, 0));
}

long ceil_log2(const Rational& r) {
    if (r.sign() <= 0) throw NonPositive("ceil_log2 of " + format_rational(r));
    long k = static_cast<long>(mpz_sizeinbase(mpq_numref(r.raw()), 2)) -
             static_cast<long>(mpz_sizeinbase(mpq_denref(r.raw()), 2)) - 1;
    while (r.cmp_pow2(k) > 0) ++k;  // at most three probes
    return k;
}

long floor_log2(const Rational& r) {
    if (r.sign() <= 0) throw NonPositive("floor_log2 of " + format_rational(r));
    long k = static_cast<long>(mpz_sizeinbase(mpq_numref(r.raw()), 2)) -
             static_cast<long>(mpz_sizeinbase(mpq_denref(r.raw()), 2)) + 1;
    while (r.cmp_pow2(k) < 0) --k;
    return k;
}

Rational denominator_of(const Rational& x) {
    Rational r;
    mpq_set_z(r.raw_mut(), mpq_denref(x.raw()));
    return r;
}

Rational unit_over_denominator(const Rational& x) {
    Rational r;
    mpz_set(mpq_denref(r.raw_mut()), mpq_denref(x.raw()));
    mpz_set_ui(mpq_numref(r.raw_mut()), 1);
    return r;
}

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view s = text;
    bool neg = false;
    if (!s.empty() && s.front() == '-') {
        neg = true;
        s.remove_prefix(1);
    }
    auto fail = [&]() -> ParseError { return ParseError("bad rational '" + std::string(text) + "'"); };

    std::size_t slash = s.find('/');
    std::size_t dot = s.find('.');
    Rational r;
    if (slash != std::string_view::npos) {
        std::string_view ns = s.substr(0, slash), ds = s.substr(slash + 1);
        if (!all_digits(ns) || !all_digits(ds)) throw fail();
        mpz_set_str(mpq_numref(r.raw_mut()), std::string(ns).c_str(), 10);
        mpz_set_str(mpq_denref(r.raw_mut()), std::string(ds).c_str(), 10);
        if (mpz_sgn(mpq_denref(r.raw())) == 0) throw fail();
        mpq_canonicalize(r.raw_mut());
    } else if (dot != std::string_view::npos) {
        std::string_view is = s.substr(0, dot), fs = s.substr(dot + 1);
        if (!all_digits(is) || !all_digits(fs)) throw fail();
        std::string digits = std::string(is) + std::string(fs);
        mpz_set_str(mpq_numref(r.raw_mut()), digits.c_str(), 10);
        mpz_ui_pow_ui(mpq_denref(r.raw_mut()), 10, fs.size());
        mpq_canonicalize(r.raw_mut());
    } else {
        if (!all_digits(s)) throw fail();
        mpz_set_str(mpq_numref(r.raw_mut()), std::string(s).c_str(), 10);
    }
    if (neg) mpq_neg(r.raw_mut(), r.raw());
    return r;
}

namespace {

std::string format_fraction(const Rational& r) {
    return take_gmp_string(mpq_get_str(nullptr, 10, r.raw()));
}

std::string format_pow2(const Rational& r) {
    if (!r.is_dyadic()) throw NotDyadic(format_fraction(r));
    if (r.is_zero()) return "0";
    std::string sign = r.is_negative() ? "-" : "";
    mpz_t n;
    mpz_init(n);
    mpz_abs(n, mpq_numref(r.raw()));
    std::string num = mpz_to_string(n);
    bool num_is_one = mpz_cmp_ui(n, 1) == 0;
    bool num_is_pow2 = mpz_popcount(n) == 1;
    long num_tz = static_cast<long>(mpz_scan1(n, 0));
    mpz_clear(n);

    if (r.is_integer()) {
        if (num_is_pow2 && num_tz >= 1) return sign + "2^" + std::to_string(num_tz);
        return sign + num;
    }
    long s = static_cast<long>(mpz_scan1(mpq_denref(r.raw()), 0));
    if (num_is_one) return sign + "2^-" + std::to_string(s);
    return sign + num + "/2^" + std::to_string(s);
}

std::string format_decimal_if_exact(const Rational& r) {
    // Exact decimal expansion exists iff den = 2^a * 5^b.
    mpz_t t;
    mpz_init_set(t, mpq_denref(r.raw()));
    unsigned long twos = static_cast<unsigned long>(mpz_scan1(t, 0));
    mpz_tdiv_q_2exp(t, t, twos);
    unsigned long fives = 0;
    while (mpz_divisible_ui_p(t, 5)) {
        mpz_divexact_ui(t, t, 5);
        ++fives;
    }
    bool exact = mpz_cmp_ui(t, 1) == 0;
    mpz_clear(t);
    if (!exact) return format_fraction(r);
    if (r.is_integer()) return format_fraction(r);

    unsigned long places = twos > fives ? twos : fives;
    mpz_t scaled, p10;
    mpz_init(scaled);
    mpz_init(p10);
    mpz_ui_pow_ui(p10, 10, places);
    mpz_mul(scaled, mpq_numref(r.raw()), p10);
    mpz_abs(scaled, scaled);
    mpz_divexact(scaled, scaled, mpq_denref(r.raw()));
    std::string digits = mpz_to_string(scaled);
    mpz_clear(scaled);
    mpz_clear(p10);

    if (digits.size() <= places) digits.insert(0, places - digits.size() + 1, '0');
    std::string whole = digits.substr(0, digits.size() - places);
    std::string frac = digits.substr(digits.size() - places);
    while (frac.size() > 1 && frac.back() == '0') frac.pop_back();
    std::string sign = r.is_negative() ? "-" : "";
    return sign + whole + "." + frac;
}

}  // namespace

std::string format_rational(const Rational& r, Style style) {
    switch (style) {
        case Style::Fraction: return format_fraction(r);
        case Style::Pow2: return format_pow2(r);
        case Style::DecimalIfExact: return format_decimal_if_exact(r);
    }
    return format_fraction(r);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << format_fraction(r);
}

}  // namespace fusible
