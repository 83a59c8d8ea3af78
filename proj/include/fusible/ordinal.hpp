#pragma once

// Ordinals below epsilon_0 in Cantor normal form:
//
//   alpha = w^(e_1)*c_1 + w^(e_2)*c_2 + ... + w^(e_k)*c_k
//
// with e_1 > e_2 > ... > e_k (ordinals, recursively in the same form) and
// finite coefficients c_i >= 1.  Zero is the empty sum.  The type keeps the
// invariant at every step, so comparison is plain lexicographic descent.
//
// Text syntax (parse_ordinal / format_ordinal):
//   cnf  := term ("+" term)*          e.g.  w^(w)*2+w*3+5
//   term := "w^(" cnf ")" ["*" INT] | "w" ["*" INT] | INT
// Non-canonical input (unsorted or repeated exponents, zero coefficients,
// w^(0) or w^(1) spellings) is rejected with NonCanonical, not normalized.

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fusible/error.hpp"

namespace fusible {

class CnfOrdinal {
  public:
    struct Term;

    CnfOrdinal() = default;             // zero
    CnfOrdinal(std::uint64_t n);        // NOLINT: implicit, mirrors numerals
    static CnfOrdinal omega();
    static CnfOrdinal omega_pow(CnfOrdinal exponent);  // w^(exponent)

    bool is_zero() const { return terms_.empty(); }
    std::optional<std::uint64_t> as_nat() const;
    bool is_successor() const;  // defined after Term below
    bool is_limit() const;

    int cmp(const CnfOrdinal& o) const;
    friend bool operator==(const CnfOrdinal& a, const CnfOrdinal& b) { return a.cmp(b) == 0; }
    friend std::strong_ordering operator<=>(const CnfOrdinal& a, const CnfOrdinal& b) {
        int c = a.cmp(b);
        return c < 0 ? std::strong_ordering::less
                     : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }

    // Ordinal addition (absorbs lower-order terms of the left operand).
    CnfOrdinal add(const CnfOrdinal& o) const;
    friend CnfOrdinal operator+(const CnfOrdinal& a, const CnfOrdinal& b) { return a.add(b); }

    // The unique delta with gamma + delta = *this; SubtrahendTooLarge if
    // gamma > *this.
    CnfOrdinal left_sub(const CnfOrdinal& gamma) const;

    // alpha * n for finite n: multiplies the leading coefficient, keeps the
    // tail (n = 0 gives zero).
    CnfOrdinal mul_nat(std::uint64_t n) const;

    // Predecessor of a successor ordinal.
    CnfOrdinal pred() const;

    // Canonical fundamental sequence of a limit ordinal:
    //   (beta + w^(gamma+1))[n] = beta + w^(gamma)*n
    //   (beta + w^(lambda))[n]  = beta + w^(lambda[n])    (lambda a limit)
    // Throws NotALimit on successors and zero.
    CnfOrdinal fs(std::uint64_t n) const;

    const std::vector<Term>& terms() const { return terms_; }

  private:
    std::vector<Term> terms_;
};

struct CnfOrdinal::Term {
    CnfOrdinal exponent;
    std::uint64_t coeff = 1;
};

inline bool CnfOrdinal::is_successor() const {
    return !terms_.empty() && terms_.back().exponent.is_zero();
}
inline bool CnfOrdinal::is_limit() const {
    return !terms_.empty() && !terms_.back().exponent.is_zero();
}

CnfOrdinal parse_ordinal(std::string_view text);
std::string format_ordinal(const CnfOrdinal& a);

}  // namespace fusible
