#pragma once

// The order-isomorphism between fusible numbers and ordinals, built on the
// conjectured self-similar interval decomposition:
//
//   * [1, oo) splits into segments [a+1, s(a)+1), one per fusible a;
//   * a segment splits into bands I_{a,j}, j = 1, 2, ...;
//   * the fusibles in band j are s^j(a) ~ c with c a fusible drawn from the
//     window [a+1 - 2^(1-j) m(a), a+1).
//
// Every mapping here navigates that decomposition, so every result assumes
// the conjecture; contexts expose conjecture_assumed() = true and callers
// are expected to propagate the flag into their output.
//
// Position convention: ord_of(0) = 1 (positions start at 1, not 0), and
// internally T(x) = order type of F ∩ [0, x) with ord_of = 1 + T.

#include <cstdint>
#include <map>
#include <unordered_map>

#include "fusible/engine.hpp"
#include "fusible/ordinal.hpp"
#include "fusible/rational.hpp"

namespace fusible {

class OrdContext {
  public:
    // The navigation needs m() at arbitrary fusibles; only the Conjecture
    // evaluator is both correct past 33/16 (believed) and fast enough, and
    // the surrounding structure assumes the conjecture anyway.
    explicit OrdContext(Engine& engine, Method method = Method::Conjecture);

    bool conjecture_assumed() const { return true; }
    Engine& engine() { return engine_; }

    // Largest fusible <= x (x >= 0; OutOfRange below 0).
    Rational pred_or_equal(const Rational& x);
    bool is_fusible(const Rational& x);

    // Position of x in the fusible order, ord_of(0) = 1.  NotFusible when
    // the descent does not land on x.
    CnfOrdinal ord_of(const Rational& x);
    // Inverse of ord_of.  OutOfRange for 0 and for ordinals that are not
    // positions of fusibles.
    Rational num_of(const CnfOrdinal& alpha);

    // The fundamental sequence the gap structure induces at a fusible with
    // limit position: alpha'[n] = ord_of(a - 2^(1-n) m(a)).  n >= 1.
    CnfOrdinal fs_paper(const Rational& a, std::uint64_t n);

    // Smallest k with fs_paper(num_of(alpha), n) = canonical_fs(alpha, n+k)
    // for all 1 <= n <= n_probe; NoUniformOffset when no such k <= k_cap.
    std::uint64_t exc_of(const CnfOrdinal& alpha, std::uint64_t n_probe = 8,
                         std::uint64_t k_cap = 1024);

    enum class FMode { Recurrence, Definition };
    // Growth hierarchy: f_0(n) = n, f_{alpha+1}(n) = f_alpha(n+1) + 1, and
    // f_alpha(n) = f_{alpha'[n]}(1) + 1 at limits (alpha'[n] = fs_paper).
    // Definition mode evaluates -log2 m(num_of(w^(alpha)*n)) instead; the
    // two must agree wherever both are feasible.
    std::uint64_t f_hier(const CnfOrdinal& alpha, std::uint64_t n, FMode mode);

  private:
    struct OrdLess {
        bool operator()(const CnfOrdinal& a, const CnfOrdinal& b) const { return a.cmp(b) < 0; }
    };
    struct DepthGuard;

    Rational m(const Rational& x) { return engine_.m_eval(x, method_); }
    Rational pred_impl(const Rational& x);
    CnfOrdinal t_of(const Rational& x);
    Rational num_from_t(const CnfOrdinal& tau);
    std::uint64_t f_rec(const CnfOrdinal& alpha, std::uint64_t n);

    Engine& engine_;
    Method method_;
    int depth_ = 0;
    std::unordered_map<Rational, Rational> pred_memo_;
    std::unordered_map<Rational, CnfOrdinal> t_memo_;
    std::map<CnfOrdinal, Rational, OrdLess> num_memo_;
};

}  // namespace fusible
