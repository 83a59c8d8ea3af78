#include "fusible/ordmap.hpp"

#include <string>
#include <vector>

#include "fusible/error.hpp"

namespace fusible {
namespace {

// Navigation recursion is value-driven, not budget-driven; this only stops
// runaways (a broken descent or an adversarial input).
constexpr int kMaxNavDepth = 4096;
// Band indices and fs indices enter 2^(1-j) denominators, so huge ones make
// the rationals themselves intractable long before anything else breaks.
constexpr std::uint64_t kMaxBandIndex = std::uint64_t{1} << 20;

}  // namespace

struct OrdContext::DepthGuard {
    explicit DepthGuard(OrdContext& c) : ctx(c) {
        if (++ctx.depth_ > kMaxNavDepth) {
            --ctx.depth_;
            throw BudgetExceeded(BudgetKind::Stack);
        }
    }
    ~DepthGuard() { --ctx.depth_; }
    DepthGuard(const DepthGuard&) = delete;
    DepthGuard& operator=(const DepthGuard&) = delete;
    OrdContext& ctx;
};

OrdContext::OrdContext(Engine& engine, Method method) : engine_(engine), method_(method) {
    if (method != Method::Conjecture)
        throw Error("ordinal navigation requires the conjecture evaluator, not " +
                    std::string(method_name(method)));
}

Rational OrdContext::pred_or_equal(const Rational& x) {
    if (x.is_negative())
        throw OutOfRange("no fusible number lies at or below " + format_rational(x));
    auto it = pred_memo_.find(x);
    if (it != pred_memo_.end()) return it->second;
    Rational p = pred_impl(x);
    pred_memo_.emplace(x, p);
    return p;
}

Rational OrdContext::pred_impl(const Rational& x) {
    DepthGuard guard(*this);
    if (x < 1) {
        // Below 1 the fusibles are exactly 1 - 2^(-k).
        long k = -ceil_log2(Rational(1) - x);
        return Rational(1) - Rational::pow2(-k);
    }
    Rational a = pred_or_equal(x - 1);  // segment base: x in [a+1, s(a)+1)
    Rational ma = m(a);
    auto e = ma.as_pow2();
    if (!e) throw NotPowerOfTwo("gap at " + format_rational(a) + " is " + format_rational(ma));
    Rational abar = a;
    abar.add_int(1);
    Rational sbar = abar + ma;
    long j = 1 - (ceil_log2(sbar - x) - *e);  // band index of x
    if (j > static_cast<long>(kMaxBandIndex)) throw BudgetExceeded(BudgetKind::Iterations);
    Rational sj = a + ma.mul_2exp(1) - ma.mul_2exp(1 - j);  // s^j(a)
    // Band j is the image of the window [a+1 - 2^(1-j) m(a), a+1) under
    // c |-> s^j(a) ~ c; invert the fuse to land in the window.
    Rational u = x.mul_2exp(1);
    u.add_int(-1);
    u -= sj;
    return fuse(sj, pred_or_equal(u));
}

bool OrdContext::is_fusible(const Rational& x) {
    return !x.is_negative() && pred_or_equal(x) == x;
}

CnfOrdinal OrdContext::ord_of(const Rational& x) {
    if (x.is_negative()) throw NotFusible(format_rational(x) + " is negative");
    Rational p = pred_or_equal(x);
    if (p != x)
        throw NotFusible(format_rational(x) + "; the nearest fusible at or below it is " +
                         format_rational(p));
    return CnfOrdinal(1) + t_of(x);
}

// Order type of F intersected with [0, x).
CnfOrdinal OrdContext::t_of(const Rational& x) {
    if (x.is_negative() || x.is_zero()) return {};
    auto it = t_memo_.find(x);
    if (it != t_memo_.end()) return it->second;
    DepthGuard guard(*this);
    CnfOrdinal r;
    if (x < 1) {
        r = CnfOrdinal(static_cast<std::uint64_t>(-floor_log2(Rational(1) - x)));
    } else if (x == 1) {
        r = CnfOrdinal::omega();
    } else {
        Rational a = pred_or_equal(x - 1);
        Rational ma = m(a);
        auto e = ma.as_pow2();
        if (!e) throw NotPowerOfTwo("gap at " + format_rational(a) + " is " + format_rational(ma));
        Rational abar = a;
        abar.add_int(1);
        Rational sbar = abar + ma;
        long j = 1 - (ceil_log2(sbar - x) - *e);
        if (j > static_cast<long>(kMaxBandIndex)) throw BudgetExceeded(BudgetKind::Iterations);
        Rational sj = a + ma.mul_2exp(1) - ma.mul_2exp(1 - j);
        Rational u = x.mul_2exp(1);
        u.add_int(-1);
        u -= sj;
        Rational wl = abar - ma.mul_2exp(1 - j);
        // Each full band below x contributes w^(ord_of(a)); within band j,
        // x sits where its window preimage sits past the window's left end.
        CnfOrdinal whole_bands =
            CnfOrdinal::omega_pow(CnfOrdinal(1) + t_of(a)).mul_nat(static_cast<std::uint64_t>(j));
        r = whole_bands + t_of(u).left_sub(t_of(wl));
    }
    t_memo_.emplace(x, r);
    return r;
}

Rational OrdContext::num_of(const CnfOrdinal& alpha) {
    if (alpha.is_zero()) throw OutOfRange("position 0 precedes every fusible number");
    if (auto k = alpha.as_nat()) {
        if (*k > kMaxBandIndex) throw BudgetExceeded(BudgetKind::Iterations);
        return Rational(1) - Rational::pow2(1 - static_cast<long>(*k));
    }
    return num_from_t(alpha);  // 1 + tau = alpha for infinite alpha
}

Rational OrdContext::num_from_t(const CnfOrdinal& tau) {
    if (auto k = tau.as_nat()) {
        if (*k > kMaxBandIndex) throw BudgetExceeded(BudgetKind::Iterations);
        return Rational(1) - Rational::pow2(-static_cast<long>(*k));
    }
    auto it = num_memo_.find(tau);
    if (it != num_memo_.end()) return it->second;
    DepthGuard guard(*this);
    const auto& lead = tau.terms().front();
    std::uint64_t j = lead.coeff;
    if (j > kMaxBandIndex) throw BudgetExceeded(BudgetKind::Iterations);
    CnfOrdinal rho = tau.left_sub(CnfOrdinal::omega_pow(lead.exponent).mul_nat(j));
    Rational a = num_of(lead.exponent);
    Rational ma = m(a);
    Rational abar = a;
    abar.add_int(1);
    long jl = static_cast<long>(j);
    Rational sj = a + ma.mul_2exp(1) - ma.mul_2exp(1 - jl);
    Rational wl = abar - ma.mul_2exp(1 - jl);
    // The window left end is itself fusible; rho positions the companion
    // past it inside the window.
    Rational c = num_from_t(t_of(wl) + rho);
    if (c < wl || !(c < abar))
        throw OutOfRange(format_ordinal(tau) + " is not the position of a fusible number");
    Rational x = fuse(sj, c);
    num_memo_.emplace(tau, x);
    return x;
}

CnfOrdinal OrdContext::fs_paper(const Rational& a, std::uint64_t n) {
    if (n == 0) throw OutOfRange("fundamental-sequence index must be at least 1");
    if (n > kMaxBandIndex) throw BudgetExceeded(BudgetKind::Iterations);
    CnfOrdinal alpha = ord_of(a);
    if (!alpha.is_limit())
        throw NotALimit(format_ordinal(alpha) + ", the position of " + format_rational(a));
    Rational point = a - m(a).mul_2exp(1 - static_cast<long>(n));
    return ord_of(point);
}

std::uint64_t OrdContext::exc_of(const CnfOrdinal& alpha, std::uint64_t n_probe,
                                 std::uint64_t k_cap) {
    if (n_probe == 0) throw OutOfRange("need at least one probe index");
    if (!alpha.is_limit()) throw NotALimit(format_ordinal(alpha));
    Rational a = num_of(alpha);
    std::vector<CnfOrdinal> probes;
    probes.reserve(n_probe);
    for (std::uint64_t n = 1; n <= n_probe; ++n) probes.push_back(fs_paper(a, n));
    for (std::uint64_t k = 0; k <= k_cap; ++k) {
        bool all = true;
        for (std::uint64_t n = 1; n <= n_probe && all; ++n)
            all = alpha.fs(n + k) == probes[n - 1];
        if (all) return k;
    }
    throw NoUniformOffset("no offset k <= " + std::to_string(k_cap) +
                          " aligns the two sequences for " + format_ordinal(alpha));
}

std::uint64_t OrdContext::f_hier(const CnfOrdinal& alpha, std::uint64_t n, FMode mode) {
    if (mode == FMode::Recurrence) return f_rec(alpha, n);
    if (n == 0) throw OutOfRange("hierarchy index must be at least 1");
    Rational x = num_of(CnfOrdinal::omega_pow(alpha).mul_nat(n));
    Rational gap = engine_.m_eval(x, method_);
    auto e = gap.as_pow2();
    if (!e) throw NotPowerOfTwo("gap at " + format_rational(x) + " is " + format_rational(gap));
    return static_cast<std::uint64_t>(-*e);
}

std::uint64_t OrdContext::f_rec(const CnfOrdinal& alpha, std::uint64_t n) {
    DepthGuard guard(*this);
    if (alpha.is_zero()) return n;
    if (alpha.is_successor()) return f_rec(alpha.pred(), n + 1) + 1;
    return f_rec(fs_paper(num_of(alpha), n), 1) + 1;
}

}  // namespace fusible
