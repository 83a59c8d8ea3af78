#include <map>
#include <optional>
#include <utility>

#include "fusible/engine.hpp"
#include "fusible/error.hpp"
#include "fusible/levels.hpp"
#include "fusible/rational.hpp"

namespace fusible {
namespace {

// Descent through the conjectured interval decomposition, shared state for
// one g_compute(ConjectureBased) call.
class MaxDepthSearch {
  public:
    explicit MaxDepthSearch(Engine& engine) : engine_(engine) {}

    // Largest fusible v < cap with certified-depth(v) <= k, if any.
    //
    // Values below 1 are the 1 - 2^(-t) with depth t.  Values in [1, cap)
    // decompose uniquely as v = s^j(a) ~ c with companion c drawn from the
    // window [a+1 - 2^(1-j) m(a), a+1), and the conjectured window-to-band
    // scaling gives depth(v) = depth(c) + 1.  Two facts bound the search:
    // a companion satisfies m(c) < 2 m(a), which for power-of-two gaps
    // forces depth(c) >= depth(a), so eligible segment bases themselves
    // have depth <= k-1 and are exactly the values this function yields at
    // k-1; and bands descend as j does, so per segment only the highest
    // eligible band matters.
    std::optional<Rational> run(long k, const Rational& cap) {
        if (k < 0 || !(cap > 0)) return std::nullopt;
        auto key = std::make_pair(k, cap);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        if (++nodes_ > engine_.budgets().enumeration_cap)
            throw BudgetExceeded(BudgetKind::Enumeration);

        std::optional<Rational> best;
        long t = k;
        if (cap < 1) t = std::min(k, -floor_log2(Rational(1) - cap) - 1);
        if (t >= 0) best = Rational(1) - Rational::pow2(-t);

        for (auto a = run(k - 1, cap - 1); a; a = run(k - 1, *a)) {
            if (best && *a + Rational(3, 2) <= *best) break;
            Rational ma = engine_.m_eval(*a, Method::Conjecture);
            auto e = ma.as_pow2();
            if (!e) throw NotPowerOfTwo("gap at " + format_rational(*a));
            Rational abar = *a;
            abar.add_int(1);
            Rational sbar = abar + ma;
            if (best && sbar <= *best) continue;

            // Highest band whose window still holds a depth <= k-1 value.
            auto cstar = run(k - 1, abar);
            if (!cstar) continue;
            long j_hi = 1 + *e - ceil_log2(abar - *cstar);
            if (cap < sbar) {
                // Band left ends l_j = sbar - 2^(1-j) m(a) must stay < cap.
                Rational q = (sbar - cap).mul_2exp(-*e);
                long jcap = 1 - ceil_log2(q);
                if (q.as_pow2()) --jcap;
                j_hi = std::min(j_hi, jcap);
            }
            for (long j = j_hi; j >= 1; --j) {
                Rational lj = sbar - ma.mul_2exp(1 - j);
                if (best && lj <= *best) break;
                Rational wl = abar - ma.mul_2exp(1 - j);
                Rational sj = *a + ma.mul_2exp(1) - ma.mul_2exp(1 - j);
                Rational climit = abar;
                if (cap < sbar) {
                    Rational cc = cap.mul_2exp(1);
                    cc.add_int(-1);
                    cc -= sj;
                    climit = std::min(climit, cc);
                }
                auto c = run(k - 1, climit);
                if (!c || *c < wl) continue;
                Rational v = fuse(sj, *c);
                if (!best || v > *best) best = v;
                break;  // lower bands lie entirely below this one
            }
        }
        memo_.emplace(std::move(key), best);
        return best;
    }

  private:
    Engine& engine_;
    std::map<std::pair<long, Rational>, std::optional<Rational>> memo_;
    std::uint64_t nodes_ = 0;
};

Rational g_brute_force(int n, Engine& engine) {
    // Enumerate one level past the target so the depth mask can witness
    // depth-n presentations: maxobs >= n certifies depth(v) >= n, ruling a
    // value out without the (expensive) gap certification.  A depth-(n-1)
    // value must show maxobs exactly n-1 here.
    ValueLevels lv = enumerate_levels(n, engine.budgets().enumeration_cap);
    const auto& entries = lv.entries();
    for (auto it = entries.rbegin(); it != entries.rend(); ++it) {
        if (it->max_depth_observed() != n - 1) continue;
        if (engine.depth_of_fusible(it->value) == n - 1) return it->value;
    }
    throw Error("no fusible of depth " + std::to_string(n - 1) + " in the level enumeration");
}

}  // namespace

Rational g_compute(int n, GStrategy strategy, Engine& engine) {
    if (n < 1) throw OutOfRange("g is defined for n >= 1");
    if (strategy == GStrategy::BruteForce) return g_brute_force(n, engine);
    MaxDepthSearch search(engine);
    // g(n) <= g(n-1) + 1/2 and g(1) = 0, so n is a safe stand-in for +oo.
    auto best = search.run(n - 1, Rational(n));
    if (!best) throw Error("empty search for g(" + std::to_string(n) + ")");
    return *best;
}

}  // namespace fusible
