#pragma once

// The gap-function engine: three ways to evaluate m(x) = s(x) - x, the
// distance from x to the next fusible number.
//
//   Erickson    m(x) = -x if x < 0, else m(x - m(x-1)) / 2.
//               Simple, but correct only below 33/16: it overstates m from
//               there on (see verify_counterexample).
//   Conjecture  m(x) = -x if x < 0, else m(x - a - 1/d + 2^ceil_log2(a)) / 2
//               with a = m(x-1) and d = denominator_of(s(x-1)).  Believed
//               exact everywhere; results that depend on it are tagged.
//   Zigzag      reference scan; slow but certified, used as the arbiter.
//
// Evaluation never uses native recursion.  The two recurrence methods are
// tail chains: the machine walks x -> x' keeping a halving count, and only
// the nested m(x-1)-style subevaluations occupy explicit frames.  The
// stack-frame budget is charged against the abstract recursion depth (chain
// steps along the active path plus live frames), so budget semantics match
// the naive recursive reading of the formulas.
//
// Memoization is per-method and keyed by the exact rational argument.
// Methods never share entries: a cross-method hit would silently launder the
// divergence this library exists to exhibit.  Only queried arguments are
// memoized (not interior chain points), which keeps the big runs within the
// documented entry counts; interior points still probe the table so earlier
// queries short-circuit later chains.

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fusible/levels.hpp"
#include "fusible/rational.hpp"

namespace fusible {

enum class Method { Erickson, Conjecture, Zigzag };

const char* method_name(Method m);
std::optional<Method> method_from_name(std::string_view name);

struct Budgets {
    std::uint64_t memo_entries = 10'000'000;
    std::uint64_t loop_iterations = 100'000'000;  // zigzag scan steps
    std::uint64_t stack_frames = 200'000;         // abstract recursion depth
    std::uint64_t enumeration_cap = 5'000'000;    // level-table values
};

struct EvalStats {
    std::uint64_t entries = 0;           // memo entries held for the method
    std::uint64_t peak_stack_depth = 0;  // abstract frames
    std::uint64_t loop_iterations = 0;   // zigzag only
};

class Engine {
  public:
    explicit Engine(Budgets budgets = {}) : budgets_(budgets) {}

    Rational m_eval(const Rational& x, Method method);
    // s(x) = x + m(x); the least fusible number strictly above x.
    Rational s_eval(const Rational& x, Method method);
    // n-fold successor of a fusible number, by iterating s_eval.
    Rational successor_pow(const Rational& a, int n, Method method);

    // Certified depth d(a) = -log2(m_zigzag(a)) - 1 for fusible a.  Throws
    // NotPowerOfTwo when the zigzag gap is not a power of two, which rejects
    // most non-fusible inputs; a non-fusible value lying exactly a power of
    // two below its successor slips through, so fusibility of the argument
    // is the caller's precondition, not something this certifies.
    long depth_of_fusible(const Rational& a);

    // Rows (n, -log2 m(3 - 2^-n)) for n = 1..n_max.  Infeasible entries
    // surface as BudgetExceeded, never as wrong numbers.
    std::vector<std::pair<int, long>> table1(int n_max, Method method);

    struct DupResult {
        std::uint64_t count = 0;
        std::vector<std::pair<Rational, Rational>> witnesses;  // b <= c, a = b~c
    };
    // Number of ordered-up-to-swap fusible pairs fusing to a, decided
    // against the level table; throws InsufficientDepth when the table is
    // too shallow to be complete for a.
    DupResult dup_count(const Rational& a, const ValueLevels& lv);

    // Cache file: lines "method\tx\tm".  Loaded entries are re-verified on
    // first use; a mismatch with fresh computation is a hard CacheMismatch.
    void load_cache(const std::string& path);
    void save_cache(const std::string& path) const;

    const Budgets& budgets() const { return budgets_; }
    Budgets& budgets() { return budgets_; }
    const EvalStats& stats(Method m) const { return stats_[index(m)]; }
    std::uint64_t total_memo_entries() const;

  private:
    struct MemoVal {
        Rational m;
        bool verified = true;
    };
    using MemoMap = std::unordered_map<Rational, MemoVal>;

    static int index(Method m) { return static_cast<int>(m); }

    Rational run(const Rational& x, Method method);
    const Rational* memo_find(Method method, const Rational& x);
    void memo_insert(Method method, const Rational& x, const Rational& m);
    void verify_entry(Method method, const Rational& x);

    MemoMap memo_[3];
    EvalStats stats_[3];
    Budgets budgets_;
    std::uint64_t abstract_depth_ = 0;  // live frames + chain steps on the active path
    std::uint64_t loop_iters_ = 0;      // zigzag scan steps in the current outermost run
    bool in_run_ = false;
    bool verifying_ = false;  // cache-verification pass: unverified entries hidden
};

enum class GStrategy { BruteForce, ConjectureBased };

// g(n) = max { a fusible : d(a) = n-1 }, the largest fusible number of a
// given depth.  BruteForce sweeps the enumerated levels with zigzag
// certification; ConjectureBased descends the interval structure of the
// conjectured self-similar decomposition (its result is conjecture-tagged).
Rational g_compute(int n, GStrategy strategy, Engine& engine);

}  // namespace fusible
