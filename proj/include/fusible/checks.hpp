#pragma once

// Scripted verifications: the failure of the simple recursive gap formula at
// 33/16, method agreement below that frontier, the self-similar interval
// structure on enumerated prefixes, and the structural laws as
// executable properties over the level tables.
//
// Every check reports Pass, Fail, or Inconclusive.  Fail always carries a
// concrete witness; Inconclusive only ever means a budget or depth bound got
// in the way — arithmetic is exact, so there is no tolerance-style outcome.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fusible/engine.hpp"
#include "fusible/levels.hpp"
#include "fusible/rational.hpp"

namespace fusible {

enum class CheckStatus { Pass, Fail, Inconclusive };
const char* status_name(CheckStatus s);

struct CheckReport {
    std::string name;
    CheckStatus status = CheckStatus::Pass;
    std::vector<std::string> witnesses;  // concrete values/pairs behind the verdict
    std::vector<std::string> notes;      // counts, skips, and their reasons
    std::uint64_t memo_entries = 0;      // engine cost after the check
    std::uint64_t peak_stack = 0;
    std::uint64_t loop_iterations = 0;
    bool conjecture_assumed = false;

    void fail(std::string witness);
    void note(std::string text);
    void record_cost(const Engine& engine);
};

// The 33/16 counterexample: the simple recursion reports 2^-11 at both
// 31/16 and 33/16, yet 19/16 ~ (31/16 + 2^-11) = 33/16 + 2^-12 is a valid
// fuse, so the true gap at 33/16 is at most 2^-12 (zigzag confirms).
// `claimed_gap` defaults to 2^-11; passing a perturbed value (e.g. 2^-10)
// must flip the verdict to Fail — a self-test that the checker can fail.
CheckReport verify_counterexample(Engine& engine,
                                  const Rational& claimed_gap = Rational::pow2(-11));

// Window-to-band self-similarity at (a, n): every companion c in
// [a+1 - 2^(1-n) m(a), a+1) deep enough for the table must fuse into the
// band, and every table value found in the band must decompose back to a
// companion at least one level shallower than its own certified depth.
CheckReport verify_self_similarity(const Rational& a, int n, const ValueLevels& lv,
                                   Engine& engine);

// Sweeps every table value v < x_max, comparing the three evaluators and —
// where the value's certified depth allows — the successor gap read off the
// table.  Pass requires total agreement below 33/16; swept past it, the
// first divergence must sit exactly at 33/16.
CheckReport cross_validate(const ValueLevels& lv, const Rational& x_max, Engine& engine);

// Structural laws as exhaustive properties over the tables:
//   fuse-bounds           fuse output bounds on all valid pairs from S_3
//   gap-halving           m certified a power of two, halving at successors,
//                         and matching the table gap where depth permits
//   depth-exponent        tree depth >= dyadic exponent of the tree's value
//   depth-forward         v with a depth-n expression -> v + 2^(-n-1) in S_{n+1}
//   depth-backward        nonzero such v -> v - 2^(-n) in S_n
//   successor-closed-form s^n(a) = a + (2 - 2^(1-n)) m(a) against iterated s
std::vector<CheckReport> verify_statements(const ValueLevels& lv, Engine& engine);

// Closure spot checks: for sampled fusible pairs (a, b), a+b and 2a-1 must
// appear in a table enumerated to search_depth_cap.  Absence is reported as
// Inconclusive (a bounded table cannot refute membership), never silently.
CheckReport closure_scan(const ValueLevels& lv,
                         const std::vector<std::pair<Rational, Rational>>& sample,
                         int search_depth_cap, Engine& engine);

}  // namespace fusible
