#pragma once

// Depth-bounded enumeration of fusible values: the independent oracle the
// analytic machinery is checked against.
//
// S_0 = {0};  S_{k+1} = S_k ∪ { fuse(a,b) : a,b ∈ S_k, |a-b| < 1 }.
//
// Each value carries a bitmask of the expression depths observed for it, so
// min_depth (first level reached) and max_depth_observed (deepest expression
// found within the bound) are both exact with respect to the enumeration.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "fusible/rational.hpp"

namespace fusible {

struct LevelEntry {
    Rational value;
    std::uint64_t depth_mask = 0;  // bit t = an expression of depth t exists

    int min_depth() const;
    int max_depth_observed() const;
};

class ValueLevels {
  public:
    int depth_bound() const { return depth_bound_; }
    const std::vector<LevelEntry>& entries() const { return entries_; }

    // Index of v in the sorted table, if present.
    std::optional<std::size_t> index_of(const Rational& v) const;

    friend ValueLevels enumerate_levels(int depth_bound, std::uint64_t value_cap);

  private:
    int depth_bound_ = 0;
    std::vector<LevelEntry> entries_;  // sorted ascending by value
};

// Builds levels up to depth_bound; throws BudgetExceeded(Enumeration) when
// the table would exceed value_cap entries.
ValueLevels enumerate_levels(int depth_bound, std::uint64_t value_cap = 5'000'000);

// Found(min_depth) as an optional; nullopt = not present within the bound.
std::optional<int> membership(const Rational& v, const ValueLevels& lv);

// Next enumerated value after v.  The result is the true successor s(v)
// only under the caller-certified guarantee d(v) <= depth_bound - 1, which
// must be established independently (depth_of_fusible) and passed in.
// Throws Unverifiable without that guarantee, NotPresent when v is not in
// the levels within depth_bound - 1.
Rational successor_in_levels(const Rational& v, const ValueLevels& lv,
                             std::optional<int> certified_depth);

// CSV: header "value,min_depth,max_depth_observed", rows sorted ascending.
void export_levels_csv(const ValueLevels& lv, std::ostream& os);

}  // namespace fusible
