#include "fusible/levels.hpp"

#include <algorithm>
#include <bit>
#include <ostream>
#include <unordered_map>

#include "fusible/error.hpp"

namespace fusible {

int LevelEntry::min_depth() const {
    return std::countr_zero(depth_mask);
}

int LevelEntry::max_depth_observed() const {
    return std::bit_width(depth_mask) - 1;
}

std::optional<std::size_t> ValueLevels::index_of(const Rational& v) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), v,
                               [](const LevelEntry& e, const Rational& x) { return e.value < x; });
    if (it == entries_.end() || !(it->value == v)) return std::nullopt;
    return static_cast<std::size_t>(it - entries_.begin());
}

ValueLevels enumerate_levels(int depth_bound, std::uint64_t value_cap) {
    if (depth_bound < 0 || depth_bound > 62)
        throw OutOfRange("depth bound must be in [0, 62]");
    ValueLevels lv;
    lv.depth_bound_ = depth_bound;
    lv.entries_.push_back({Rational(0), 1ull});

    for (int pass = 1; pass <= depth_bound; ++pass) {
        auto& tab = lv.entries_;
        // Members of S_{pass-1}: these are the fuse candidates for this pass.
        // The table is only read during the pair sweep; merging happens after.
        std::vector<std::size_t> snap;
        snap.reserve(tab.size());
        for (std::size_t i = 0; i < tab.size(); ++i)
            if (tab[i].min_depth() <= pass - 1) snap.push_back(i);

        std::unordered_map<Rational, std::uint64_t> obs;
        auto ge_mask = [](int m) { return ~((1ull << m) - 1); };
        for (std::size_t si = 0; si < snap.size(); ++si) {
            const LevelEntry& a = tab[snap[si]];
            int min_a = a.min_depth();
            for (std::size_t sj = si; sj < snap.size(); ++sj) {
                const LevelEntry& b = tab[snap[sj]];
                Rational gap = b.value - a.value;
                if (!(gap < Rational(1))) break;  // window closed: values sorted
                // Depths observable for a~b: max(i, j) + 1 over observed
                // depth pairs, computed as a mask in one step.
                std::uint64_t bits =
                    ((a.depth_mask & ge_mask(b.min_depth())) | (b.depth_mask & ge_mask(min_a)))
                    << 1;
                Rational s = a.value + b.value;
                s.add_int(1);
                obs[s.mul_2exp(-1)] |= bits;
            }
        }

        std::vector<LevelEntry> fresh;
        for (auto& [v, bits] : obs) {
            auto idx = lv.index_of(v);
            if (idx)
                tab[*idx].depth_mask |= bits;
            else
                fresh.push_back({v, bits});
        }
        if (tab.size() + fresh.size() > value_cap) throw BudgetExceeded(BudgetKind::Enumeration);
        tab.insert(tab.end(), std::make_move_iterator(fresh.begin()),
                   std::make_move_iterator(fresh.end()));
        std::sort(tab.begin(), tab.end(),
                  [](const LevelEntry& x, const LevelEntry& y) { return x.value < y.value; });
    }
    return lv;
}

std::optional<int> membership(const Rational& v, const ValueLevels& lv) {
    auto idx = lv.index_of(v);
    if (!idx) return std::nullopt;
    return lv.entries()[*idx].min_depth();
}

Rational successor_in_levels(const Rational& v, const ValueLevels& lv,
                             std::optional<int> certified_depth) {
    int d = lv.depth_bound();
    if (!certified_depth || *certified_depth > d - 1)
        throw Unverifiable("need a certified depth of at most " + std::to_string(d - 1) +
                           " for the successor to be complete at this bound");
    auto idx = lv.index_of(v);
    if (!idx || lv.entries()[*idx].min_depth() > d - 1)
        throw NotPresent(format_rational(v) + " not in levels at depth " + std::to_string(d - 1));
    if (*idx + 1 >= lv.entries().size())
        throw NotPresent("no successor of " + format_rational(v) + " in the table");
    return lv.entries()[*idx + 1].value;
}

void export_levels_csv(const ValueLevels& lv, std::ostream& os) {
    os << "value,min_depth,max_depth_observed\n";
    for (const auto& e : lv.entries())
        os << format_rational(e.value) << ',' << e.min_depth() << ',' << e.max_depth_observed()
           << '\n';
}

}  // namespace fusible
