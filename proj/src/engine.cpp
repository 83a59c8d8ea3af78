#include "fusible/engine.hpp"

#include <algorithm>
#include <cassert>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fusible/error.hpp"

namespace fusible {

const char* method_name(Method m) {
    switch (m) {
        case Method::Erickson: return "erickson";
        case Method::Conjecture: return "conjecture";
        case Method::Zigzag: return "zigzag";
    }
    return "?";
}

std::optional<Method> method_from_name(std::string_view name) {
    if (name == "erickson") return Method::Erickson;
    if (name == "conjecture") return Method::Conjecture;
    if (name == "zigzag") return Method::Zigzag;
    return std::nullopt;
}

namespace {

// One suspended evaluation.  Chain frames (Erickson/Conjecture) use
// x0/x/halvings; zigzag frames use x0/v/y/d.  `phase` says which child
// result the frame is waiting for:
//   chain:  0 = at position x, 1 = waiting for m(x-1)
//   zigzag: 0 = start, 1 = waiting for m(x0-1), 2 = waiting for initial m(y),
//           3 = loop head (owns no pending child), 4 = waiting for m(v-y),
//           5 = waiting for m(y after step)
struct Frame {
    Method method;
    int phase = 0;
    std::uint64_t halvings = 0;
    Rational x0;  // queried argument; memo key on completion
    Rational x;
    Rational v, y, d;
};

}  // namespace

std::uint64_t Engine::total_memo_entries() const {
    return memo_[0].size() + memo_[1].size() + memo_[2].size();
}

const Rational* Engine::memo_find(Method method, const Rational& x) {
    MemoMap& map = memo_[index(method)];
    auto it = map.find(x);
    if (it == map.end()) return nullptr;
    if (!it->second.verified) {
        if (verifying_) return nullptr;  // hidden while being (re)established
        verify_entry(method, x);
        it = map.find(x);
        assert(it != map.end() && it->second.verified);
    }
    return &it->second.m;
}

void Engine::memo_insert(Method method, const Rational& x, const Rational& m) {
    MemoMap& map = memo_[index(method)];
    auto it = map.find(x);
    if (it != map.end()) {
        if (!it->second.verified) {
            // A fresh computation meeting a loaded cache entry is the
            // verification moment: any disagreement is a hard error.
            if (!(it->second.m == m))
                throw CacheMismatch(std::string(method_name(method)) + " m(" +
                                    format_rational(x) + "): cached " +
                                    format_rational(it->second.m) + ", recomputed " +
                                    format_rational(m));
            it->second.verified = true;
        }
        return;
    }
    if (total_memo_entries() >= budgets_.memo_entries) throw BudgetExceeded(BudgetKind::Memo);
    map.emplace(x, MemoVal{m, true});
    stats_[index(method)].entries = map.size();
}

void Engine::verify_entry(Method method, const Rational& x) {
    assert(!verifying_);
    verifying_ = true;
    struct Reset {
        bool& flag;
        ~Reset() { flag = false; }
    } reset{verifying_};
    // Recomputing hides every unverified entry, so the result is independent
    // of the cache file; run() itself confronts it with the cached value
    // through memo_insert and throws CacheMismatch on disagreement.
    run(x, method);
}

Rational Engine::run(const Rational& x, Method method) {
    struct RunGuard {
        Engine& e;
        std::uint64_t saved_depth;
        bool outermost;
        explicit RunGuard(Engine& eng)
            : e(eng), saved_depth(eng.abstract_depth_), outermost(!eng.in_run_) {
            e.in_run_ = true;
            if (outermost) e.loop_iters_ = 0;
        }
        ~RunGuard() {
            e.abstract_depth_ = saved_depth;
            if (outermost) e.in_run_ = false;
        }
    } guard(*this);

    EvalStats& st = stats_[index(method)];

    auto bump_depth = [&] {
        if (abstract_depth_ >= budgets_.stack_frames) throw BudgetExceeded(BudgetKind::Stack);
        ++abstract_depth_;
        if (abstract_depth_ > st.peak_stack_depth) st.peak_stack_depth = abstract_depth_;
    };

    std::vector<Frame> stack;
    std::optional<Rational> ret;

    auto push = [&](const Rational& arg) {
        bump_depth();
        Frame f;
        f.method = method;
        f.x0 = arg;
        if (method != Method::Zigzag) f.x = arg;
        stack.push_back(std::move(f));
    };

    auto deliver = [&](Rational value) {
        const Frame& f = stack.back();
        abstract_depth_ -= 1 + (f.method == Method::Zigzag ? 0 : f.halvings);
        ret = std::move(value);
        stack.pop_back();
    };

    push(x);
    while (!stack.empty()) {
        Frame& f = stack.back();

        if (method != Method::Zigzag) {
            if (f.phase == 0) {
                if (f.x.is_negative()) {
                    Rational r = (-f.x).mul_2exp(-static_cast<long>(f.halvings));
                    if (!f.x0.is_negative()) memo_insert(method, f.x0, r);
                    deliver(std::move(r));
                    continue;
                }
                if (const Rational* hit = memo_find(method, f.x)) {
                    Rational r = hit->mul_2exp(-static_cast<long>(f.halvings));
                    if (f.halvings > 0) memo_insert(method, f.x0, r);
                    deliver(std::move(r));
                    continue;
                }
                f.phase = 1;
                Rational arg = f.x;
                arg.add_int(-1);
                push(arg);  // invalidates f
                continue;
            }
            // phase 1: ret = m(x - 1); take one chain step x -> x'.
            assert(ret.has_value());
            Rational a = std::move(*ret);
            ret.reset();
            if (method == Method::Erickson) {
                f.x -= a;
            } else {
                Rational sprev = f.x + a;
                sprev.add_int(-1);  // s(x-1) = (x-1) + m(x-1)
                f.x -= a;
                f.x -= unit_over_denominator(sprev);
                f.x += Rational::pow2(ceil_log2(a));
            }
            f.halvings += 1;
            bump_depth();  // the chain step occupies a slot of the abstract recursion
            f.phase = 0;
            continue;
        }

        // Zigzag reference scan.
        switch (f.phase) {
            case 0: {
                if (f.x0.is_negative()) {
                    deliver(-f.x0);
                    continue;
                }
                if (const Rational* hit = memo_find(method, f.x0)) {
                    deliver(*hit);
                    continue;
                }
                f.v = f.x0.mul_2exp(1);
                f.v.add_int(-1);  // v = 2x - 1
                f.phase = 1;
                Rational arg = f.x0;
                arg.add_int(-1);
                push(arg);
                continue;
            }
            case 1: {  // ret = m(x0 - 1); y = v - p(x0 - 1)
                assert(ret.has_value());
                Rational p = f.x0 + *ret;
                ret.reset();
                p.add_int(-1);
                f.y = f.v - p;
                f.phase = 2;
                Rational arg = f.y;
                push(arg);
                continue;
            }
            case 2: {  // ret = m(y); initial gap candidate
                assert(ret.has_value());
                f.d = std::move(*ret);
                ret.reset();
                f.y += f.d;
                f.phase = 3;
                continue;
            }
            case 3: {  // loop head
                if (loop_iters_ >= budgets_.loop_iterations)
                    throw BudgetExceeded(BudgetKind::Iterations);
                ++loop_iters_;
                ++st.loop_iterations;
                f.y -= unit_over_denominator(f.y);
                if (!(f.y.mul_2exp(1) > f.v)) {  // scan crossed the midpoint: done
                    Rational r = f.d.mul_2exp(-1);
                    memo_insert(method, f.x0, r);
                    deliver(std::move(r));
                    continue;
                }
                f.phase = 4;
                Rational arg = f.v - f.y;
                push(arg);
                continue;
            }
            case 4: {  // ret = m(v - y); y := v - p(v - y) = y - ret
                assert(ret.has_value());
                f.y -= *ret;
                ret.reset();
                f.phase = 5;
                Rational arg = f.y;
                push(arg);
                continue;
            }
            case 5: {  // ret = e = m(y); keep the smaller gap, step past it
                assert(ret.has_value());
                if (*ret < f.d) f.d = *ret;
                f.y += *ret;
                ret.reset();
                f.phase = 3;
                continue;
            }
            default: assert(false);
        }
    }

    assert(ret.has_value());
    return std::move(*ret);
}

Rational Engine::m_eval(const Rational& x, Method method) { return run(x, method); }

Rational Engine::s_eval(const Rational& x, Method method) { return x + m_eval(x, method); }

Rational Engine::successor_pow(const Rational& a, int n, Method method) {
    if (n < 0) throw OutOfRange("successor iteration count must be >= 0");
    Rational r = a;
    for (int i = 0; i < n; ++i) r = s_eval(r, method);
    return r;
}

long Engine::depth_of_fusible(const Rational& a) {
    if (a.is_negative()) throw NotFusible(format_rational(a) + " is negative");
    Rational m = m_eval(a, Method::Zigzag);
    auto k = m.as_pow2();
    if (!k)
        throw NotPowerOfTwo("gap at " + format_rational(a) + " is " + format_rational(m) +
                            ", so the argument is not fusible");
    return -*k - 1;
}

std::vector<std::pair<int, long>> Engine::table1(int n_max, Method method) {
    if (n_max < 1) throw OutOfRange("table rows require n_max >= 1");
    std::vector<std::pair<int, long>> rows;
    rows.reserve(static_cast<std::size_t>(n_max));
    for (int n = 1; n <= n_max; ++n) {
        Rational x = Rational(3) - Rational::pow2(-n);
        Rational m = m_eval(x, method);
        auto k = m.as_pow2();
        if (!k)
            throw NotPowerOfTwo("gap at " + format_rational(x) + " is " + format_rational(m));
        rows.emplace_back(n, -*k);
    }
    return rows;
}

Engine::DupResult Engine::dup_count(const Rational& a, const ValueLevels& lv) {
    long da = depth_of_fusible(a);
    if (lv.depth_bound() < da - 1)
        throw InsufficientDepth("pairs fusing to " + format_rational(a) +
                                " are only complete in levels of depth >= " +
                                std::to_string(da - 1) + ", table has depth " +
                                std::to_string(lv.depth_bound()));
    // Every pair b ~ c = a embeds in a presentation of a, and no presentation
    // is deeper than d(a), so both members appear by level d(a) - 1 and the
    // table scan below is exhaustive.
    DupResult res;
    Rational lo = a;
    lo.add_int(-1);  // b > a - 1 (strict: |b - c| < 1 must be strict)
    const Rational hi = a - Rational(1, 2);  // b <= a - 1/2 keeps b <= c
    Rational target = a.mul_2exp(1);
    target.add_int(-1);  // b + c = 2a - 1
    const auto& es = lv.entries();
    auto it = std::upper_bound(es.begin(), es.end(), lo,
                               [](const Rational& v, const LevelEntry& e) { return v < e.value; });
    for (; it != es.end() && it->value <= hi; ++it) {
        Rational c = target - it->value;
        if (lv.index_of(c)) {
            res.count += 1;
            res.witnesses.emplace_back(it->value, c);
        }
    }
    return res;
}

}  // namespace fusible
