#include "fusible/checks.hpp"

#include <string>
#include <vector>

#include "doctest.h"
#include "fusible/engine.hpp"
#include "fusible/error.hpp"
#include "fusible/levels.hpp"
#include "fusible/rational.hpp"

using namespace fusible;

namespace {

bool has_note(const CheckReport& rep, const std::string& needle) {
    for (const auto& n : rep.notes)
        if (n.find(needle) != std::string::npos) return true;
    return false;
}

const ValueLevels& table6() {
    static ValueLevels lv = enumerate_levels(6);
    return lv;
}

const ValueLevels& table5() {
    static ValueLevels lv = enumerate_levels(5);
    return lv;
}

}  // namespace

TEST_CASE("status names") {
    CHECK(std::string(status_name(CheckStatus::Pass)) == "Pass");
    CHECK(std::string(status_name(CheckStatus::Fail)) == "Fail");
    CHECK(std::string(status_name(CheckStatus::Inconclusive)) == "Inconclusive");
}

TEST_CASE("report fail() records the witness and dominates the status") {
    CheckReport rep;
    rep.name = "scratch";
    CHECK(rep.status == CheckStatus::Pass);
    rep.fail("something concrete");
    CHECK(rep.status == CheckStatus::Fail);
    REQUIRE(rep.witnesses.size() == 1);
    CHECK(rep.witnesses[0] == "something concrete");
    rep.note("a count");
    CHECK(rep.notes == std::vector<std::string>{"a count"});
}

TEST_CASE("counterexample check passes with the expected witnesses") {
    Engine engine;
    CheckReport rep = verify_counterexample(engine);
    CHECK(rep.name == "counterexample");
    CHECK(rep.status == CheckStatus::Pass);
    REQUIRE(rep.witnesses.size() == 4);
    CHECK(rep.witnesses[0] == "simple recursion: m(31/16) = 1/2048");
    CHECK(rep.witnesses[1] == "simple recursion: m(33/16) = 1/2048");
    CHECK(rep.witnesses[2] ==
          "19/16 ~ 3969/2048 = 8449/4096 is a valid fuse, so the true gap at 33/16 is <= "
          "1/4096");
    CHECK(rep.witnesses[3] == "zigzag: m(33/16) = 1/4096 <= 1/4096");
    CHECK(!rep.conjecture_assumed);

    // Cost accounting on a fresh engine is deterministic.
    CHECK(rep.memo_entries == 404);
    CHECK(rep.peak_stack == 11);
    CHECK(rep.loop_iterations == 1106);
}

TEST_CASE("counterexample check fails when fed a perturbed gap") {
    Engine engine;
    CheckReport rep = verify_counterexample(engine, Rational::pow2(-10));
    CHECK(rep.status == CheckStatus::Fail);
    REQUIRE(rep.witnesses.size() == 4);
    CHECK(rep.witnesses[0] == "simple recursion gives m(31/16) = 1/2048, not 1/1024");
    CHECK(rep.witnesses[1] == "simple recursion gives m(33/16) = 1/2048, not 1/1024");
    // The constructed fuse identity holds for any claimed gap; only the
    // recursion-value comparisons flip.
    CHECK(rep.witnesses[2] ==
          "19/16 ~ 1985/1024 = 4225/2048 is a valid fuse, so the true gap at 33/16 is <= "
          "1/2048");
    CHECK(rep.witnesses[3] == "zigzag: m(33/16) = 1/4096 <= 1/2048");
}

TEST_CASE("self-similarity at the base point, band 1") {
    Engine engine;
    CheckReport rep = verify_self_similarity(Rational(0), 1, table6(), engine);
    CHECK(rep.name == "self-similarity(a=0, n=1)");
    CHECK(rep.status == CheckStatus::Pass);
    REQUIRE(rep.notes.size() == 2);
    CHECK(rep.notes[0] == "5 window values fused into the band, 5 band values decomposed back");
    CHECK(rep.notes[1] ==
          "1 window values at the table rim (min depth = bound) not forced forward");
}

TEST_CASE("self-similarity across the whole small grid") {
    Engine engine;
    const Rational bases[] = {Rational(0), Rational(1, 2), Rational(3, 4), Rational(1)};
    for (const Rational& a : bases) {
        for (int n = 1; n <= 3; ++n) {
            CAPTURE(format_rational(a));
            CAPTURE(n);
            CheckReport rep = verify_self_similarity(a, n, table6(), engine);
            CHECK(rep.status == CheckStatus::Pass);
            CHECK(has_note(rep, "window values fused into the band"));
        }
    }
}

TEST_CASE("self-similarity frozen counts at a deeper base") {
    Engine engine;
    CheckReport rep = verify_self_similarity(Rational(1, 2), 1, table6(), engine);
    CHECK(rep.status == CheckStatus::Pass);
    CHECK(rep.notes[0] == "7 window values fused into the band, 7 band values decomposed back");
    CHECK(rep.notes[1] ==
          "4 window values at the table rim (min depth = bound) not forced forward");
}

TEST_CASE("self-similarity is inconclusive off the table or beyond its depth") {
    Engine engine;
    SUBCASE("argument not in the table") {
        CheckReport rep = verify_self_similarity(Rational(17, 16), 1, table6(), engine);
        CHECK(rep.status == CheckStatus::Inconclusive);
        CHECK(has_note(rep, "17/16 is not in the depth-6 table"));
        CHECK(rep.witnesses.empty());
    }
    SUBCASE("band image would exceed the depth bound") {
        CheckReport rep = verify_self_similarity(Rational(23, 16), 1, table5(), engine);
        CHECK(rep.status == CheckStatus::Inconclusive);
        CHECK(has_note(rep, "need depth 7 to cover the band image, table has 5"));
    }
    SUBCASE("band index must be positive") {
        CHECK_THROWS_AS(verify_self_similarity(Rational(0), 0, table6(), engine), OutOfRange);
    }
}

TEST_CASE("cross-validation passes over the frontier with one recorded divergence point") {
    Engine engine;
    CheckReport rep = cross_validate(table5(), Rational(17, 8), engine);
    CHECK(rep.name == "cross-validate(x_max=17/8)");
    CHECK(rep.status == CheckStatus::Pass);
    REQUIRE(rep.witnesses.size() == 1);
    CHECK(rep.witnesses[0] ==
          "first divergence at 33/16: simple recursion 1/2048 vs zigzag 1/4096; ");
    REQUIRE(rep.notes.size() == 4);
    CHECK(rep.notes[0] ==
          "37 values compared across 3 methods, 12 also against the table gap (25 successors "
          "beyond the depth bound), 2 divergence(s)");
    CHECK(rep.notes[1] == "non-fusible spot check 2/5: all methods give 1/10");
    CHECK(rep.notes[2] == "non-fusible spot check 1/3: all methods give 1/6");
    CHECK(rep.notes[3] == "non-fusible spot check 5/8: all methods give 1/8");
}

TEST_CASE("cross-validation below the frontier sees no divergence at all") {
    Engine engine;
    ValueLevels s4 = enumerate_levels(4);
    CheckReport rep = cross_validate(s4, Rational(3, 2), engine);
    CHECK(rep.status == CheckStatus::Pass);
    CHECK(rep.witnesses.empty());
    CHECK(has_note(rep, "0 divergence(s)"));
}

TEST_CASE("statement suite over the depth-6 table") {
    Engine engine;
    std::vector<CheckReport> reps = verify_statements(table6(), engine);
    REQUIRE(reps.size() == 6);

    CHECK(reps[0].name == "fuse-bounds");
    CHECK(reps[0].status == CheckStatus::Pass);
    CHECK(reps[0].notes[0] == "39 valid pairs over 9 values from S_3");

    CHECK(reps[1].name == "gap-halving");
    CHECK(reps[1].status == CheckStatus::Pass);
    CHECK(reps[1].notes[0] ==
          "12 values from S_4 below 3/2; 12 successor gaps certified against the table");

    CHECK(reps[2].name == "depth-exponent");
    CHECK(reps[2].status == CheckStatus::Pass);
    CHECK(reps[2].notes[0] == "677 trees of depth <= 4 enumerated; 543 valid, 134 invalid fuses");

    CHECK(reps[3].name == "depth-forward");
    CHECK(reps[3].status == CheckStatus::Pass);
    CHECK(reps[3].notes[0] == "61 (value, depth) witnesses advanced; 99 at the table rim skipped");

    CHECK(reps[4].name == "depth-backward");
    CHECK(reps[4].status == CheckStatus::Pass);
    CHECK(reps[4].notes[0] == "159 (value, depth) witnesses retreated");

    CHECK(reps[5].name == "successor-closed-form");
    CHECK(reps[5].status == CheckStatus::Pass);
    CHECK(reps[5].notes[0] == "36 (a, n) pairs over S_3, n <= 4");

    for (const auto& r : reps) {
        CAPTURE(r.name);
        CHECK(r.witnesses.empty());
        CHECK(!r.conjecture_assumed);
    }
}

TEST_CASE("gap-halving goes inconclusive when the table is one level too shallow") {
    Engine engine;
    std::vector<CheckReport> reps = verify_statements(table5(), engine);
    REQUIRE(reps.size() == 6);
    CHECK(reps[1].name == "gap-halving");
    CHECK(reps[1].status == CheckStatus::Inconclusive);
    CHECK(reps[1].notes[0] ==
          "12 values from S_4 below 3/2; 11 successor gaps certified against the table");
    CHECK(has_note(reps[1], "table too shallow for the successor of 23/16 (certified depth 5)"));
    // The shortfall is local to the one check; everything else still passes.
    for (std::size_t i : {0u, 2u, 3u, 4u, 5u}) {
        CAPTURE(reps[i].name);
        CHECK(reps[i].status == CheckStatus::Pass);
    }
    // Checks that only read S_3 or the tree inventory report identical counts.
    CHECK(reps[0].notes[0] == "39 valid pairs over 9 values from S_3");
    CHECK(reps[2].notes[0] == "677 trees of depth <= 4 enumerated; 543 valid, 134 invalid fuses");
    CHECK(reps[5].notes[0] == "36 (a, n) pairs over S_3, n <= 4");
}

TEST_CASE("closure scan finds every probed target at depth 8") {
    Engine engine;
    std::vector<std::pair<Rational, Rational>> sample{
        {Rational(1, 2), Rational(3, 4)},
        {Rational(3, 4), Rational(3, 4)},
        {Rational(0), Rational(1, 2)},
    };
    CheckReport rep = closure_scan(table6(), sample, 8, engine);
    CHECK(rep.name == "closure-scan(cap=8)");
    CHECK(rep.status == CheckStatus::Pass);
    REQUIRE(rep.notes.size() == 1);
    CHECK(rep.notes[0] == "7 targets found within depth 8");
}

TEST_CASE("closure scan reports a missing target as inconclusive, not a failure") {
    Engine engine;
    ValueLevels s2 = enumerate_levels(2);
    std::vector<std::pair<Rational, Rational>> sample{{Rational(3, 4), Rational(1)}};
    CheckReport rep = closure_scan(s2, sample, 2, engine);
    CHECK(rep.status == CheckStatus::Inconclusive);
    CHECK(rep.witnesses.empty());
    CHECK(has_note(rep, "2 targets found within depth 2"));
    CHECK(has_note(rep, "3/4 + 1 = 7/4 not found up to depth 2"));
}

TEST_CASE("closure scan flags sample values that are not fusible") {
    Engine engine;
    std::vector<std::pair<Rational, Rational>> sample{{Rational(2, 5), Rational(1, 2)}};
    CheckReport rep = closure_scan(table6(), sample, 6, engine);
    CHECK(has_note(rep, "sample value 2/5 is not in the table"));
    CHECK(rep.status == CheckStatus::Inconclusive);  // 2/5 + 1/2 = 9/10 is not fusible
    CHECK(has_note(rep, "not found up to depth 6"));
}
