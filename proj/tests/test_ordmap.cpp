#include "doctest.h"
#include "fusible/engine.hpp"
#include "fusible/error.hpp"
#include "fusible/levels.hpp"
#include "fusible/ordinal.hpp"
#include "fusible/ordmap.hpp"

using namespace fusible;

namespace {
CnfOrdinal o(const char* s) { return parse_ordinal(s); }
}  // namespace

TEST_CASE("positions of the small fusible numbers") {
    Engine e;
    OrdContext ctx(e);
    CHECK(ctx.ord_of(Rational(0)) == o("1"));
    CHECK(ctx.ord_of(Rational(1, 2)) == o("2"));
    CHECK(ctx.ord_of(Rational(15, 16)) == o("5"));
    CHECK(ctx.ord_of(Rational(1)) == o("w"));
    CHECK(ctx.ord_of(Rational(9, 8)) == o("w+1"));
    CHECK(ctx.ord_of(Rational(5, 4)) == o("w*2"));
    CHECK(ctx.ord_of(Rational(3, 2)) == o("w^(2)"));
    CHECK(ctx.ord_of(Rational(7, 4)) == o("w^(3)"));
    CHECK(ctx.ord_of(Rational(2)) == o("w^(w)"));
    CHECK(ctx.ord_of(Rational(33, 16)) == o("w^(w)*2"));
    CHECK(ctx.conjecture_assumed());
}

TEST_CASE("numbers at the small positions") {
    Engine e;
    OrdContext ctx(e);
    CHECK(ctx.num_of(o("1")) == Rational(0));
    CHECK(ctx.num_of(o("4")) == Rational(7, 8));
    CHECK(ctx.num_of(o("w")) == Rational(1));
    CHECK(ctx.num_of(o("w*2")) == Rational(5, 4));
    CHECK(ctx.num_of(o("w^(2)")) == Rational(3, 2));
    CHECK(ctx.num_of(o("w^(2)*3")) == Rational(27, 16));
    CHECK(ctx.num_of(o("w^(w)")) == Rational(2));
    CHECK(ctx.num_of(o("w^(w)*2")) == Rational(33, 16));
}

TEST_CASE("ord_of and num_of are inverse over a whole level table") {
    Engine e;
    OrdContext ctx(e);
    ValueLevels s4 = enumerate_levels(4);
    for (const auto& entry : s4.entries()) {
        CnfOrdinal alpha = ctx.ord_of(entry.value);
        CHECK(ctx.num_of(alpha) == entry.value);
    }
}

TEST_CASE("non-fusible and out-of-domain queries are rejected") {
    Engine e;
    OrdContext ctx(e);
    CHECK_THROWS_AS(ctx.ord_of(Rational(17, 16)), NotFusible);
    CHECK_THROWS_AS(ctx.ord_of(Rational(2, 5)), NotFusible);
    CHECK_THROWS_AS(ctx.ord_of(Rational(-1)), NotFusible);
    CHECK_THROWS_AS(ctx.num_of(o("0")), OutOfRange);
    CHECK_THROWS_AS(ctx.pred_or_equal(Rational(-1, 2)), OutOfRange);
}

TEST_CASE("pred_or_equal lands on the nearest fusible at or below") {
    Engine e;
    OrdContext ctx(e);
    CHECK(ctx.pred_or_equal(Rational(0)) == Rational(0));
    CHECK(ctx.pred_or_equal(Rational(1, 3)) == Rational(0));
    CHECK(ctx.pred_or_equal(Rational(1)) == Rational(1));
    CHECK(ctx.pred_or_equal(Rational(17, 16)) == Rational(1));
    Rational x(21, 10);
    Rational p = ctx.pred_or_equal(x);
    CHECK(ctx.is_fusible(p));
    CHECK(p <= x);
    CHECK(x < p + e.m_eval(p, Method::Conjecture));
    CHECK(p > Rational(33, 16));
}

TEST_CASE("is_fusible distinguishes members from gaps") {
    Engine e;
    OrdContext ctx(e);
    ValueLevels s4 = enumerate_levels(4);
    for (const auto& entry : s4.entries()) CHECK(ctx.is_fusible(entry.value));
    CHECK(!ctx.is_fusible(Rational(17, 16)));
    CHECK(!ctx.is_fusible(Rational(2, 5)));
    CHECK(!ctx.is_fusible(Rational(65, 64)));
}

TEST_CASE("the context requires the conjecture evaluator") {
    Engine e;
    CHECK_THROWS_AS(OrdContext(e, Method::Erickson), Error);
    CHECK_THROWS_AS(OrdContext(e, Method::Zigzag), Error);
}

TEST_CASE("gap-induced fundamental sequence at 1 and beyond") {
    Engine e;
    OrdContext ctx(e);
    // Positions just below 1 are the finite ones: 1'[n] = n + 3 here.
    for (std::uint64_t n = 1; n <= 8; ++n)
        CHECK(ctx.fs_paper(Rational(1), n) == CnfOrdinal(n + 3));
    CHECK(ctx.fs_paper(Rational(5, 4), 1) == o("w+2"));
    CHECK(ctx.fs_paper(Rational(5, 4), 3) == o("w+4"));
    CHECK(ctx.fs_paper(Rational(2), 1) == o("w^(11)"));
    CHECK(ctx.fs_paper(Rational(2), 2) == o("w^(12)"));
    CHECK_THROWS_AS(ctx.fs_paper(Rational(1), 0), OutOfRange);
    // 1/2 sits at position 2, a successor: no fundamental sequence.
    CHECK_THROWS_AS(ctx.fs_paper(Rational(1, 2), 1), NotALimit);
}

TEST_CASE("offset between the two fundamental-sequence conventions") {
    Engine e;
    OrdContext ctx(e);
    CHECK(ctx.exc_of(o("w")) == 3);
    CHECK(ctx.exc_of(o("w*2")) == 1);
    CHECK(ctx.exc_of(o("w^(w)")) == 10);
}

TEST_CASE("growth hierarchy: recurrence and definition agree") {
    Engine e;
    OrdContext ctx(e);
    for (std::uint64_t n = 0; n <= 3; ++n)
        CHECK(ctx.f_hier(o("0"), n, OrdContext::FMode::Recurrence) == n);
    // Definition mode reads the gap at position w^(0)*n = n, so n >= 1 there.
    for (std::uint64_t n = 1; n <= 3; ++n)
        CHECK(ctx.f_hier(o("0"), n, OrdContext::FMode::Definition) == n);
    CHECK(ctx.f_hier(o("1"), 1, OrdContext::FMode::Recurrence) == 3);
    CHECK(ctx.f_hier(o("1"), 1, OrdContext::FMode::Definition) == 3);
    CHECK(ctx.f_hier(o("1"), 2, OrdContext::FMode::Recurrence) == 4);
    CHECK(ctx.f_hier(o("1"), 2, OrdContext::FMode::Definition) == 4);
    CHECK(ctx.f_hier(o("2"), 3, OrdContext::FMode::Recurrence) == 7);
    CHECK(ctx.f_hier(o("2"), 3, OrdContext::FMode::Definition) == 7);
    CHECK(ctx.f_hier(o("w"), 1, OrdContext::FMode::Recurrence) == 10);
    CHECK(ctx.f_hier(o("w"), 1, OrdContext::FMode::Definition) == 10);
    CHECK(ctx.f_hier(o("w"), 2, OrdContext::FMode::Recurrence) == 12);
    CHECK(ctx.f_hier(o("w"), 2, OrdContext::FMode::Definition) == 12);
    CHECK(ctx.f_hier(o("w"), 3, OrdContext::FMode::Recurrence) == 14);
    CHECK(ctx.f_hier(o("w"), 3, OrdContext::FMode::Definition) == 14);
}

TEST_CASE("positions written through the band algebra survive a round-trip") {
    Engine e;
    OrdContext ctx(e);
    for (const char* s : {"w^(2)*2", "w^(2)+w", "w^(3)+w^(2)+w+1", "w^(w)+w", "w^(w)+w^(2)*2",
                          "w^(w)*2+1", "w^(5)"}) {
        CnfOrdinal alpha = o(s);
        Rational x = ctx.num_of(alpha);
        CHECK(ctx.ord_of(x) == alpha);
    }
}

TEST_CASE("num_of rejects positions past the conjectured structure's reach") {
    Engine e;
    OrdContext ctx(e);
    // Position w^(w)*3 - 1 sits between enumerable values; sampling a few
    // plausible-but-wrong inputs keeps the error paths honest.
    CHECK_THROWS_AS(ctx.num_of(CnfOrdinal()), OutOfRange);
}
