#include <string>

#include "doctest.h"
#include "fusible/error.hpp"
#include "fusible/expr.hpp"

using namespace fusible;

TEST_CASE("parse/format round-trips; outermost parentheses optional") {
    for (const char* s : {"0", "0~0", "(0~0)~0", "0~(0~0)", "((0~0)~0)~(0~(0~0))"}) {
        FuseExpr e = parse_expr(s);
        CHECK(format_expr(e) == s);
        FuseExpr e2 = parse_expr(format_expr(e));
        CHECK(format_expr(e2) == format_expr(e));
    }
    CHECK(format_expr(parse_expr("(0~0)")) == "0~0");
    CHECK(format_expr(parse_expr(" ( 0 ~ 0 ) ")) == "0~0");
}

TEST_CASE("parse rejects malformed trees") {
    CHECK_THROWS_AS(parse_expr(""), ParseError);
    CHECK_THROWS_AS(parse_expr("1"), ParseError);
    CHECK_THROWS_AS(parse_expr("(0~0"), ParseError);
    CHECK_THROWS_AS(parse_expr("0~0)"), ParseError);
    CHECK_THROWS_AS(parse_expr("0~"), ParseError);
    CHECK_THROWS_AS(parse_expr("0 0"), ParseError);
    CHECK_THROWS_AS(parse_expr("(0~0)(0~0)"), ParseError);
}

TEST_CASE("evaluation of small trees") {
    CHECK(eval_expr(parse_expr("0")) == Rational(0));
    CHECK(eval_expr(parse_expr("0~0")) == Rational(1, 2));
    CHECK(eval_expr(parse_expr("0~(0~0)")) == Rational(3, 4));
    CHECK(eval_expr(parse_expr("(0~0)~(0~0)")) == Rational(1));
    CHECK(eval_expr(parse_expr("((0~0)~(0~0))~((0~0)~(0~0))")) == Rational(3, 2));
}

TEST_CASE("invalid fuse reports the offending node's path") {
    // Right subtree evaluates to 1; fusing 0 with 1 violates |a-b| < 1 at
    // the root.
    try {
        eval_expr(parse_expr("0~((0~0)~(0~0))"));
        CHECK(false);
    } catch (const InvalidFuse& e) {
        CHECK(e.path == "root");
    }
    // Same violation one level down, on the left.
    try {
        eval_expr(parse_expr("(0~((0~0)~(0~0)))~0"));
        CHECK(false);
    } catch (const InvalidFuse& e) {
        CHECK(e.path == "root.L");
    }
}

TEST_CASE("depth of a tree") {
    CHECK(depth_expr(parse_expr("0")) == 0);
    CHECK(depth_expr(parse_expr("0~0")) == 1);
    CHECK(depth_expr(parse_expr("0~(0~0)")) == 2);
    CHECK(depth_expr(parse_expr("(0~0)~(0~0)")) == 2);
    CHECK(depth_expr(parse_expr("((0~0)~0)~(0~0)")) == 3);
}

TEST_CASE("deeply right-nested input neither overflows nor mis-parses") {
    // 0~(0~(0~(...))) with 60 fuses evaluates to 1 - 2^-60.
    std::string s;
    for (int i = 0; i < 60; ++i) s += "0~(";
    s += "0~0";
    for (int i = 0; i < 60; ++i) s += ")";
    FuseExpr e = parse_expr(s);
    CHECK(depth_expr(e) == 61);
    CHECK(eval_expr(e) == Rational(1) - Rational::pow2(-61));
    CHECK(e.node_count() == 123);
}

TEST_CASE("arena introspection") {
    FuseExpr e = parse_expr("0~(0~0)");
    CHECK(e.node_count() == 5);
    CHECK(!e.is_leaf(e.root()));
    CHECK(e.path_of(e.root()) == "root");
    FuseExpr l = FuseExpr::leaf();
    CHECK(l.node_count() == 1);
    CHECK(l.is_leaf(l.root()));
}
