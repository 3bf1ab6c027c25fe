#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "drq/expr.hpp"
#include "fixtures.hpp"

using namespace drq;

TEST_CASE("parse: literal building blocks") {
    Scalar s = parse_scalar("1/l1", 1);
    CHECK(s.num() == Poly::one(1));
    CHECK(s.den() == Poly::variable(1, 0));

    CHECK(parse_scalar("(l1^2+1)/(l1^2+1)", 1).is_one());
    CHECK(parse_scalar("0", 1).is_zero());
    CHECK(parse_scalar("i*i", 1) == Scalar(1, -1));
}

TEST_CASE("parse: partial fractions recombine") {
    Scalar s = parse_scalar("1/(1+l1) + 1/(1-l1)", 1);
    Scalar expect = parse_scalar("2/(1-l1^2)", 1);
    CHECK(s == expect);
}

TEST_CASE("parse: errors carry positions") {
    CHECK_THROWS_AS(parse_scalar("1/(l1-l1)", 1), ParseError);
    CHECK_THROWS_AS(parse_scalar("l2", 1), ParseError);
    CHECK_THROWS_AS(parse_scalar("1+", 1), ParseError);
    CHECK_THROWS_AS(parse_scalar("x1", 1), ParseError);
    try {
        parse_scalar("1 + (2*", 1);
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.pos == 7);
    }
}

TEST_CASE("diff: power rule, constants, quotients") {
    CHECK(parse_scalar("1/l1", 1).diff(0) == parse_scalar("-1/l1^2", 1));
    CHECK(parse_scalar("5", 1).diff(0).is_zero());
    CHECK(parse_scalar("l1^2/(1+l1)", 1).diff(0) == parse_scalar("(l1^2+2*l1)/(1+l1)^2", 1));
}

TEST_CASE("field axioms on random canonical forms") {
    fixtures::Rng rng;
    for (int t = 0; t < 40; ++t) {
        Scalar a = rng.scalar(2, true), b = rng.scalar(2, true), c = rng.scalar(2, true);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * (b + c) == a * b + a * c);
        if (!a.is_zero()) CHECK((a * a.inv()).is_one());
    }
}

TEST_CASE("Leibniz rule on random products") {
    fixtures::Rng rng;
    for (int t = 0; t < 40; ++t) {
        Scalar a = rng.scalar(2, true), b = rng.scalar(2, true);
        CHECK((a * b).diff(0) == a.diff(0) * b + b.diff(0) * a);
        CHECK((a * b).diff(1) == a.diff(1) * b + b.diff(1) * a);
    }
}

TEST_CASE("print/parse round trip is the identity on canonical forms") {
    fixtures::Rng rng;
    for (int t = 0; t < 40; ++t) {
        Scalar a = rng.scalar(2, true);
        CHECK(parse_scalar(a.str(), 2) == a);
    }
    Scalar g = parse_scalar("(3+2*i)*l1/(l1^2-i)", 1);
    CHECK(parse_scalar(g.str(), 1) == g);
}

TEST_CASE("evaluation and poles") {
    Scalar s = parse_scalar("1/l1", 1);
    CHECK(s.eval({GaussianRational(2)}) == GaussianRational(mpq_class(1, 2)));
    CHECK_THROWS_AS(s.eval({GaussianRational(0)}), EvalPole);
}

TEST_CASE("multivariate gcd cancellation") {
    Scalar s = parse_scalar("(l1^2-l2^2)/(l1-l2)", 2);
    CHECK(s == parse_scalar("l1+l2", 2));
    Scalar t = parse_scalar("(l1*l2+l1)/(l2+1)", 2);
    CHECK(t == parse_scalar("l1", 2));
}
