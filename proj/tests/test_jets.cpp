#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "drq/jets.hpp"
#include "fixtures.hpp"

using namespace drq;
using namespace drq::fixtures;

TEST_CASE("jet arithmetic and parsing") {
    auto alg = heisenberg();
    GJet f = parse_jet("x1^2*x2 + (1/l1)*x3", alg, 4);
    CHECK(f.coeff({2, 1, 0}) == Scalar(1, 1));
    CHECK(f.coeff({0, 0, 1}) == parse_scalar("1/l1", 1));
    CHECK(f.dx(0).coeff({1, 1, 0}) == Scalar(1, 2));
    CHECK(f.dlambda(0).coeff({0, 0, 1}) == parse_scalar("-1/l1^2", 1));
    /* truncation at the cap */
    GJet g = parse_jet("x1^3", alg, 4);
    CHECK((g * g).is_zero());
    CHECK_THROWS_AS(parse_jet("1/x1", alg, 4), ParseError);
    CHECK_THROWS_AS(parse_jet("x4", alg, 4), ParseError);
}

TEST_CASE("abelian algebra: invariant fields are coordinate derivatives") {
    auto alg = make_fix_a().algebra;
    auto frame = left_invariant_fields(alg, 5);
    GJet f = parse_jet("x1^2*x3 + x2", alg, 5);
    for (int a = 0; a < 3; ++a) CHECK(frame->apply(a, f) == f.dx(a));
    CHECK(frame->bracket_residual_zero(4));
}

TEST_CASE("Heisenberg: dexp series terminates at degree 1 and brackets close") {
    auto alg = heisenberg();
    auto frame = left_invariant_fields(alg, 6);
    /* matrix entries have x-degree ≤ 1 because ad² = 0 */
    for (int b = 0; b < 3; ++b)
        for (int a = 0; a < 3; ++a)
            for (const auto& [m, c] : frame->matrix(b, a).terms()) CHECK(mono_degree(m) <= 1);
    /* ē₁ = ∂₁ + degree-1 correction towards ∂_h */
    GJet x2 = GJet::coordinate(alg, 6, 2);
    CHECK(frame->apply(1, x2).is_zero());
    GJet xh = GJet::coordinate(alg, 6, 0);
    GJet corr = frame->apply(1, xh);  // the x-linear correction coefficient
    CHECK(!corr.is_zero());
    CHECK(frame->bracket_residual_zero(5));

    /* [ē₁,ē₂] = ē_h on a sample jet */
    GJet f = parse_jet("x1*x2*x3 + x1^2", alg, 6);
    GJet lhs = frame->apply(1, frame->apply(2, f)) - frame->apply(2, frame->apply(1, f));
    CHECK(GJet::equal_mod_degree(lhs, frame->apply(0, f), 5));
}

TEST_CASE("non-nilpotent structure: bracket closure still holds to the cap") {
    auto alg = std::make_shared<LieAlgebra>(2, 1, std::vector<std::string>{"h", "e"});
    alg->set_bracket(0, 1, 1, Scalar(1, 1));  // [h,e] = e
    auto frame = left_invariant_fields(alg, 5);
    CHECK(frame->bracket_residual_zero(4));
    /* ē_h picks up genuine higher-degree dexp corrections */
    bool higher = false;
    for (int b = 0; b < 2; ++b)
        for (int a = 0; a < 2; ++a)
            for (const auto& [m, c] : frame->matrix(b, a).terms())
                if (mono_degree(m) >= 2) higher = true;
    CHECK(higher);
}

TEST_CASE("invariant fields kill λ-only jets") {
    auto alg = heisenberg();
    auto frame = left_invariant_fields(alg, 4);
    GJet f(alg, 4, parse_scalar("l1^2/(1+l1)", 1));
    for (int a = 0; a < 3; ++a) CHECK(frame->apply(a, f).is_zero());
}
