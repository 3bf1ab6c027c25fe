#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "drq/quantize.hpp"
#include "fixtures.hpp"

using namespace drq;
using namespace drq::fixtures;

namespace {

GJet random_jet(Rng& rng, const AlgebraPtr& alg, int cap, int maxdeg, bool lambda_free = false) {
    GJet j(alg, cap);
    int n = alg->dim();
    for (int t = 0; t < 3; ++t) {
        Mono m(n, 0);
        int budget = static_cast<int>(rng.gen() % (maxdeg + 1));
        for (int b = 0; b < budget; ++b) m[rng.gen() % n] += 1;
        j.add_term(m, lambda_free ? Scalar(alg->nvars(), rng.small()) : rng.scalar(alg->nvars(), true));
    }
    return j;
}

}  // namespace

TEST_CASE("pbw straightening and Hopf structure") {
    auto alg = heisenberg();
    /* e₂·e₁ = e₁e₂ − h */
    ExpVec e1{0, 1, 0}, e2{0, 0, 1};
    UEAT p = pbw_mul_mono(alg, e2, e1);
    CHECK(p.terms().size() == 2);
    CHECK(p.terms().at({0, {ExpVec{0, 1, 1}}}) == Scalar(1, 1));
    CHECK(p.terms().at({0, {ExpVec{1, 0, 0}}}) == Scalar(1, -1));

    /* Δ is primitive on generators and multiplicative; ε kills generators */
    UEAT g = UEAT::generator(alg, 1, 2, 0, 1);
    UEAT dg = g.coproduct_slot(0);
    CHECK(dg.terms().size() == 2);
    UEAT counit_test = UEAT::unit(alg, 1, 2) + UEAT::generator(alg, 1, 2, 0, 1) * UEAT::generator(alg, 1, 2, 0, 2).scaled(Scalar(1, 3));
    UEAT eps = counit_test.counit_slot(0);
    CHECK(eps.terms().size() == 1);
    CHECK(eps.terms().begin()->second == Scalar(1, 1));

    /* (ε⊗id)Δ = id on random-ish elements */
    Rng rng;
    for (int t = 0; t < 5; ++t) {
        UEAT u(alg, 1, 2);
        for (int reps = 0; reps < 3; ++reps) {
            ExpVec m(3, 0);
            for (int b = 0; b < 3; ++b) m[rng.gen() % 3] += rng.gen() % 2;
            u.add_term(static_cast<int>(rng.gen() % 2), {m}, rng.scalar(1, true));
        }
        CHECK(u.coproduct_slot(0).counit_slot(0) == u);
    }

    /* associativity of the straightened product */
    for (int t = 0; t < 5; ++t) {
        auto rnd = [&] {
            UEAT u(alg, 1, 0);
            ExpVec m(3, 0);
            for (int b = 0; b < 3; ++b) m[rng.gen() % 3] += rng.gen() % 2;
            u.add_term(0, {m}, rng.scalar(1, false));
            return u;
        };
        UEAT a = rnd(), b = rnd(), c = rnd();
        CHECK((a * b) * c == a * (b * c));
    }
}

TEST_CASE("theta operator basics") {
    auto alg = heisenberg();
    auto fields = left_invariant_fields(alg, 6);

    /* λ-only pairs multiply pointwise: every θ-leg kills one side */
    GJet f(alg, 6, parse_scalar("l1^2/(1+l1)", 1));
    GJet g(alg, 6, parse_scalar("1/l1", 1));
    JetSeries fg = theta_apply(*fields, f, g, 3);
    CHECK(fg.size() == 1);
    CHECK(fg.at(0) == f * g);

    /* f(λ), g(x): Θ(f,g) = Σ (−ħ/2)^k (1/k!) ∂^k f · ē_h^k g */
    GJet gx = parse_jet("x1^2*x2 + x3", alg, 6);
    GJet fl(alg, 6, parse_scalar("l1^3", 1));
    JetSeries mixed = theta_apply(*fields, fl, gx, 3);
    Scalar half = Scalar(1, 1) / Scalar(1, 2);
    GJet expect1 = fields->apply(0, gx).scaled(-half * parse_scalar("3*l1^2", 1));
    CHECK(GJet::equal_mod_degree(mixed.at(1), expect1, 6));
    /* and the opposite order picks +ħ/2 */
    JetSeries mixed2 = theta_apply(*fields, gx, fl, 3);
    CHECK(GJet::equal_mod_degree(mixed2.at(1), -expect1, 6));

    /* cocycle identity on random jet triples */
    Rng rng;
    for (int t = 0; t < 4; ++t) {
        GJet a = random_jet(rng, alg, 6, 2), b = random_jet(rng, alg, 6, 2),
             c = random_jet(rng, alg, 6, 2);
        JetSeries lhs = theta_cocycle_left(*fields, a, b, c, 2);
        JetSeries rhs = theta_cocycle_right(*fields, a, b, c, 2);
        CHECK(jet_series_zero(jet_series_sub(lhs, rhs, 2)));
    }
}

TEST_CASE("flat engine: star equals the invariant Moyal product and F = exp(ħ/2 r)") {
    StarEngine engine = StarEngine::build(make_fix_a(), 2);
    auto alg = engine.r.algebra;

    CHECK(engine.data.gamma.is_zero());

    UEAT f = extract_f(engine);
    /* F = exp((ħ/2)(e₁⊗e₂ − e₂⊗e₁)) mod ħ³ */
    UEAT t(alg, 2, 2);
    Scalar half = Scalar(1, 1) / Scalar(1, 2);
    t.add_term(1, {ExpVec{0, 1, 0}, ExpVec{0, 0, 1}}, half);
    t.add_term(1, {ExpVec{0, 0, 1}, ExpVec{0, 1, 0}}, -half);
    UEAT expect = UEAT::unit(alg, 2, 2) + t + (t * t).scaled(half);
    CHECK(f == expect);

    /* F₀ = 1⊗1 */
    CHECK(f.hbar_part(0) == UEAT::unit(alg, 2, 0));

    QuantizationReport rep = quantization_check(f, engine.r);
    CHECK(rep.ok());
    CHECK(qdybe_residual(f).is_zero());

    /* R = 1 + ħr + O(ħ²) */
    UEAT rmat = f_to_r_matrix(f);
    CHECK(rmat.hbar_part(1) == r_as_tensor(engine.r.r, 0));

    /* control: F = 1⊗1 with r ≠ 0 leaves residual (c) = −r */
    QuantizationReport ctrl = quantization_check(UEAT::unit(alg, 2, 2), engine.r);
    CHECK(ctrl.quantization == -r_as_tensor(engine.r.r, 0));
    CHECK(ctrl.shifted_cocycle.is_zero());
}

TEST_CASE("curved engine at K = 1: quantization axioms") {
    StarEngine engine = StarEngine::build(make_fix_b(), 1);
    UEAT f = extract_f(engine);
    CHECK(f.hbar_part(0) == UEAT::unit(engine.r.algebra, 2, 0));
    QuantizationReport rep = quantization_check(f, engine.r);
    CHECK(rep.ok());
    CHECK(qdybe_residual(f).is_zero());

    /* F₁¹² − F₁²¹ = (1/λ)(e₁⊗e₂ − e₂⊗e₁) */
    UEAT f1 = f.hbar_part(1);
    CHECK(f1 - f1.swap_slots(0, 1) == r_as_tensor(engine.r.r, 0));
}

TEST_CASE("mixed star products match the Θ formulas (momentum map law)") {
    StarEngine engine = StarEngine::build(make_fix_b(), 2);
    auto alg = engine.r.algebra;
    Rng rng;
    for (int t = 0; t < 3; ++t) {
        Scalar fs = rng.scalar(1, true);
        GJet f = engine.jet_scalar(fs);
        GJet g = random_jet(rng, alg, engine.jet_cap, 2);
        JetSeries via_engine = engine.star(f, g);
        JetSeries via_theta = theta_apply(*engine.fields, f, g, engine.hbar_order);
        CHECK(jet_series_zero(jet_series_sub(via_engine, via_theta, engine.hbar_order)));
        JetSeries rev_engine = engine.star(g, f);
        JetSeries rev_theta = theta_apply(*engine.fields, g, f, engine.hbar_order);
        CHECK(jet_series_zero(jet_series_sub(rev_engine, rev_theta, engine.hbar_order)));
    }
}

TEST_CASE("equivalence transforms") {
    StarEngine engine = StarEngine::build(make_fix_b(), 1);
    UEAT f = extract_f(engine);
    auto alg = engine.r.algebra;

    /* T = 1 fixes F */
    UEAT one = UEAT::unit(alg, 1, 1);
    CHECK(equivalence_transform(f, one) == f);

    /* T = 1 + ħ·h²: E remains a quantization */
    UEAT t = one;
    t.add_term(1, {ExpVec{2, 0, 0}}, Scalar(1, 1));
    UEAT e = equivalence_transform(f, t);
    CHECK(!(e == f));
    CHECK(quantization_check(e, engine.r).ok());

    /* missing unit leading term is rejected */
    CHECK_THROWS_AS(equivalence_transform(f, UEAT::generator(alg, 1, 1, 0, 0)), DomainError);
    /* ε(T) ≠ 1 is rejected: T = 1 + ħ·h has ε(T) = 1 + 0 — use a constant shift */
    UEAT eps_bad = one + UEAT::unit(alg, 1, 1).hbar_shifted(1);
    CHECK_THROWS_AS(equivalence_transform(f, eps_bad), DomainError);
}

TEST_CASE("theta conjugation identity for zero-weight T") {
    auto alg = heisenberg();
    auto fields = left_invariant_fields(alg, 6);
    int K = 1;
    UEAT t = UEAT::unit(alg, 1, K);
    t.add_term(1, {ExpVec{2, 0, 0}}, Scalar(1, 1));  // T = 1 + ħh²
    /* Θ(T⊗T)Θ⁻¹ = T₁(λ−½ħh⁽²⁾)T₂(λ+½ħh⁽¹⁾) as operators on jet pairs */
    UEAT rhs_op = shifted_embed(t, 2, {0}, 1, -1) * shifted_embed(t, 2, {1}, 0, +1);
    Rng rng;
    for (int trial = 0; trial < 3; ++trial) {
        GJet f = random_jet(rng, alg, 6, 2), g = random_jet(rng, alg, 6, 2);
        JetSeries lhs = theta_conjugation(*fields, t, t, f, g, K);
        JetSeries rhs = realize(rhs_op, *fields, {f, g});
        CHECK(jet_series_zero(jet_series_sub(jet_series_trunc(lhs, K), jet_series_trunc(rhs, K), K)));
    }
}
