#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "drq/cohomology.hpp"
#include "fixtures.hpp"

using namespace drq;
using namespace drq::fixtures;

TEST_CASE("validate: fixtures are Lie algebras, bad tables are flagged") {
    CHECK(heisenberg()->validate().ok());
    CHECK(std::make_shared<LieAlgebra>(3, 1)->validate().ok());

    /* 𝔥 = span{h,e} claimed abelian but [h,e] = h */
    LieAlgebra bad(2, 2);
    bad.set_bracket(0, 1, 0, Scalar(2, 1));
    CHECK(!bad.validate().ok());
    CHECK(!bad.validate().abelian_violations.empty());

    /* broken Jacobi: [e1,e2]=e3, [e1,e3]=e1 */
    LieAlgebra nj(3, 0);
    nj.set_bracket(0, 1, 2, Scalar(0, 1));
    nj.set_bracket(0, 2, 0, Scalar(0, 1));
    CHECK(!nj.validate().jacobi_violations.empty());
}

TEST_CASE("wedge basics") {
    auto alg = heisenberg();
    MultiVector h = MultiVector::basis(alg, 0), e1 = MultiVector::basis(alg, 1),
                e2 = MultiVector::basis(alg, 2);
    CHECK(wedge(h, h).is_zero());
    CHECK(wedge(wedge(h, e1), e2).coeff({0, 1, 2}) == Scalar(1, 1));
    Scalar f = parse_scalar("1/(1+l1)", 1);
    CHECK(wedge(h.scaled(f), e1) == wedge(h, e1).scaled(f));
    /* graded commutativity */
    fixtures::Rng rng;
    for (int t = 0; t < 10; ++t) {
        MultiVector u = rng.multivector(alg, 1, true), v = rng.multivector(alg, 2, true);
        CHECK(wedge(u, v) == wedge(v, u));  // (−1)^{1·2} = +1
        MultiVector w = rng.multivector(alg, 1, true);
        CHECK(wedge(u, w) == -wedge(w, u));
    }
}

TEST_CASE("wedge nilpotency of odd degrees") {
    fixtures::Rng rng;
    auto alg = heisenberg();
    for (int t = 0; t < 10; ++t) {
        MultiVector u = rng.multivector(alg, 1, true);
        CHECK(wedge(u, u).is_zero());
        MultiVector w = rng.multivector(alg, 3, true);
        CHECK(wedge(w, w).is_zero());
    }
}

TEST_CASE("schouten: degree-1 case is the Lie bracket") {
    auto C = make_fix_c(2);
    auto alg = C.algebra;
    MultiVector h = MultiVector::basis(alg, 0), e = MultiVector::basis(alg, 1);
    MultiVector he = schouten_bracket(h, e);
    CHECK(he.coeff({0}) == Scalar(1, 2));  // [h,e] = 2h
    CHECK(schouten_bracket(wedge(h, e), wedge(h, e)).is_zero());
}

TEST_CASE("schouten: Heisenberg self-bracket") {
    auto alg = heisenberg();
    MultiVector e12(alg, 2);
    e12.add_term({1, 2}, Scalar(1, 1));
    MultiVector b = schouten_bracket(e12, e12);
    CHECK(b.coeff({0, 1, 2}) == Scalar(1, 2));  // 2·h∧e₁∧e₂
    CHECK(b.terms().size() == 1);
}

TEST_CASE("schouten: graded antisymmetry and Leibniz") {
    fixtures::Rng rng;
    auto alg = heisenberg();
    for (int pa = 1; pa <= 2; ++pa)
        for (int pb = 1; pb <= 2; ++pb)
            for (int t = 0; t < 6; ++t) {
                MultiVector a = rng.multivector(alg, pa, true), b = rng.multivector(alg, pb, true);
                int sign = (((pa - 1) * (pb - 1)) % 2 == 0) ? -1 : 1;
                MultiVector rhs = schouten_bracket(b, a).scaled(Scalar(1, sign));
                CHECK(schouten_bracket(a, b) == rhs);
            }
    /* [a, b∧c] = [a,b]∧c + (−1)^{(|a|−1)|b|} b∧[a,c] */
    for (int t = 0; t < 8; ++t) {
        MultiVector a = rng.multivector(alg, 2, true);
        MultiVector b = rng.multivector(alg, 1, true);
        MultiVector c = rng.multivector(alg, 1, true);
        MultiVector lhs = schouten_bracket(a, wedge(b, c));
        MultiVector rhs = wedge(schouten_bracket(a, b), c) + wedge(b, schouten_bracket(a, c)).scaled(Scalar(1, -1));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("schouten: graded Jacobi on random triples") {
    fixtures::Rng rng;
    auto alg = heisenberg();
    auto sgn = [](int x) { return (x % 2 == 0) ? 1 : -1; };
    for (int pa = 1; pa <= 3; ++pa)
        for (int pb = 1; pb <= 2; ++pb)
            for (int pc = 1; pc <= 2; ++pc)
                for (int t = 0; t < 3; ++t) {
                    MultiVector a = rng.multivector(alg, pa), b = rng.multivector(alg, pb),
                                c = rng.multivector(alg, pc);
                    MultiVector j1 =
                        schouten_bracket(schouten_bracket(a, b), c).scaled(Scalar(1, sgn((pa - 1) * (pc - 1))));
                    MultiVector j2 =
                        schouten_bracket(schouten_bracket(b, c), a).scaled(Scalar(1, sgn((pb - 1) * (pa - 1))));
                    MultiVector j3 =
                        schouten_bracket(schouten_bracket(c, a), b).scaled(Scalar(1, sgn((pc - 1) * (pb - 1))));
                    CHECK((j1 + j2 + j3).is_zero());
                }
}

TEST_CASE("schouten degre-1 action equals the ad-derivation") {
    fixtures::Rng rng;
    auto alg = make_fix_c(3).algebra;
    for (int deg = 1; deg <= 2; ++deg)
        for (int t = 0; t < 10; ++t) {
            MultiVector x = rng.multivector(alg, 1, true);
            MultiVector u = rng.multivector(alg, deg, true);
            CHECK(schouten_bracket(x, u) == ad_derivation(x, u));
        }
}

TEST_CASE("relative cohomology dimensions") {
    auto heis = heisenberg();
    auto [c2, h2] = relative_cohomology_dim(*heis, 2);
    CHECK(c2 == 1);
    CHECK(h2 == 1);

    LieAlgebra abelian(3, 1);
    CHECK(relative_cohomology_dim(abelian, 2).h_dim == 1);

    CHECK(relative_cohomology_dim(*heis, 0).h_dim == 1);
    CHECK(relative_cohomology_dim(*make_fix_c(1).algebra, 0).h_dim == 1);
    CHECK_THROWS_AS(relative_cohomology_dim(*heis, 5), DomainError);
}

TEST_CASE("relative CE differential squares to zero") {
    std::vector<AlgebraPtr> algs = {heisenberg(), make_fix_c(2).algebra,
                                    std::make_shared<LieAlgebra>(3, 1)};
    for (const auto& alg : algs) {
        int m = alg->dim() - alg->cartan_dim();
        for (int k = 0; k + 2 <= m; ++k) {
            ScalarMatrix dd = relative_ce_differential(*alg, k + 1) * relative_ce_differential(*alg, k);
            CHECK(dd.is_zero());
        }
    }
}
