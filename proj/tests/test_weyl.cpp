#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>

#include "drq/weyl.hpp"
#include "fixtures.hpp"

using namespace drq;
using namespace drq::fixtures;

namespace {

WeylContext make_ctx(const DynamicalR& R, WeylCaps caps) {
    FrameGeometry g = build_frame_geometry(R);
    FrameConnection nabla = symplectize(base_connection(g.frame), g);
    return make_weyl_context(g, nabla, caps);
}

WeylKey key_of(int k, std::initializer_list<int> ys, uint32_t form) {
    WeylKey key;
    key.k = k;
    key.form = form;
    for (int y : ys) key.alpha = alpha_inc(key.alpha, y);
    return key;
}

WeylElement<Scalar> random_weyl(Rng& rng, const WeylContext& ctx, int max_k = 1, int max_y = 3,
                                bool forms = true) {
    WeylElement<Scalar> w;
    const Frame& f = ctx.frame();
    for (int t = 0; t < 4; ++t) {
        WeylKey key;
        key.k = static_cast<int>(rng.gen() % (max_k + 1));
        int budget = static_cast<int>(rng.gen() % (max_y + 1));
        for (int b = 0; b < budget; ++b) key.alpha = alpha_inc(key.alpha, rng.gen() % f.N);
        key.form = forms ? static_cast<uint32_t>(rng.gen() % (1u << f.N)) : 0u;
        we_accumulate(w, key, rng.scalar(ctx.nvars(), true), ctx.caps);
    }
    return w;
}

/* independent brute-force expansion of the fiber product for pure-y terms:
 * literal double sum over ordered derivative multi-indices */
WeylElement<Scalar> moyal_bruteforce(const WeylContext& ctx, const WeylElement<Scalar>& a,
                                     const WeylElement<Scalar>& b) {
    const Frame& f = ctx.frame();
    WeylElement<Scalar> out;
    auto dy = [&](std::map<WeylKey, Scalar> t, int A) {
        std::map<WeylKey, Scalar> r;
        for (const auto& [k, c] : t) {
            int e = alpha_get(k.alpha, A);
            if (e == 0) continue;
            WeylKey key = k;
            key.alpha = alpha_dec(k.alpha, A);
            Scalar v = c * Scalar(ctx.nvars(), e);
            auto [it, fresh] = r.try_emplace(key, v);
            if (!fresh) it->second += v;
        }
        return r;
    };
    Scalar half = Scalar(ctx.nvars(), 1) / Scalar(ctx.nvars(), 2);
    for (int k = 0; k <= 4; ++k) {
        std::vector<std::vector<int>> seqs{{}};
        for (int s = 0; s < k; ++s) {
            std::vector<std::vector<int>> next;
            for (const auto& q : seqs)
                for (int A = 0; A < f.N; ++A) {
                    auto q2 = q;
                    q2.push_back(A);
                    next.push_back(q2);
                }
            seqs = std::move(next);
        }
        Scalar fac = half.pow(k);
        for (int t = 2; t <= k; ++t) fac = fac / Scalar(ctx.nvars(), t);
        for (const auto& is : seqs)
            for (const auto& js : seqs) {
                Scalar pfac = fac;
                for (int s = 0; s < k; ++s) pfac = pfac * ctx.geom.poisson.at(is[s], js[s]);
                if (pfac.is_zero()) continue;
                auto ta = a.terms, tb = b.terms;
                for (int s = 0; s < k; ++s) {
                    ta = dy(ta, is[s]);
                    tb = dy(tb, js[s]);
                }
                for (const auto& [ka, ca] : ta)
                    for (const auto& [kb, cb] : tb) {
                        WeylKey key;
                        key.k = ka.k + kb.k + k;
                        key.alpha = ka.alpha + kb.alpha;
                        key.form = 0;
                        we_accumulate(out, key, ca * cb * pfac, ctx.caps);
                    }
            }
    }
    return out;
}

}  // namespace

TEST_CASE("moyal: unit, basic commutator, brute-force oracle") {
    WeylContext ctx = make_ctx(make_fix_a(), {4, 10});
    const Frame& f = ctx.frame();
    int e1 = f.l + 1, e2 = f.l + 2;  // fiber variables dual to ē_{e₁}, ē_{e₂}

    WeylElement<Scalar> one, ye1, ye2;
    we_accumulate(one, key_of(0, {}, 0), Scalar(1, 1), ctx.caps);
    we_accumulate(ye1, key_of(0, {e1}, 0), Scalar(1, 1), ctx.caps);
    we_accumulate(ye2, key_of(0, {e2}, 0), Scalar(1, 1), ctx.caps);

    Rng rng;
    WeylElement<Scalar> a = random_weyl(rng, ctx);
    CHECK(moyal(ctx, one, a) == a);
    CHECK(moyal(ctx, a, one) == a);

    /* y¹∘y² − y²∘y¹ = ħ·π^{12} = ħ (π(ξ^{e₁},ξ^{e₂}) = 1 on FIX-A) */
    WeylElement<Scalar> comm = we_sub(moyal(ctx, ye1, ye2), moyal(ctx, ye2, ye1), ctx.caps);
    WeylElement<Scalar> hbar;
    we_accumulate(hbar, key_of(1, {}, 0), Scalar(1, 1), ctx.caps);
    CHECK(comm == hbar);

    /* (y¹)²∘(y²)² against the independent double-sum expansion */
    WeylElement<Scalar> sq1, sq2;
    we_accumulate(sq1, key_of(0, {e1, e1}, 0), Scalar(1, 1), ctx.caps);
    we_accumulate(sq2, key_of(0, {e2, e2}, 0), Scalar(1, 1), ctx.caps);
    WeylElement<Scalar> prod = moyal(ctx, sq1, sq2);
    CHECK(prod == moyal_bruteforce(ctx, sq1, sq2));
    /* frozen from the oracle: y¹²y²² + 2ħ y¹y² + ħ²/2 */
    auto it = prod.terms.find(key_of(2, {}, 0));
    REQUIRE(it != prod.terms.end());
    CHECK(it->second == Scalar(1, 1) / Scalar(1, 2));

    for (int t = 0; t < 6; ++t) {
        WeylElement<Scalar> u = random_weyl(rng, ctx, 1, 2, false);
        WeylElement<Scalar> v = random_weyl(rng, ctx, 1, 2, false);
        CHECK(moyal(ctx, u, v) == moyal_bruteforce(ctx, u, v));
    }
}

TEST_CASE("moyal: exact associativity within caps (λ-dependent π)") {
    Rng rng;
    WeylContext ctx = make_ctx(make_fix_b(), {3, 8});
    for (int t = 0; t < 20; ++t) {
        auto a = random_weyl(rng, ctx), b = random_weyl(rng, ctx), c = random_weyl(rng, ctx);
        CHECK(moyal(ctx, moyal(ctx, a, b), c) == moyal(ctx, a, moyal(ctx, b, c)));
    }
}

TEST_CASE("delta operators: examples and Hodge identity") {
    WeylContext ctx = make_ctx(make_fix_b(), {2, 6});

    /* δ(y^{e₁}y^{e₂}) = ξ^{e₁}y^{e₂} + ξ^{e₂}y^{e₁} */
    WeylElement<Scalar> yy;
    we_accumulate(yy, key_of(0, {2, 3}, 0), Scalar(1, 1), ctx.caps);
    WeylElement<Scalar> d = delta_op(ctx, yy);
    CHECK(d.terms.size() == 2);
    CHECK(d.terms.at(key_of(0, {3}, 1u << 2)) == Scalar(1, 1));

    /* δ⁻¹(y^{e₁} ξ^{e₂}) = ½ y^{e₁}y^{e₂}; Hodge reproduces the input */
    WeylElement<Scalar> yxi;
    we_accumulate(yxi, key_of(0, {2}, 1u << 3), Scalar(1, 1), ctx.caps);
    WeylElement<Scalar> di = delta_inv(ctx, yxi);
    CHECK(di.terms.at(key_of(0, {2, 3}, 0)) == Scalar(1, 1) / Scalar(1, 2));
    WeylElement<Scalar> hodge =
        we_add(delta_op(ctx, delta_inv(ctx, yxi)), delta_inv(ctx, delta_op(ctx, yxi)), ctx.caps);
    CHECK(hodge == yxi);

    /* δ⁻¹ of an ħ-scalar is zero */
    WeylElement<Scalar> c0;
    we_accumulate(c0, key_of(1, {}, 0), Scalar(1, 5), ctx.caps);
    CHECK(delta_inv(ctx, c0).is_zero());

    Rng rng;
    for (int t = 0; t < 50; ++t) {
        auto a = random_weyl(rng, ctx);
        CHECK(delta_op(ctx, delta_op(ctx, a)).is_zero());
        CHECK(delta_inv(ctx, delta_inv(ctx, a)).is_zero());
        WeylElement<Scalar> h = we_add(
            we_add(delta_op(ctx, delta_inv(ctx, a)), delta_inv(ctx, delta_op(ctx, a)), ctx.caps),
            we_const_part(a), ctx.caps);
        CHECK(h == a);
    }
}

TEST_CASE("covariant derivative: flat case, λ-coefficients, Leibniz") {
    Rng rng;
    {
        WeylContext ctx = make_ctx(make_fix_a(), {2, 6});
        WeylElement<Scalar> a;
        we_accumulate(a, key_of(0, {1}, 0), parse_scalar("l1^2", 1), ctx.caps);
        WeylElement<Scalar> da = covariant_d(ctx, a);
        CHECK(da.terms.size() == 1);
        CHECK(da.terms.at(key_of(0, {1}, 1u << 0)) == parse_scalar("2*l1", 1));
    }
    {
        WeylContext ctx = make_ctx(make_fix_b(), {2, 6});
        WeylElement<Scalar> a;
        we_accumulate(a, key_of(0, {}, 0), parse_scalar("1/l1", 1), ctx.caps);
        WeylElement<Scalar> da = covariant_d(ctx, a);
        CHECK(da.terms.at(key_of(0, {}, 1u << 0)) == parse_scalar("-1/l1^2", 1));

        for (int t = 0; t < 10; ++t) {
            WeylElement<Scalar> u = random_weyl(rng, ctx, 1, 2, false);  // 0-forms
            WeylElement<Scalar> v = random_weyl(rng, ctx, 1, 2, true);
            WeylElement<Scalar> lhs = covariant_d(ctx, moyal(ctx, u, v));
            WeylElement<Scalar> rhs = we_add(moyal(ctx, covariant_d(ctx, u), v),
                                             moyal(ctx, u, covariant_d(ctx, v)), ctx.caps);
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("∂² = (i/ħ)[R_W,·] and δ∂+∂δ = 0") {
    Rng rng;
    WeylContext ctx = make_ctx(make_fix_b(), {3, 8});
    CurvatureTensor R = curvature(ctx.conn, ctx.geom);
    WeylElement<Scalar> rw = weyl_curvature_section(ctx, R);
    CHECK(!rw.is_zero());
    for (int t = 0; t < 10; ++t) {
        auto a = random_weyl(rng, ctx, 1, 2);
        WeylElement<Scalar> dd = covariant_d(ctx, covariant_d(ctx, a));
        WeylElement<Scalar> ad = mul_i_over_hbar(ctx, moyal_commutator(ctx, rw, a));
        CHECK(dd == ad);
        WeylElement<Scalar> anti =
            we_add(delta_op(ctx, covariant_d(ctx, a)), covariant_d(ctx, delta_op(ctx, a)), ctx.caps);
        CHECK(anti.is_zero());
    }
}

TEST_CASE("solve_gamma: flat cases") {
    WeylContext ctx = make_ctx(make_fix_a(), caps_for_star(2));
    FedosovData data = solve_gamma(ctx, {});
    CHECK(data.gamma.is_zero());

    /* FIX-A with ω₁ = dλ∧ξ^{e₁}: γ = ħ·δ⁻¹ω₁ exactly (flat, abelian) */
    FrameForm w1(ctx.frame(), 2);
    w1.add_term({0, 2}, Scalar(1, 1));
    FedosovData pert = solve_gamma(ctx, {{1, w1}});
    WeylElement<Scalar> expect = delta_inv(ctx, weyl_from_form(ctx, w1, 1));
    CHECK(!pert.gamma.is_zero());
    CHECK(pert.gamma == expect);

    FrameForm bad(ctx.frame(), 2);
    bad.add_term({0, 1}, Scalar(1, 1));  // dλ∧ξ^h has an ē_h leg
    CHECK_THROWS_AS(solve_gamma(ctx, {{1, bad}}), DomainError);
}

TEST_CASE("solve_gamma: FIX-B curved data passes all postconditions") {
    WeylContext ctx = make_ctx(make_fix_b(), caps_for_star(2));
    FedosovData data = solve_gamma(ctx, {});
    CHECK(!data.gamma.is_zero());
    CHECK(we_min_total_degree(data.gamma) >= 3);
    CHECK(we_in_w_perp(ctx, data.gamma));
}

TEST_CASE("parallel lift: closed forms, D-flatness, star on λ-functions") {
    WeylContext ctx = make_ctx(make_fix_b(), caps_for_star(2));
    FedosovData data = solve_gamma(ctx, {});

    WeylElement<Scalar> l1 = parallel_lift(ctx, data.gamma, Scalar(1, 1));
    CHECK(l1.terms.size() == 1);

    /* lift of λ² = λ² + 2λ y^v + y^v y^v */
    WeylElement<Scalar> lf = parallel_lift(ctx, data.gamma, parse_scalar("l1^2", 1));
    CHECK(lf.terms.size() == 3);
    CHECK(lf.terms.at(key_of(0, {}, 0)) == parse_scalar("l1^2", 1));
    CHECK(lf.terms.at(key_of(0, {0}, 0)) == parse_scalar("2*l1", 1));
    CHECK(lf.terms.at(key_of(0, {0, 0}, 0)) == Scalar(1, 1));

    Rng rng;
    Scalar a = rng.scalar(1, true), b = rng.scalar(1, true);
    WeylElement<Scalar> la = parallel_lift(ctx, data.gamma, a);
    WeylElement<Scalar> lb = parallel_lift(ctx, data.gamma, b);
    auto ca = we_center(la);
    CHECK(ca.size() == 1);
    CHECK(ca.at(0) == a);
    WeylElement<Scalar> lab = parallel_lift(ctx, data.gamma, a + b);
    CHECK(lab == we_add(la, lb, ctx.caps));

    /* D-flatness within the valid degree window */
    WeylElement<Scalar> d = fedosov_D(ctx, data.gamma, la);
    for (const auto& [k, c] : d.terms)
        CHECK(2 * k.k + alpha_degree(k.alpha) > ctx.caps.n_max - 1);

    /* re-lift of σ(ã∘b̃) reproduces ã∘b̃ where both are defined */
    WeylElement<Scalar> prod = moyal(ctx, la, lb);
    auto sigma = we_center(prod);
    WeylElement<Scalar> relift;
    for (const auto& [k, c] : sigma) {
        WeylElement<Scalar> piece = parallel_lift(ctx, data.gamma, c);
        for (const auto& [key, v] : piece.terms) {
            WeylKey shifted = key;
            shifted.k += k;
            we_accumulate(relift, shifted, v, ctx.caps);
        }
    }
    for (const auto& [k, c] : we_sub(relift, prod, ctx.caps).terms)
        CHECK(2 * k.k + alpha_degree(k.alpha) > ctx.caps.n_max - 1);

    /* star of λ-functions multiplies pointwise at every order */
    for (int t = 0; t < 3; ++t) {
        Scalar fs = rng.scalar(1, true), gs = rng.scalar(1, true);
        auto out = star_product(ctx, data.gamma, fs, gs, 2);
        CHECK(out.at(0) == fs * gs);
        CHECK(out.count(1) == 0);
        CHECK(out.count(2) == 0);
    }
}

TEST_CASE("D is a derivation and D² = 0 for the solved connection") {
    Rng rng;
    WeylContext ctx = make_ctx(make_fix_b(), caps_for_star(2));
    FedosovData data = solve_gamma(ctx, {});
    for (int t = 0; t < 8; ++t) {
        auto a = random_weyl(rng, ctx, 1, 2, false);  // 0-forms so the sign is +
        auto b = random_weyl(rng, ctx, 1, 2, true);
        WeylElement<Scalar> lhs = fedosov_D(ctx, data.gamma, moyal(ctx, a, b));
        WeylElement<Scalar> rhs = we_add(moyal(ctx, fedosov_D(ctx, data.gamma, a), b),
                                         moyal(ctx, a, fedosov_D(ctx, data.gamma, b)), ctx.caps);
        /* D loses one filtration slice through δ; compare below it */
        for (const auto& [k, c] : we_sub(lhs, rhs, ctx.caps).terms)
            CHECK(2 * k.k + alpha_degree(k.alpha) > ctx.caps.n_max - 1);
        WeylElement<Scalar> dd = fedosov_D(ctx, data.gamma, fedosov_D(ctx, data.gamma, a));
        for (const auto& [k, c] : dd.terms)
            CHECK(2 * k.k + alpha_degree(k.alpha) > ctx.caps.n_max - 2);
    }
}
