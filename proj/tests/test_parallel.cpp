#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "drq/quantize.hpp"
#include "fixtures.hpp"

using namespace drq;
using namespace drq::fixtures;

namespace {

WeylContext make_ctx(const DynamicalR& R, WeylCaps caps) {
    FrameGeometry g = build_frame_geometry(R);
    FrameConnection nabla = symplectize(base_connection(g.frame), g);
    return make_weyl_context(g, nabla, caps);
}

WeylElement<Scalar> random_weyl(Rng& rng, const WeylContext& ctx) {
    WeylElement<Scalar> w;
    const Frame& f = ctx.frame();
    for (int t = 0; t < 40; ++t) {
        WeylKey key;
        key.k = static_cast<int>(rng.gen() % 2);
        int budget = static_cast<int>(rng.gen() % 4);
        for (int b = 0; b < budget; ++b) key.alpha = alpha_inc(key.alpha, rng.gen() % f.N);
        key.form = static_cast<uint32_t>(rng.gen() % (1u << f.N));
        we_accumulate(w, key, rng.scalar(ctx.nvars(), true), ctx.caps);
    }
    return w;
}

}  // namespace

TEST_CASE("parallel moyal equals the serial reference") {
    Rng rng;
    WeylContext ctx = make_ctx(make_fix_b(), {3, 9});
    for (int t = 0; t < 6; ++t) {
        auto a = random_weyl(rng, ctx), b = random_weyl(rng, ctx);
        WeylElement<Scalar> serial = moyal_serial(ctx, a, b);
        force_serial(false);
        WeylElement<Scalar> par = moyal(ctx, a, b);
        CHECK(par == serial);
        force_serial(true);
        CHECK(moyal(ctx, a, b) == serial);
        force_serial(false);
    }
}

TEST_CASE("parallel curvature assembly equals the serial reference") {
    for (auto fix : {make_fix_a(), make_fix_b()}) {
        FrameGeometry g = build_frame_geometry(fix);
        FrameConnection nabla = symplectize(base_connection(g.frame), g);
        CurvatureTensor s = curvature_serial(nabla, g);
        CurvatureTensor p = curvature_parallel(nabla, g);
        REQUIRE(s.lowered.size() == p.lowered.size());
        for (size_t i = 0; i < s.lowered.size(); ++i) {
            CHECK(s.lowered[i] == p.lowered[i]);
            CHECK(s.upper[i] == p.upper[i]);
        }
    }
}

TEST_CASE("serial and parallel pipelines extract the same F") {
    force_serial(true);
    StarEngine es = StarEngine::build(make_fix_b(), 1);
    UEAT fs = extract_f(es);
    force_serial(false);
    StarEngine ep = StarEngine::build(make_fix_b(), 1);
    UEAT fp = extract_f(ep);
    CHECK(fs == fp);
}
