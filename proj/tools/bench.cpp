#include <chrono>
#include <iostream>

#include "drq/quantize.hpp"

using namespace drq;
using Clock = std::chrono::steady_clock;

namespace {

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

DynamicalR heisenberg_r() {
    auto alg = std::make_shared<LieAlgebra>(3, 1);
    alg->set_bracket(1, 2, 0, Scalar(1, 1));
    MultiVector r(alg, 2);
    r.add_term({1, 2}, parse_scalar("1/l1", 1));
    return DynamicalR(alg, r);
}

/* a dense-ish Weyl element exercising the contraction ladder */
WeylElement<Scalar> dense_element(const WeylContext& ctx, unsigned seed) {
    WeylElement<Scalar> w;
    const Frame& f = ctx.frame();
    unsigned state = seed;
    auto next = [&] { return state = state * 1664525u + 1013904223u; };
    for (int t = 0; t < 160; ++t) {
        WeylKey key;
        key.k = static_cast<int>(next() % 2);
        for (int b = 0; b < 4; ++b)
            if (next() % 2) key.alpha = alpha_inc(key.alpha, next() % f.N);
        key.form = next() % (1u << f.N);
        we_accumulate(w, key, Scalar(1, static_cast<long>(next() % 7) - 3), ctx.caps);
    }
    return w;
}

}  // namespace

int main() {
    DynamicalR r = heisenberg_r();
    FrameGeometry g = build_frame_geometry(r);
    FrameConnection nabla = symplectize(base_connection(g.frame), g);
    WeylContext ctx = make_weyl_context(g, nabla, {3, 9});

    WeylElement<Scalar> a = dense_element(ctx, 7u), b = dense_element(ctx, 11u);
    std::cout << "moyal operands: " << a.terms.size() << " x " << b.terms.size() << " terms\n";

    const int reps = 20;
    force_serial(true);
    auto t0 = Clock::now();
    WeylElement<Scalar> serial;
    for (int i = 0; i < reps; ++i) serial = moyal(ctx, a, b);
    double t_serial = ms_since(t0);

    force_serial(false);
    t0 = Clock::now();
    WeylElement<Scalar> parallel;
    for (int i = 0; i < reps; ++i) parallel = moyal(ctx, a, b);
    double t_parallel = ms_since(t0);

    std::cout << "moyal      serial " << t_serial / reps << " ms   parallel " << t_parallel / reps
              << " ms   identical " << (serial == parallel ? "yes" : "NO") << "\n";

    t0 = Clock::now();
    CurvatureTensor cs = curvature_serial(nabla, g);
    double c_serial = ms_since(t0);
    force_serial(false);
    t0 = Clock::now();
    CurvatureTensor cp = curvature_parallel(nabla, g);
    double c_parallel = ms_since(t0);
    bool same = cs.lowered.size() == cp.lowered.size();
    for (size_t i = 0; same && i < cs.lowered.size(); ++i)
        if (!(cs.lowered[i] == cp.lowered[i])) same = false;
    std::cout << "curvature  serial " << c_serial << " ms   parallel " << c_parallel
              << " ms   identical " << (same ? "yes" : "NO") << "\n";

    force_serial(true);
    t0 = Clock::now();
    StarEngine es = StarEngine::build(r, 2);
    UEAT fs = extract_f(es);
    double e_serial = ms_since(t0);
    force_serial(false);
    t0 = Clock::now();
    StarEngine ep = StarEngine::build(r, 2);
    UEAT fp = extract_f(ep);
    double e_parallel = ms_since(t0);
    std::cout << "extract-f  serial " << e_serial << " ms   parallel " << e_parallel
              << " ms   identical " << (fs == fp ? "yes" : "NO") << "\n";
    return 0;
}
