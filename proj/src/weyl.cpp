#include "drq/weyl.hpp"

namespace drq {

WeylContext make_weyl_context(FrameGeometry geom, FrameConnection conn, WeylCaps caps,
                              FramePtr fields, int jet_cap) {
    const Frame& f = geom.frame;
    if (f.N > 16) throw DomainError("weyl: frame size exceeds the packed-key limit");
    if (caps.n_max > 13) throw DomainError("weyl: n_max exceeds the packed-exponent limit");
    auto t = std::make_shared<WeylTables>();
    int nv = f.alg->nvars();
    for (int A = 0; A < f.N; ++A)
        for (int B = 0; B < f.N; ++B)
            if (!geom.poisson.at(A, B).is_zero()) t->pi_nz.push_back({A, B, geom.poisson.at(A, B)});
    t->gamma_slot.resize(f.N * f.N);
    t->direction_flat.assign(f.N, true);
    for (int A = 0; A < f.N; ++A)
        for (int B = 0; B < f.N; ++B)
            for (int C = 0; C < f.N; ++C)
                if (!conn.at(A, C, B).is_zero()) {
                    t->gamma_slot[A * f.N + B].push_back({C, conn.at(A, C, B)});
                    t->direction_flat[A] = false;
                }
    for (int n = 0; n <= 64; ++n) t->small_int.push_back(Scalar(nv, n));
    for (int n = 1; n <= 64; ++n) t->small_inv.push_back(Scalar(nv, n).inv());
    t->half = t->small_inv[1];
    t->imag = Scalar::imag_unit(nv);
    return WeylContext{std::move(geom), std::move(conn), caps, std::move(fields), jet_cap,
                       std::move(t)};
}

WeylElement<Scalar> weyl_from_form(const WeylContext& ctx, const FrameForm& w, int hbar_power) {
    WeylElement<Scalar> r;
    for (const auto& [J, c] : w.terms()) {
        WeylKey key;
        key.k = hbar_power;
        for (int A : J) key.form |= (1u << A);
        we_accumulate(r, key, c, ctx.caps);
    }
    return r;
}

WeylElement<Scalar> weyl_curvature_section(const WeylContext& ctx, const CurvatureTensor& R) {
    const Frame& f = ctx.frame();
    int nv = ctx.nvars();
    Scalar quarter_i = Scalar::imag_unit(nv) / Scalar(nv, 4);
    WeylElement<Scalar> out;
    for (int C = 0; C < f.N; ++C)
        for (int D = 0; D < f.N; ++D)
            for (int A = 0; A < f.N; ++A)
                for (int B = 0; B < f.N; ++B) {
                    if (A == B) continue;
                    const Scalar& low = R.low(C, D, A, B);
                    if (low.is_zero()) continue;
                    WeylKey key;
                    key.alpha = alpha_inc(alpha_inc(0, C), D);
                    key.form = (1u << A) | (1u << B);
                    Scalar v = quarter_i * low;
                    if (A > B) v = -v;
                    we_accumulate(out, key, v, ctx.caps);
                }
    return out;
}

FedosovData solve_gamma(const WeylContext& ctx,
                        std::vector<std::pair<int, FrameForm>> omega_pert) {
    const Frame& f = ctx.frame();
    for (const auto& [k, w] : omega_pert) {
        if (k < 1) throw DomainError("solve_gamma: perturbation powers start at ħ^1");
        if (w.degree() != 2) throw DomainError("solve_gamma: perturbations must be 2-forms");
        if (!frame_d(w).is_zero()) throw DomainError("solve_gamma: ω_i is not closed");
        for (int i = 0; i < f.l; ++i)
            if (!frame_contract(f.l + i, w).is_zero())
                throw DomainError("solve_gamma: i_{ē_h} ω_i ≠ 0");
    }

    FedosovData data{ctx, curvature(ctx.conn, ctx.geom), std::move(omega_pert), {}};

    WeylElement<Scalar> omega_tilde = weyl_curvature_section(ctx, data.curv);
    for (const auto& [k, w] : data.omega_pert)
        omega_tilde = we_add(omega_tilde, weyl_from_form(ctx, w, k), ctx.caps);

    WeylElement<Scalar> gamma0 = delta_inv(ctx, omega_tilde);
    WeylElement<Scalar> gamma = gamma0;
    auto step = [&](const WeylElement<Scalar>& g) {
        WeylElement<Scalar> rhs =
            we_add(covariant_d(ctx, g), square_i_over_hbar(ctx, g), ctx.caps);
        return we_add(gamma0, delta_inv(ctx, rhs), ctx.caps);
    };
    bool stable = false;
    for (int it = 0; it < ctx.caps.n_max; ++it) {
        WeylElement<Scalar> next = step(gamma);
        if (next == gamma) {
            stable = true;
            break;
        }
        gamma = std::move(next);
    }
    if (!stable && !(step(gamma) == gamma))
        throw DomainError("solve_gamma: iteration did not stabilize within the caps");

    if (!delta_inv(ctx, gamma).is_zero()) throw DomainError("solve_gamma: δ⁻¹γ ≠ 0");
    if (!gamma.is_zero() && we_min_total_degree(gamma) < 3)
        throw DomainError("solve_gamma: γ has components below degree 3");
    if (!we_in_w_perp(ctx, gamma)) throw DomainError("solve_gamma: γ leaves W^⊥⊗Λ^⊥");
    for (int i = 0; i < f.l; ++i)
        if (!covariant_deriv_dir(ctx, f.l + i, gamma).is_zero())
            throw DomainError("solve_gamma: ∇_{ē_h} γ ≠ 0");

    /* curvature equation Ω̃ + ∂γ + (i/ħ)γ² − δγ = 0, exact below the degree
     * cap (δ drops the total degree by one, so the top slice is bookkeeping
     * slack rather than solved data) */
    WeylElement<Scalar> residual =
        we_add(omega_tilde,
               we_add(covariant_d(ctx, gamma), square_i_over_hbar(ctx, gamma), ctx.caps),
               ctx.caps);
    residual = we_sub(residual, delta_op(ctx, gamma), ctx.caps);
    for (const auto& [k, c] : residual.terms)
        if (2 * k.k + alpha_degree(k.alpha) <= ctx.caps.n_max - 1)
            throw DomainError("solve_gamma: curvature equation violated");

    data.gamma = std::move(gamma);
    return data;
}

}  // namespace drq
