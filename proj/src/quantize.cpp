#include "drq/quantize.hpp"

#include "drq/parallel.hpp"

namespace drq {

StarEngine StarEngine::build(const DynamicalR& R, int K,
                             std::vector<std::pair<int, FrameForm>> omega_pert,
                             int jet_cap_override) {
    FrameGeometry geom = build_frame_geometry(R);
    FrameConnection nabla = symplectize(base_connection(geom.frame), geom);
    WeylCaps caps = caps_for_star(K);
    WeylContext sctx = make_weyl_context(geom, nabla, caps);
    FedosovData data = solve_gamma(sctx, std::move(omega_pert));
    int cap = (jet_cap_override > 0) ? jet_cap_override : 2 * K + 2;
    FramePtr fields = left_invariant_fields(R.algebra, cap);
    if (!fields->bracket_residual_zero(cap - 1))
        throw DomainError("invariant frame bracket validation failed");
    WeylContext jctx = make_weyl_context(geom, nabla, caps, fields, cap);
    WeylElement<GJet> gj = we_promote(jctx, data.gamma);
    return StarEngine{R, std::move(data), std::move(jctx), std::move(gj), std::move(fields), K,
                      cap};
}

GJet StarEngine::jet(const std::string& text) const { return parse_jet(text, r.algebra, jet_cap); }

GJet StarEngine::jet_scalar(const Scalar& s) const { return GJet(r.algebra, jet_cap, s); }

WeylElement<GJet> StarEngine::lift(const GJet& a) const {
    return parallel_lift(jctx, gamma_jets, a);
}

JetSeries StarEngine::star(const GJet& f, const GJet& g) const {
    return star_lifted(lift(f), lift(g));
}

JetSeries StarEngine::star_lifted(const WeylElement<GJet>& fl, const WeylElement<GJet>& gl) const {
    return moyal_center(jctx, fl, gl, hbar_order);
}

namespace {

/* strictly graded list of x-monomials with degree ≤ d */
std::vector<Mono> monomials_upto(int n, int d) {
    std::vector<Mono> out{Mono(n, 0)};
    size_t lo = 0;
    for (int deg = 1; deg <= d; ++deg) {
        size_t hi = out.size();
        for (size_t t = lo; t < hi; ++t)
            for (int v = 0; v < n; ++v) {
                /* extend only with v ≥ the largest used index to avoid dupes */
                bool ok = true;
                for (int u = v + 1; u < n; ++u)
                    if (out[t][u] > 0) ok = false;
                if (!ok) continue;
                Mono m = out[t];
                m[v] += 1;
                out.push_back(m);
            }
        lo = hi;
    }
    return out;
}

/* PBW monomials (as ExpVec) of filtration degree ≤ d — same index set */
std::vector<ExpVec> pbw_upto(int n, int d) {
    std::vector<Mono> ms = monomials_upto(n, d);
    std::vector<ExpVec> out;
    out.reserve(ms.size());
    for (auto& m : ms) out.push_back(ExpVec(m.begin(), m.end()));
    return out;
}

}  // namespace

UEAT extract_f(const StarEngine& engine) {
    const AlgebraPtr& alg = engine.r.algebra;
    int n = alg->dim(), nv = alg->nvars(), K = engine.hbar_order;
    int deg = 2 * K;
    std::vector<Mono> monos = monomials_upto(n, deg);
    std::vector<ExpVec> pbw = pbw_upto(n, deg);
    int dim = static_cast<int>(monos.size());

    /* lifts of the monomial jets (the λ-free restriction of ⋆) */
    std::vector<WeylElement<GJet>> lifts(dim);
    parallel_for(static_cast<std::size_t>(dim), [&](std::size_t t) {
        GJet jet(alg, engine.jet_cap);
        jet.add_term(monos[t], Scalar(nv, 1));
        lifts[t] = engine.lift(jet);
    });

    /* star values at the identity jet, per ħ-order */
    std::vector<std::vector<JetSeries>> svals(dim, std::vector<JetSeries>(dim));
    parallel_for(static_cast<std::size_t>(dim), [&](std::size_t a) {
        for (int b = 0; b < dim; ++b) svals[a][b] = engine.star_lifted(lifts[a], lifts[b]);
    });

    /* pairing matrix P[α][u] = (ū x^α)(0), constant rationals */
    ScalarMatrix pairing(dim, dim, nv);
    for (int a = 0; a < dim; ++a) {
        GJet xa(alg, engine.jet_cap);
        xa.add_term(monos[a], Scalar(nv, 1));
        for (int u = 0; u < dim; ++u)
            pairing.at(a, u) = realize_mono(*engine.fields, pbw[u], xa).value_at_identity();
    }
    auto pinv = pairing.inverse();
    if (!pinv) throw DomainError("extract_f: singular identity-jet pairing (cap inconsistency)");

    UEAT f(alg, 2, K);
    for (int k = 0; k <= K; ++k) {
        ScalarMatrix s(dim, dim, nv);
        bool any = false;
        for (int a = 0; a < dim; ++a)
            for (int b = 0; b < dim; ++b) {
                auto it = svals[a][b].find(k);
                if (it == svals[a][b].end()) continue;
                s.at(a, b) = it->second.value_at_identity();
                if (!s.at(a, b).is_zero()) any = true;
            }
        if (!any) continue;
        ScalarMatrix c = *pinv * s * pinv->transposed();
        for (int u = 0; u < dim; ++u)
            for (int v = 0; v < dim; ++v)
                if (!c.at(u, v).is_zero()) f.add_term(k, {pbw[u], pbw[v]}, c.at(u, v));
    }

    /* the solved operator must reproduce ⋆ as whole jets: this is the
     * left-invariant-bidifferential form of the pure-G products.  The
     * realization table ū(x^α) is built once (λ-free jets). */
    std::map<ExpVec, int> pbw_index;
    for (int u = 0; u < dim; ++u) pbw_index[pbw[u]] = u;
    std::vector<std::vector<GJet>> rtab(dim, std::vector<GJet>(dim, GJet(alg, engine.jet_cap)));
    parallel_for(static_cast<std::size_t>(dim), [&](std::size_t u) {
        for (int a = 0; a < dim; ++a) {
            GJet xa(alg, engine.jet_cap);
            xa.add_term(monos[a], Scalar(nv, 1));
            rtab[u][a] = realize_mono(*engine.fields, pbw[u], xa);
        }
    });
    std::vector<int> bad(dim, 0);
    parallel_for(static_cast<std::size_t>(dim), [&](std::size_t a) {
        for (int b = 0; b < dim; ++b) {
            JetSeries fs;
            for (const auto& [key, c] : f.terms()) {
                const GJet& ju = rtab[pbw_index.at(key.second[0])][a];
                const GJet& jv = rtab[pbw_index.at(key.second[1])][b];
                if (ju.is_zero() || jv.is_zero()) continue;
                GJet prod = (ju * jv).scaled(c);
                if (prod.is_zero()) continue;
                auto [it, fresh] = fs.try_emplace(key.first, prod);
                if (!fresh) it->second += prod;
            }
            if (!jet_series_zero(jet_series_sub(jet_series_trunc(fs, K), svals[a][b], K)))
                bad[a] = 1;
        }
    });
    for (int a = 0; a < dim; ++a)
        if (bad[a]) throw DomainError("extract_f: operator does not reproduce the star product");
    return f;
}

bool QuantizationReport::ok() const {
    for (const auto& w : weight)
        if (!w.is_zero()) return false;
    return normal_left.is_zero() && normal_right.is_zero() && quantization.is_zero() &&
           shifted_cocycle.is_zero();
}

QuantizationReport quantization_check(const UEAT& f, const DynamicalR& R) {
    int K = f.kmax();
    QuantizationReport rep{f.weight_residual(),
                           f.counit_slot(0) - UEAT::unit(f.algebra(), 1, K),
                           f.counit_slot(1) - UEAT::unit(f.algebra(), 1, K),
                           UEAT(),
                           UEAT()};
    UEAT f1 = f.hbar_part(1);
    rep.quantization = f1 - f1.swap_slots(0, 1) - r_as_tensor(R.r, 0);
    UEAT lhs = f.coproduct_slot(0) * shifted_embed(f, 3, {0, 1}, 2, -1);
    UEAT rhs = f.coproduct_slot(1) * shifted_embed(f, 3, {1, 2}, 0, +1);
    rep.shifted_cocycle = lhs - rhs;
    return rep;
}

UEAT f_to_r_matrix(const UEAT& f) {
    return f.swap_slots(0, 1).inverse() * f;
}

/* Symmetrized QDYBE for R = F²¹⁻¹F¹² = 1 + ħr + O(ħ²).  The classical part
 * of the residual is Σ[r^{ij},r^{kl}] ∓ Alt(dr); only the shift assignment
 * below cancels it against the CDYBE (the opposite assignment leaves
 * −2·Alt(dr) at ħ², which the tests pin as a negative control). */
UEAT qdybe_residual(const UEAT& f) {
    UEAT r = f_to_r_matrix(f);
    UEAT r12m = shifted_embed(r, 3, {0, 1}, 2, -1), r12p = shifted_embed(r, 3, {0, 1}, 2, +1);
    UEAT r13m = shifted_embed(r, 3, {0, 2}, 1, -1), r13p = shifted_embed(r, 3, {0, 2}, 1, +1);
    UEAT r23m = shifted_embed(r, 3, {1, 2}, 0, -1), r23p = shifted_embed(r, 3, {1, 2}, 0, +1);
    return r12p * r13m * r23p - r23m * r13p * r12m;
}

UEAT equivalence_transform(const UEAT& f, const UEAT& t) {
    if (t.slots() != 1) throw DomainError("equivalence: T must be a single-slot series");
    int K = f.kmax();
    const AlgebraPtr& alg = f.algebra();
    /* T = 1 (mod ħ), ε(T) = 1, zero weight */
    UEAT t0 = t.hbar_part(0);
    if (!(t0 == UEAT::unit(alg, 1, 0))) throw DomainError("equivalence: T ≠ 1 mod ħ");
    if (!(t.counit_slot(0) == UEAT::unit(alg, 0, K).hbar_shifted(0)))
        throw DomainError("equivalence: ε(T) ≠ 1");
    for (const auto& w : t.weight_residual())
        if (!w.is_zero()) throw DomainError("equivalence: T is not zero-weight");
    UEAT dt_inv = t.inverse().coproduct_slot(0);
    UEAT t1 = shifted_embed(t, 2, {0}, 1, -1);  // T₁(λ − ½ħh⁽²⁾)
    UEAT t2 = shifted_embed(t, 2, {1}, 0, +1);  // T₂(λ + ½ħh⁽¹⁾)
    return dt_inv * f * t1 * t2;
}

}  // namespace drq
