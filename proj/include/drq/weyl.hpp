#pragma once

#include <cstdint>
#include <map>
#include <memory>

#include "drq/geometry.hpp"
#include "drq/jets.hpp"
#include "drq/parallel.hpp"

namespace drq {

/* Truncation caps: deg y = 1, deg ħ = 2; every kept term satisfies
 * k ≤ k_max and 2k + |α| ≤ n_max.  Form degree is bounded by the frame
 * size on its own.  Operations truncate eagerly; comparisons are meaningful
 * within the caps only (the documented bookkeeping slack), and (i/ħ)-fused
 * products run with internal headroom so the full window stays exact. */
struct WeylCaps {
    int k_max;
    int n_max;
};

/* caps that make ⋆ exact mod ħ^{K+1} */
inline WeylCaps caps_for_star(int K) { return {K + 1, 2 * K + 3}; }

/* y-multidegree packed 4 bits per frame index (frame size ≤ 16, exponents
 * ≤ 15 — enforced by make_weyl_context) */
inline int alpha_get(uint64_t a, int i) { return static_cast<int>((a >> (4 * i)) & 0xF); }
inline uint64_t alpha_inc(uint64_t a, int i) { return a + (uint64_t(1) << (4 * i)); }
inline uint64_t alpha_dec(uint64_t a, int i) { return a - (uint64_t(1) << (4 * i)); }
inline int alpha_degree(uint64_t a) {
    int d = 0;
    for (; a; a >>= 4) d += static_cast<int>(a & 0xF);
    return d;
}

struct WeylKey {
    int k = 0;           // ħ power
    uint32_t form = 0;   // coframe index bitmask
    uint64_t alpha = 0;  // packed y multidegree

    friend bool operator<(const WeylKey& a, const WeylKey& b) {
        if (a.k != b.k) return a.k < b.k;
        if (a.form != b.form) return a.form < b.form;
        return a.alpha < b.alpha;
    }
    friend bool operator==(const WeylKey& a, const WeylKey& b) {
        return a.k == b.k && a.form == b.form && a.alpha == b.alpha;
    }
};

inline int form_degree(uint32_t mask) { return __builtin_popcount(mask); }

/* θ^A ∧ θ^mask: 0 when A ∈ mask, else ±1 by the inversion count */
inline int insert_sign(uint32_t mask, int A) {
    if (mask & (1u << A)) return 0;
    return (__builtin_popcount(mask & ((1u << A) - 1)) % 2 == 0) ? 1 : -1;
}

/* θ^{m1} ∧ θ^{m2} */
inline int wedge_sign(uint32_t m1, uint32_t m2) {
    if (m1 & m2) return 0;
    int inv = 0;
    for (uint32_t rest = m2; rest;) {
        int b = __builtin_ctz(rest);
        rest &= rest - 1;
        inv += __builtin_popcount(m1 >> (b + 1));
    }
    return (inv % 2 == 0) ? 1 : -1;
}

/* precomputed sparsity of π and Γ plus small常量 caches */
struct WeylTables {
    std::vector<std::tuple<int, int, Scalar>> pi_nz;              // (A,B,π^{AB}≠0)
    std::vector<std::vector<std::pair<int, Scalar>>> gamma_slot;  // [A*N+B] → {(C, Γ_{A,C}^B)}
    std::vector<Scalar> small_int;                                // 0..64
    std::vector<Scalar> small_inv;                                // 1/1..1/64
    Scalar half, imag;
    std::vector<bool> direction_flat;  // all Γ_{A,·}^{·} = 0
};

struct WeylContext {
    FrameGeometry geom;
    FrameConnection conn;
    WeylCaps caps;
    FramePtr fields;  // left-invariant realization; required for GJet coefficients
    int jet_cap = 0;
    std::shared_ptr<const WeylTables> tables;

    const Frame& frame() const { return geom.frame; }
    int nvars() const { return frame().alg->nvars(); }
    const Scalar& sint(int n) const { return tables->small_int[n]; }
    const Scalar& sinv(int n) const { return tables->small_inv[n - 1]; }
};

WeylContext make_weyl_context(FrameGeometry geom, FrameConnection conn, WeylCaps caps,
                              FramePtr fields = nullptr, int jet_cap = 0);

/* --- coefficient ring adaptors (Scalar = λ-only, GJet = full jets) --- */

template <class C>
inline C coeff_zero(const WeylContext& ctx);
template <>
inline Scalar coeff_zero<Scalar>(const WeylContext& ctx) {
    return Scalar(ctx.nvars());
}
template <>
inline GJet coeff_zero<GJet>(const WeylContext& ctx) {
    return GJet(ctx.frame().alg, ctx.jet_cap);
}

template <class C>
inline C coeff_from_scalar(const WeylContext& ctx, const Scalar& s);
template <>
inline Scalar coeff_from_scalar<Scalar>(const WeylContext&, const Scalar& s) {
    return s;
}
template <>
inline GJet coeff_from_scalar<GJet>(const WeylContext& ctx, const Scalar& s) {
    return GJet(ctx.frame().alg, ctx.jet_cap, s);
}

/* frame directional derivative of a coefficient: ∂/∂λ in the ∂-directions,
 * the ē-realization in the G-directions (zero on λ-only Scalars) */
inline Scalar coeff_dirderiv(const WeylContext& ctx, int A, const Scalar& c) {
    if (A < ctx.frame().l) return c.diff(A);
    return Scalar(ctx.nvars());
}
inline GJet coeff_dirderiv(const WeylContext& ctx, int A, const GJet& c) {
    if (A < ctx.frame().l) return c.dlambda(A);
    if (!ctx.fields) throw DomainError("weyl: jet coefficients need the invariant frame");
    return ctx.fields->apply(A - ctx.frame().l, c);
}

inline Scalar coeff_mul_scalar(const Scalar& c, const Scalar& s) { return c * s; }
inline GJet coeff_mul_scalar(const GJet& c, const Scalar& s) { return c.scaled(s); }

template <class C>
struct WeylElement {
    std::map<WeylKey, C> terms;

    bool is_zero() const { return terms.empty(); }

    friend bool operator==(const WeylElement& a, const WeylElement& b) {
        return a.terms == b.terms;
    }
};

template <class C>
void we_accumulate(WeylElement<C>& into, const WeylKey& key, const C& c, const WeylCaps& caps) {
    if (c.is_zero()) return;
    if (key.k < 0) throw DomainError("weyl: negative ħ power");
    if (key.k > caps.k_max || 2 * key.k + alpha_degree(key.alpha) > caps.n_max) return;
    auto [it, fresh] = into.terms.try_emplace(key, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) into.terms.erase(it);
    }
}

template <class C>
WeylElement<C> we_add(const WeylElement<C>& a, const WeylElement<C>& b, const WeylCaps& caps) {
    WeylElement<C> r = a;
    for (const auto& [k, c] : b.terms) we_accumulate(r, k, c, caps);
    return r;
}

template <class C>
WeylElement<C> we_neg(const WeylElement<C>& a) {
    WeylElement<C> r;
    for (const auto& [k, c] : a.terms) r.terms[k] = -c;
    return r;
}

template <class C>
WeylElement<C> we_sub(const WeylElement<C>& a, const WeylElement<C>& b, const WeylCaps& caps) {
    return we_add(a, we_neg(b), caps);
}

template <class C>
WeylElement<C> we_scale(const WeylElement<C>& a, const Scalar& s) {
    WeylElement<C> r;
    if (s.is_zero()) return r;
    for (const auto& [k, c] : a.terms) {
        C p = coeff_mul_scalar(c, s);
        if (!p.is_zero()) r.terms[k] = p;
    }
    return r;
}

template <class C>
WeylElement<C> we_truncate(const WeylElement<C>& a, const WeylCaps& caps) {
    WeylElement<C> r;
    for (const auto& [k, c] : a.terms) we_accumulate(r, k, c, caps);
    return r;
}

template <class C>
int we_min_total_degree(const WeylElement<C>& a) {
    int best = -1;
    for (const auto& [k, c] : a.terms) {
        int d = 2 * k.k + alpha_degree(k.alpha);
        if (best < 0 || d < best) best = d;
    }
    return best;
}

/* membership in W^⊥⊗Λ^⊥: no y-variables dual to ē_h, no ξ^h covectors */
template <class C>
bool we_in_w_perp(const WeylContext& ctx, const WeylElement<C>& a) {
    const Frame& f = ctx.frame();
    for (const auto& [k, c] : a.terms)
        for (int i = 0; i < f.l; ++i) {
            int H = f.l + i;
            if (alpha_get(k.alpha, H) != 0 || (k.form & (1u << H))) return false;
        }
    return true;
}

inline WeylElement<GJet> we_promote(const WeylContext& ctx, const WeylElement<Scalar>& a) {
    WeylElement<GJet> r;
    for (const auto& [k, c] : a.terms) r.terms[k] = coeff_from_scalar<GJet>(ctx, c);
    return r;
}

/* σ: the center part (y = 0, form = 0) as an ħ-series */
template <class C>
std::map<int, C> we_center(const WeylElement<C>& a) {
    std::map<int, C> r;
    for (const auto& [k, c] : a.terms)
        if (k.alpha == 0 && k.form == 0) r[k.k] = c;
    return r;
}

/* --- the fiberwise Moyal product --- */

namespace detail {

/* full contraction ladder for one ordered term pair */
template <class C>
void moyal_pair(const WeylContext& ctx, const WeylKey& ka, const C& ca, const WeylKey& kb,
                const C& cb, WeylElement<C>& out) {
    int fsign = wedge_sign(ka.form, kb.form);
    if (fsign == 0) return;
    uint32_t form = ka.form | kb.form;

    struct State {
        uint64_t a1, a2;
        C coeff;
    };
    C start = ca * cb;
    if (fsign < 0) start = -start;
    std::vector<State> states{{ka.alpha, kb.alpha, std::move(start)}};

    const auto& pi_nz = ctx.tables->pi_nz;
    int jmax = std::min(alpha_degree(ka.alpha), alpha_degree(kb.alpha));
    Scalar stepfac = ctx.sint(1);
    for (int j = 0;; ++j) {
        bool scaled = !(j == 0);
        for (const State& st : states) {
            WeylKey key{ka.k + kb.k + j, form, st.a1 + st.a2};
            we_accumulate(out, key, scaled ? coeff_mul_scalar(st.coeff, stepfac) : st.coeff,
                          ctx.caps);
        }
        if (j == jmax) break;
        stepfac = stepfac * ctx.tables->half * ctx.sinv(j + 1);
        std::vector<State> next;
        next.reserve(states.size() * pi_nz.size());
        for (const State& st : states)
            for (const auto& [A, B, pab] : pi_nz) {
                int e1 = alpha_get(st.a1, A);
                if (e1 == 0) continue;
                int e2 = alpha_get(st.a2, B);
                if (e2 == 0) continue;
                next.push_back(
                    {alpha_dec(st.a1, A), alpha_dec(st.a2, B),
                     coeff_mul_scalar(st.coeff, pab * ctx.sint(e1) * ctx.sint(e2))});
            }
        if (next.empty()) break;
        states = std::move(next);
    }
}

}  // namespace detail

template <class C>
WeylElement<C> moyal_serial(const WeylContext& ctx, const WeylElement<C>& a,
                            const WeylElement<C>& b) {
    WeylElement<C> out;
    for (const auto& [ka, ca] : a.terms)
        for (const auto& [kb, cb] : b.terms) detail::moyal_pair(ctx, ka, ca, kb, cb, out);
    return out;
}

template <class C>
WeylElement<C> moyal(const WeylContext& ctx, const WeylElement<C>& a, const WeylElement<C>& b) {
    if (!parallel_enabled() || a.terms.size() < 8) return moyal_serial(ctx, a, b);
    std::vector<std::pair<const WeylKey*, const C*>> ta;
    ta.reserve(a.terms.size());
    for (const auto& [k, c] : a.terms) ta.push_back({&k, &c});
    std::size_t chunks = std::min<std::size_t>(ta.size(), 16);
    std::vector<WeylElement<C>> parts(chunks);
    parallel_for(chunks, [&](std::size_t ci) {
        for (std::size_t t = ci; t < ta.size(); t += chunks)
            for (const auto& [kb, cb] : b.terms)
                detail::moyal_pair(ctx, *ta[t].first, *ta[t].second, kb, cb, parts[ci]);
    });
    WeylElement<C> out;
    for (const auto& p : parts) out = we_add(out, p, ctx.caps);
    return out;
}

/* σ(a∘b) mod ħ^{K+1} without assembling the full product: only form-free
 * term pairs of equal y-degree j with k₁+k₂+j ≤ K can contract to the
 * center, and every ladder path then ends fully contracted. */
template <class C>
std::map<int, C> moyal_center(const WeylContext& ctx, const WeylElement<C>& a,
                              const WeylElement<C>& b, int K) {
    std::map<int, C> out;
    const auto& pi_nz = ctx.tables->pi_nz;
    for (const auto& [ka, ca] : a.terms) {
        if (ka.form != 0) continue;
        int ja = alpha_degree(ka.alpha);
        for (const auto& [kb, cb] : b.terms) {
            if (kb.form != 0 || alpha_degree(kb.alpha) != ja) continue;
            int kout = ka.k + kb.k + ja;
            if (kout > K) continue;
            struct State {
                uint64_t a1, a2;
                C coeff;
            };
            std::vector<State> states{{ka.alpha, kb.alpha, ca * cb}};
            Scalar fac = ctx.sint(1);
            for (int j = 0; j < ja && !states.empty(); ++j) {
                fac = fac * ctx.tables->half * ctx.sinv(j + 1);
                std::vector<State> next;
                for (const State& st : states)
                    for (const auto& [A, B, pab] : pi_nz) {
                        int e1 = alpha_get(st.a1, A);
                        if (e1 == 0) continue;
                        int e2 = alpha_get(st.a2, B);
                        if (e2 == 0) continue;
                        next.push_back(
                            {alpha_dec(st.a1, A), alpha_dec(st.a2, B),
                             coeff_mul_scalar(st.coeff, pab * ctx.sint(e1) * ctx.sint(e2))});
                    }
                states = std::move(next);
            }
            for (const State& st : states) {
                C v = (ja == 0) ? st.coeff : coeff_mul_scalar(st.coeff, fac);
                if (v.is_zero()) continue;
                auto [it, fresh] = out.try_emplace(kout, v);
                if (!fresh) it->second += v;
            }
        }
    }
    for (auto it = out.begin(); it != out.end();)
        it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

/* graded commutator [a,b] = a∘b − (−1)^{q_a q_b} b∘a, term-by-term so mixed
 * form degrees are handled */
template <class C>
WeylElement<C> moyal_commutator(const WeylContext& ctx, const WeylElement<C>& a,
                                const WeylElement<C>& b) {
    WeylElement<C> out;
    for (const auto& [ka, ca] : a.terms)
        for (const auto& [kb, cb] : b.terms) {
            detail::moyal_pair(ctx, ka, ca, kb, cb, out);
            int q = form_degree(ka.form) * form_degree(kb.form);
            C cba = (q % 2 == 0) ? -cb : cb;
            detail::moyal_pair(ctx, kb, cba, ka, ca, out);
        }
    return out;
}

/* multiply by i/ħ; throws when an ħ^{-1} term would survive */
template <class C>
WeylElement<C> mul_i_over_hbar(const WeylContext& ctx, const WeylElement<C>& a) {
    WeylElement<C> r;
    for (const auto& [k, c] : a.terms) {
        WeylKey key = k;
        key.k -= 1;
        we_accumulate(r, key, coeff_mul_scalar(c, ctx.tables->imag), ctx.caps);
    }
    return r;
}

/* (i/ħ)[a,b] and (i/ħ)a² fused with cap headroom: the division shifts the
 * filtration down by two, so the product must be formed above the caps or
 * the top window is silently lost. */
template <class C>
WeylElement<C> comm_i_over_hbar(const WeylContext& ctx, const WeylElement<C>& a,
                                const WeylElement<C>& b) {
    WeylContext wide = ctx;
    wide.caps.k_max += 1;
    wide.caps.n_max += 2;
    return we_truncate(mul_i_over_hbar(wide, moyal_commutator(wide, a, b)), ctx.caps);
}

template <class C>
WeylElement<C> square_i_over_hbar(const WeylContext& ctx, const WeylElement<C>& a) {
    WeylContext wide = ctx;
    wide.caps.k_max += 1;
    wide.caps.n_max += 2;
    return we_truncate(mul_i_over_hbar(wide, moyal(wide, a, a)), ctx.caps);
}

/* δa = Σ_A θ^A ∧ ∂a/∂y^A */
template <class C>
WeylElement<C> delta_op(const WeylContext& ctx, const WeylElement<C>& a) {
    const Frame& f = ctx.frame();
    WeylElement<C> r;
    for (const auto& [k, c] : a.terms)
        for (int A = 0; A < f.N; ++A) {
            int e = alpha_get(k.alpha, A);
            if (e == 0) continue;
            int s = insert_sign(k.form, A);
            if (s == 0) continue;
            WeylKey key{k.k, k.form | (1u << A), alpha_dec(k.alpha, A)};
            Scalar fac = (s < 0) ? -ctx.sint(e) : ctx.sint(e);
            we_accumulate(r, key, coeff_mul_scalar(c, fac), ctx.caps);
        }
    return r;
}

/* δ⁻¹a = Σ_A (1/(p+q)) y^A (ē_A ⌟ a) on p+q > 0, zero otherwise */
template <class C>
WeylElement<C> delta_inv(const WeylContext& ctx, const WeylElement<C>& a) {
    WeylElement<C> r;
    for (const auto& [k, c] : a.terms) {
        int p = alpha_degree(k.alpha), q = form_degree(k.form);
        if (p + q == 0) continue;
        const Scalar& inv = ctx.sinv(p + q);
        for (uint32_t rest = k.form; rest;) {
            int A = __builtin_ctz(rest);
            rest &= rest - 1;
            int s = (__builtin_popcount(k.form & ((1u << A) - 1)) % 2 == 0) ? 1 : -1;
            WeylKey key{k.k, k.form & ~(1u << A), alpha_inc(k.alpha, A)};
            Scalar fac = (s < 0) ? -inv : inv;
            we_accumulate(r, key, coeff_mul_scalar(c, fac), ctx.caps);
        }
    }
    return r;
}

/* p = q = 0 part (kept across all ħ powers so the Hodge identity is exact) */
template <class C>
WeylElement<C> we_const_part(const WeylElement<C>& a) {
    WeylElement<C> r;
    for (const auto& [k, c] : a.terms)
        if (k.alpha == 0 && k.form == 0) r.terms[k] = c;
    return r;
}

/* ∇_A without the coframe prefix: coefficient derivative plus Γ-action on
 * the y- and form-slots */
template <class C>
WeylElement<C> covariant_deriv_dir(const WeylContext& ctx, int A, const WeylElement<C>& a) {
    const Frame& f = ctx.frame();
    WeylElement<C> r;
    bool flat = ctx.tables->direction_flat[A];
    for (const auto& [k, c] : a.terms) {
        C dc = coeff_dirderiv(ctx, A, c);
        if (!dc.is_zero()) we_accumulate(r, k, dc, ctx.caps);
        if (flat) continue;
        /* y-slots: ∇_A y^B = −Γ_AC^B y^C */
        for (int B = 0; B < f.N; ++B) {
            int e = alpha_get(k.alpha, B);
            if (e == 0) continue;
            for (const auto& [Cc, gam] : ctx.tables->gamma_slot[A * f.N + B]) {
                WeylKey key{k.k, k.form, alpha_inc(alpha_dec(k.alpha, B), Cc)};
                Scalar fac = -gam * ctx.sint(e);
                we_accumulate(r, key, coeff_mul_scalar(c, fac), ctx.caps);
            }
        }
        /* form slots: θ^b → −Γ_AC^b θ^C */
        for (uint32_t rest = k.form; rest;) {
            int b = __builtin_ctz(rest);
            rest &= rest - 1;
            uint32_t without = k.form & ~(1u << b);
            int s1 = (__builtin_popcount(k.form & ((1u << b) - 1)) % 2 == 0) ? 1 : -1;
            for (const auto& [Cc, gam] : ctx.tables->gamma_slot[A * f.N + b]) {
                int s2 = insert_sign(without, Cc);
                if (s2 == 0) continue;
                WeylKey key{k.k, without | (1u << Cc), k.alpha};
                Scalar fac = (s1 * s2 < 0) ? gam : -gam;
                we_accumulate(r, key, coeff_mul_scalar(c, fac), ctx.caps);
            }
        }
    }
    return r;
}

/* ∂a = Σ_A θ^A ∧ ∇_A a */
template <class C>
WeylElement<C> covariant_d(const WeylContext& ctx, const WeylElement<C>& a) {
    const Frame& f = ctx.frame();
    WeylElement<C> r;
    for (int A = 0; A < f.N; ++A) {
        WeylElement<C> da = covariant_deriv_dir(ctx, A, a);
        for (const auto& [k, c] : da.terms) {
            int s = insert_sign(k.form, A);
            if (s == 0) continue;
            WeylKey key{k.k, k.form | (1u << A), k.alpha};
            we_accumulate(r, key, (s > 0) ? c : -c, ctx.caps);
        }
    }
    return r;
}

/* frame form (scalar coefficients) as a y-free Weyl section at ħ^k */
WeylElement<Scalar> weyl_from_form(const WeylContext& ctx, const FrameForm& w, int hbar_power);

/* R_W = (i/4)·R_{CD,AB} y^C y^D θ^A∧θ^B; the factor i keeps ∂² = (i/ħ)[R_W,·]
 * exact for the i-free fiber product */
WeylElement<Scalar> weyl_curvature_section(const WeylContext& ctx, const CurvatureTensor& R);

struct FedosovData {
    WeylContext ctx;
    CurvatureTensor curv;
    std::vector<std::pair<int, FrameForm>> omega_pert;  // ħ-power ≥ 1 pieces of Ω − ω
    WeylElement<Scalar> gamma;
};

/* Solves δγ = Ω̃ + ∂γ + (i/ħ)γ², Ω̃ = Ω − ω + R_W, by the filtration-raising
 * iteration; verifies δ⁻¹γ = 0, total degree ≥ 3, the curvature equation at
 * the caps, W^⊥⊗Λ^⊥ membership, ∇_{ē_h}γ = 0 and fixed-point stability. */
FedosovData solve_gamma(const WeylContext& ctx,
                        std::vector<std::pair<int, FrameForm>> omega_pert);

/* D = −δ + ∂ + (i/ħ)[γ,·] */
template <class C>
WeylElement<C> fedosov_D(const WeylContext& ctx, const WeylElement<C>& gamma,
                         const WeylElement<C>& a) {
    WeylElement<C> r = we_sub(covariant_d(ctx, a), delta_op(ctx, a), ctx.caps);
    return we_add(r, comm_i_over_hbar(ctx, gamma, a), ctx.caps);
}

/* parallel lift: the unique D-flat section with σ(ã) = a₀ */
template <class C>
WeylElement<C> parallel_lift(const WeylContext& ctx, const WeylElement<C>& gamma, const C& a0) {
    WeylElement<C> seed;
    we_accumulate(seed, WeylKey{}, a0, ctx.caps);
    WeylElement<C> a = seed;
    for (int it = 0; it < ctx.caps.n_max; ++it) {
        WeylElement<C> rhs =
            we_add(covariant_d(ctx, a), comm_i_over_hbar(ctx, gamma, a), ctx.caps);
        WeylElement<C> next = we_add(seed, delta_inv(ctx, rhs), ctx.caps);
        if (next == a) break;
        a = std::move(next);
    }
    return a;
}

/* a₀ ⋆ b₀ = σ(ã ∘ b̃) truncated at ħ^K */
template <class C>
std::map<int, C> star_product(const WeylContext& ctx, const WeylElement<C>& gamma, const C& a0,
                              const C& b0, int K) {
    if (ctx.caps.k_max < K + 1 || ctx.caps.n_max < 2 * K + 3)
        throw DomainError("star: caps too small for the requested ħ-order (need K+1, 2K+3)");
    WeylElement<C> la = parallel_lift(ctx, gamma, a0);
    WeylElement<C> lb = parallel_lift(ctx, gamma, b0);
    std::map<int, C> out = we_center(moyal(ctx, la, lb));
    for (auto it = out.begin(); it != out.end();)
        it = (it->first > K) ? out.erase(it) : std::next(it);
    return out;
}

}  // namespace drq
