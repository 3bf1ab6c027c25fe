#include "drq/geometry.hpp"

#include <algorithm>

#include "drq/parallel.hpp"

namespace drq {

namespace {

int sort_sign(std::vector<int>& idx) {
    int sign = 1;
    for (size_t i = 1; i < idx.size(); ++i)
        for (size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
            if (idx[j - 1] == idx[j]) return 0;
            std::swap(idx[j - 1], idx[j]);
            sign = -sign;
        }
    return sign;
}

}  // namespace

void FrameForm::add_term(const std::vector<int>& idx, const Scalar& c) {
    if (static_cast<int>(idx.size()) != degree_) throw DomainError("frame form: degree mismatch");
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(idx, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

FrameForm FrameForm::operator-() const {
    FrameForm r(frame_, degree_);
    for (const auto& [k, c] : terms_) r.terms_[k] = -c;
    return r;
}

FrameForm operator+(const FrameForm& a, const FrameForm& b) {
    if (a.degree_ != b.degree_) throw DomainError("frame form sum: degree mismatch");
    FrameForm r = a;
    for (const auto& [k, c] : b.terms_) r.add_term(k, c);
    return r;
}

FrameForm operator-(const FrameForm& a, const FrameForm& b) { return a + (-b); }

FrameForm FrameForm::scaled(const Scalar& c) const {
    FrameForm r(frame_, degree_);
    if (c.is_zero()) return r;
    for (const auto& [k, v] : terms_) {
        Scalar p = v * c;
        if (!p.is_zero()) r.terms_[k] = p;
    }
    return r;
}

std::string FrameForm::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [k, c] : terms_) {
        std::string mono;
        for (int A : k) {
            if (!mono.empty()) mono += "^";
            mono += (A < frame_.l) ? "dl" + std::to_string(A + 1) : "xi{" + frame_.alg->label(A - frame_.l) + "}";
        }
        if (mono.empty()) mono = "1";
        if (!out.empty()) out += " + ";
        out += "(" + c.str() + ")*" + mono;
    }
    return out;
}

FrameForm frame_wedge(const FrameForm& a, const FrameForm& b) {
    FrameForm r(a.frame(), a.degree() + b.degree());
    for (const auto& [ka, ca] : a.terms())
        for (const auto& [kb, cb] : b.terms()) {
            std::vector<int> idx = ka;
            idx.insert(idx.end(), kb.begin(), kb.end());
            int sign = sort_sign(idx);
            if (sign == 0) continue;
            Scalar c = ca * cb;
            if (sign < 0) c = -c;
            r.add_term(idx, c);
        }
    return r;
}

FrameForm frame_d(const FrameForm& a) {
    const Frame& f = a.frame();
    FrameForm r(f, a.degree() + 1);
    for (const auto& [J, c] : a.terms()) {
        /* coefficient derivatives in the dλ directions */
        for (int i = 0; i < f.l; ++i) {
            Scalar dc = c.diff(i);
            if (dc.is_zero()) continue;
            std::vector<int> idx;
            idx.push_back(i);
            idx.insert(idx.end(), J.begin(), J.end());
            int sign = sort_sign(idx);
            if (sign == 0) continue;
            r.add_term(idx, sign < 0 ? -dc : dc);
        }
        /* Maurer–Cartan terms on the invariant coframe slots */
        for (size_t k = 0; k < J.size(); ++k) {
            if (J[k] < f.l) continue;  // d(dλ) = 0
            int slot_sign = (k % 2 == 0) ? 1 : -1;  // (−1)^{k} for slot k (0-based)
            for (int b = 0; b < f.n; ++b)
                for (int cidx = b + 1; cidx < f.n; ++cidx) {
                    Scalar sc = f.alg->bracket_coeff(b, cidx, J[k] - f.l);
                    if (sc.is_zero()) continue;
                    /* dξ^a = −Σ_{b<c} c_bc^a ξ^b∧ξ^c, spliced at slot k */
                    std::vector<int> arranged;
                    for (size_t t = 0; t < k; ++t) arranged.push_back(J[t]);
                    arranged.push_back(f.l + b);
                    arranged.push_back(f.l + cidx);
                    for (size_t t = k + 1; t < J.size(); ++t) arranged.push_back(J[t]);
                    int sign = sort_sign(arranged);
                    if (sign == 0) continue;
                    Scalar v = c * sc;
                    if (slot_sign * sign > 0) v = -v;  // the −c_bc^a of the MC rule
                    r.add_term(arranged, v);
                }
        }
    }
    return r;
}

FrameForm frame_contract(int A, const FrameForm& a) {
    FrameForm r(a.frame(), std::max(a.degree() - 1, 0));
    for (const auto& [J, c] : a.terms())
        for (size_t k = 0; k < J.size(); ++k) {
            if (J[k] != A) continue;
            std::vector<int> idx;
            for (size_t t = 0; t < J.size(); ++t)
                if (t != k) idx.push_back(J[t]);
            r.add_term(idx, (k % 2 == 0) ? c : -c);
        }
    return r;
}

FrameForm FrameGeometry::omega_form() const {
    FrameForm w(frame, 2);
    for (int A = 0; A < frame.N; ++A)
        for (int B = A + 1; B < frame.N; ++B) w.add_term({A, B}, symplectic.at(A, B));
    return w;
}

FrameGeometry build_frame_geometry(const DynamicalR& R) {
    if (!is_r_matrix(R)) throw NotAnRMatrix();
    Frame f(R.algebra);
    int nv = f.alg->nvars();
    ScalarMatrix pi(f.N, f.N, nv);
    for (int i = 0; i < f.l; ++i) {
        pi.at(i, f.l + i) = Scalar(nv, -1);  // π(dλ^i, ξ^{h_i}) = −1
        pi.at(f.l + i, i) = Scalar(nv, 1);
    }
    ScalarMatrix rho = r_component_matrix(R);
    for (int a = 0; a < f.n; ++a)
        for (int b = 0; b < f.n; ++b)
            if (!rho.at(a, b).is_zero()) pi.at(f.l + a, f.l + b) = rho.at(a, b);

    auto inv = pi.inverse();
    if (!inv) throw DomainError("build_frame_geometry: degenerate Poisson structure (restrict first)");
    ScalarMatrix omega(f.N, f.N, nv);
    for (int A = 0; A < f.N; ++A)
        for (int B = 0; B < f.N; ++B) omega.at(A, B) = -inv->at(A, B);

    FrameGeometry g{f, pi, omega};
    if (!pi.is_antisymmetric() || !omega.is_antisymmetric())
        throw DomainError("build_frame_geometry: antisymmetry violated");
    if (!frame_d(g.omega_form()).is_zero())
        throw DomainError("build_frame_geometry: dω ≠ 0");
    for (int i = 0; i < f.l; ++i)
        for (int B = 0; B < f.N; ++B) {
            Scalar expect(nv, (B == i) ? 1 : 0);
            if (!(omega.at(f.l + i, B) - expect).is_zero())
                throw DomainError("build_frame_geometry: ω(ē_h,·) ≠ dλ");
        }
    return g;
}

bool FrameConnection::frame_torsion_free(const Frame& f) const {
    for (int A = 0; A < N_; ++A)
        for (int B = 0; B < N_; ++B)
            for (int C = 0; C < N_; ++C)
                if (!(at(A, B, C) - at(B, A, C) - f.structure(A, B, C)).is_zero()) return false;
    return true;
}

FrameConnection base_connection(const Frame& f) {
    int nv = f.alg->nvars();
    /* reductive check: [𝔥, e-block] stays in the e-block */
    for (int a = 0; a < f.l; ++a)
        for (int b = f.l; b < f.n; ++b)
            for (int c = 0; c < f.l; ++c)
                if (!f.alg->bracket_coeff(a, b, c).is_zero())
                    throw DomainError("base_connection: complement is not reductive");
    FrameConnection g(f);
    Scalar half = Scalar(nv, 1) / Scalar(nv, 2);
    for (int a = 0; a < f.n; ++a)
        for (int b = 0; b < f.n; ++b) {
            bool a_h = a < f.l, b_h = b < f.l;
            if (a_h && b_h) continue;
            for (int c = 0; c < f.n; ++c) {
                Scalar sc = f.alg->bracket_coeff(a, b, c);
                if (sc.is_zero()) continue;
                if (a_h && !b_h)
                    g.at(f.l + a, f.l + b, f.l + c) = sc;        // ∇⁰_{ē_h} ē_e = [h,e]↑
                else if (!a_h && !b_h)
                    g.at(f.l + a, f.l + b, f.l + c) = sc * half;  // ∇⁰_{ē_e} ē_e' = ½[e,e']↑
                /* ∇⁰_{ē_e} ē_h = 0 */
            }
        }
    if (!g.frame_torsion_free(f)) throw DomainError("base_connection: torsion check failed");
    return g;
}

Scalar nabla_omega(const FrameConnection& c, const FrameGeometry& g, int A, int B, int C) {
    const Frame& f = g.frame;
    Scalar v = (A < f.l) ? g.symplectic.at(B, C).diff(A) : Scalar(f.alg->nvars());
    for (int D = 0; D < f.N; ++D) {
        if (!c.at(A, B, D).is_zero()) v -= c.at(A, B, D) * g.symplectic.at(D, C);
        if (!c.at(A, C, D).is_zero()) v -= c.at(A, C, D) * g.symplectic.at(B, D);
    }
    return v;
}

FrameConnection symplectize(const FrameConnection& nabla0, const FrameGeometry& g) {
    const Frame& f = g.frame;
    int nv = f.alg->nvars();
    if (!nabla0.frame_torsion_free(f)) throw DomainError("symplectize: base connection has torsion");
    Scalar third = Scalar(nv, 1) / Scalar(nv, 3);
    FrameConnection nabla = nabla0;
    for (int A = 0; A < f.N; ++A)
        for (int B = 0; B < f.N; ++B) {
            /* RHS_C = ⅓[(∇⁰_A ω)(B,C) + (∇⁰_B ω)(A,C)]; S^D = Σ_C π^{DC} RHS_C */
            std::vector<Scalar> rhs(f.N, Scalar(nv));
            for (int C = 0; C < f.N; ++C)
                rhs[C] = (nabla_omega(nabla0, g, A, B, C) + nabla_omega(nabla0, g, B, A, C)) * third;
            for (int D = 0; D < f.N; ++D) {
                Scalar s(nv);
                for (int C = 0; C < f.N; ++C)
                    if (!g.poisson.at(D, C).is_zero() && !rhs[C].is_zero())
                        s += g.poisson.at(D, C) * rhs[C];
                if (!s.is_zero()) nabla.at(A, B, D) += s;
            }
        }
    if (!nabla.frame_torsion_free(f)) throw DomainError("symplectize: result has torsion");
    for (int A = 0; A < f.N; ++A)
        for (int B = 0; B < f.N; ++B)
            for (int C = 0; C < f.N; ++C)
                if (!nabla_omega(nabla, g, A, B, C).is_zero())
                    throw DomainError("symplectize: ∇ω ≠ 0");
    /* ē_h stays parallel in every direction */
    for (int A = 0; A < f.N; ++A)
        for (int i = 0; i < f.l; ++i)
            for (int C = 0; C < f.N; ++C)
                if (!nabla.at(A, f.l + i, C).is_zero())
                    throw DomainError("symplectize: ∇ ē_h ≠ 0");
    return nabla;
}

static CurvatureTensor curvature_impl(const FrameConnection& c, const FrameGeometry& g,
                                      bool parallel) {
    const Frame& f = g.frame;
    int N = f.N, nv = f.alg->nvars();
    CurvatureTensor R;
    R.N = N;
    R.upper.assign(N * N * N * N, Scalar(nv));
    R.lowered.assign(N * N * N * N, Scalar(nv));

    auto assemble_d = [&](std::size_t Dv) {
        int D = static_cast<int>(Dv);
        for (int A = 0; A < N; ++A)
            for (int B = A + 1; B < N; ++B) {
                for (int E = 0; E < N; ++E) {
                    Scalar v(nv);
                    if (A < f.l) v += c.at(B, D, E).diff(A);
                    if (B < f.l) v -= c.at(A, D, E).diff(B);
                    for (int F = 0; F < N; ++F) {
                        if (!c.at(B, D, F).is_zero()) v += c.at(B, D, F) * c.at(A, F, E);
                        if (!c.at(A, D, F).is_zero()) v -= c.at(A, D, F) * c.at(B, F, E);
                        Scalar str = f.structure(A, B, F);
                        if (!str.is_zero()) v -= str * c.at(F, D, E);
                    }
                    if (!v.is_zero()) {
                        R.upper[((E * N + D) * N + A) * N + B] = v;
                        R.upper[((E * N + D) * N + B) * N + A] = -v;
                    }
                }
                for (int C2 = 0; C2 < N; ++C2) {
                    Scalar low(nv);
                    for (int E = 0; E < N; ++E) {
                        const Scalar& up = R.upper[((E * N + D) * N + A) * N + B];
                        if (!up.is_zero()) low += g.symplectic.at(C2, E) * up;
                    }
                    if (!low.is_zero()) {
                        R.lowered[((C2 * N + D) * N + A) * N + B] = low;
                        R.lowered[((C2 * N + D) * N + B) * N + A] = -low;
                    }
                }
            }
    };
    if (parallel)
        parallel_for(static_cast<std::size_t>(N), assemble_d);
    else
        for (int D = 0; D < N; ++D) assemble_d(static_cast<std::size_t>(D));
    return R;
}

CurvatureTensor curvature_serial(const FrameConnection& c, const FrameGeometry& g) {
    return curvature_impl(c, g, false);
}

CurvatureTensor curvature_parallel(const FrameConnection& c, const FrameGeometry& g) {
    return curvature_impl(c, g, true);
}

CurvatureTensor curvature(const FrameConnection& c, const FrameGeometry& g) {
    CurvatureTensor R = curvature_impl(c, g, true);
    const Frame& f = g.frame;
    int N = f.N;
    for (int C = 0; C < N; ++C)
        for (int D = 0; D < N; ++D)
            for (int A = 0; A < N; ++A)
                for (int B = 0; B < N; ++B) {
                    if (!(R.low(C, D, A, B) - R.low(D, C, A, B)).is_zero())
                        throw DomainError("curvature: (C,D) symmetry violated");
                    Scalar bianchi = R.low(C, D, A, B) + R.low(C, A, B, D) + R.low(C, B, D, A);
                    if (!bianchi.is_zero()) throw DomainError("curvature: Bianchi identity violated");
                    bool any_h = f.is_h(C) || f.is_h(D) || f.is_h(A) || f.is_h(B);
                    if (any_h && !R.low(C, D, A, B).is_zero())
                        throw DomainError("curvature: H-direction component survives");
                }
    /* ∇_{ē_h} R = 0: coefficients are λ-only, so this is a Christoffel identity */
    for (int i = 0; i < f.l; ++i) {
        int H = f.l + i;
        for (int C = 0; C < N; ++C)
            for (int D = 0; D < N; ++D)
                for (int A = 0; A < N; ++A)
                    for (int B = 0; B < N; ++B) {
                        Scalar v(f.alg->nvars());
                        for (int E = 0; E < N; ++E) {
                            if (!c.at(H, C, E).is_zero()) v -= c.at(H, C, E) * R.low(E, D, A, B);
                            if (!c.at(H, D, E).is_zero()) v -= c.at(H, D, E) * R.low(C, E, A, B);
                            if (!c.at(H, A, E).is_zero()) v -= c.at(H, A, E) * R.low(C, D, E, B);
                            if (!c.at(H, B, E).is_zero()) v -= c.at(H, B, E) * R.low(C, D, A, E);
                        }
                        if (!v.is_zero()) throw DomainError("curvature: ∇_{ē_h} R ≠ 0");
                    }
    }
    return R;
}

Restriction reductive_complement(const DynamicalR& R, const std::vector<GaussianRational>& lambda0) {
    RankFlags rf = rank_flags(R);
    if (!rf.nondegenerate) throw DomainError("reductive_complement: nondegenerate r required");
    const AlgebraPtr& alg = R.algebra;
    int l = alg->cartan_dim(), n = alg->dim(), m = n - l, nv = alg->nvars();
    ScalarMatrix rho = r_component_matrix(R);
    /* full vectors r(λ₀)^# e^j_*, h-components included */
    std::vector<std::vector<GaussianRational>> ws;
    for (int j = 0; j < m; ++j) {
        std::vector<GaussianRational> w(n);
        for (int b = 0; b < n; ++b) w[b] = rho.at(l + j, b).eval(lambda0);
        ws.push_back(std::move(w));
    }
    std::vector<std::vector<GaussianRational>> basis;
    for (auto w : ws) {
        for (const auto& b : basis) {
            int lead = -1;
            for (int cidx = 0; cidx < n; ++cidx)
                if (!b[cidx].is_zero()) {
                    lead = cidx;
                    break;
                }
            if (lead >= 0 && !w[lead].is_zero()) {
                GaussianRational fac = w[lead] / b[lead];
                for (int cidx = 0; cidx < n; ++cidx) w[cidx] -= fac * b[cidx];
            }
        }
        bool zero = true;
        for (const auto& v : w)
            if (!v.is_zero()) zero = false;
        if (!zero) basis.push_back(w);
    }
    if (static_cast<int>(basis.size()) != m)
        throw DomainError("reductive_complement: rank drop at λ₀ (choose another base point)");
    ScalarMatrix P(n, n, nv);
    for (int i = 0; i < l; ++i) P.at(i, i) = Scalar(nv, 1);
    for (int j = 0; j < m; ++j)
        for (int b = 0; b < n; ++b) P.at(b, l + j) = Scalar(nv, basis[j][b]);
    if (P.rank() != n) throw DomainError("reductive_complement: 𝔥 + 𝔪 does not span 𝔤 at λ₀");
    Restriction res = rebase(R, P);
    /* [𝔥, 𝔪] ⊆ 𝔪 in the adapted basis */
    for (int a = 0; a < l; ++a)
        for (int b = l; b < n; ++b)
            for (int cidx = 0; cidx < l; ++cidx)
                if (!res.subalgebra->bracket_coeff(a, b, cidx).is_zero())
                    throw DomainError("reductive_complement: complement is not ad_𝔥-stable");
    return res;
}

}  // namespace drq
