#include "drq/dynr.hpp"

#include <algorithm>

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

AlgebroidVector AlgebroidVector::partial(AlgebraPtr alg, int i) {
    if (i < 0 || i >= alg->cartan_dim()) throw DomainError("partial: index out of range");
    AlgebroidVector v(alg, 1);
    v.add_term({i}, Scalar(alg->nvars(), 1));
    return v;
}

AlgebroidVector AlgebroidVector::embed(const MultiVector& m) {
    const AlgebraPtr& alg = m.algebra();
    int l = alg->cartan_dim();
    AlgebroidVector v(alg, m.degree());
    for (const auto& [k, c] : m.terms()) {
        std::vector<int> idx = k;
        for (int& a : idx) a += l;
        v.add_term(idx, c);
    }
    return v;
}

void AlgebroidVector::add_term(const std::vector<int>& idx, const Scalar& c) {
    if (static_cast<int>(idx.size()) != degree_) throw DomainError("add_term: degree mismatch");
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(idx, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

AlgebroidVector AlgebroidVector::operator-() const {
    AlgebroidVector r(alg_, degree_);
    for (const auto& [k, c] : terms_) r.terms_[k] = -c;
    return r;
}

AlgebroidVector operator+(const AlgebroidVector& a, const AlgebroidVector& b) {
    if (a.alg_ != b.alg_ || a.degree_ != b.degree_) throw DomainError("algebroid sum: mismatch");
    AlgebroidVector r = a;
    for (const auto& [k, c] : b.terms_) r.add_term(k, c);
    return r;
}

AlgebroidVector operator-(const AlgebroidVector& a, const AlgebroidVector& b) { return a + (-b); }

AlgebroidVector AlgebroidVector::scaled(const Scalar& c) const {
    AlgebroidVector r(alg_, degree_);
    if (c.is_zero()) return r;
    for (const auto& [k, v] : terms_) {
        Scalar p = v * c;
        if (!p.is_zero()) r.terms_[k] = p;
    }
    return r;
}

std::string AlgebroidVector::str() const {
    if (terms_.empty()) return "0";
    int l = alg_->cartan_dim();
    std::string out;
    for (const auto& [k, c] : terms_) {
        std::string mono;
        for (int a : k) {
            if (!mono.empty()) mono += "^";
            mono += (a < l) ? "d" + std::to_string(a + 1) : alg_->label(a - l);
        }
        if (mono.empty()) mono = "1";
        if (!out.empty()) out += " + ";
        out += "(" + c.str() + ")*" + mono;
    }
    return out;
}

AlgebroidVector algebroid_wedge(const AlgebroidVector& u, const AlgebroidVector& v) {
    if (u.algebra() != v.algebra()) throw DomainError("algebroid wedge: algebra mismatch");
    int N = u.frame_size();
    int deg = u.degree() + v.degree();
    AlgebroidVector r(u.algebra(), deg);
    if (deg > N) return r;
    for (const auto& [ku, cu] : u.terms())
        for (const auto& [kv, cv] : v.terms()) {
            std::vector<int> idx = ku;
            idx.insert(idx.end(), kv.begin(), kv.end());
            int sign = sort_sign(idx);
            if (sign == 0) continue;
            Scalar c = cu * cv;
            if (sign < 0) c = -c;
            r.add_term(idx, c);
        }
    return r;
}

AlgebroidVector algebroid_schouten(const AlgebroidVector& u, const AlgebroidVector& v) {
    if (u.algebra() != v.algebra()) throw DomainError("algebroid schouten: algebra mismatch");
    const AlgebraPtr& alg = u.algebra();
    int l = alg->cartan_dim();
    int p = u.degree(), q = v.degree();
    AlgebroidVector r(alg, std::max(p + q - 1, 0));

    auto emit = [&](std::vector<int> idx, Scalar c, int sign) {
        int s = sort_sign(idx);
        if (s == 0 || c.is_zero()) return;
        if (s * sign < 0) c = -c;
        r.add_term(idx, c);
    };

    for (const auto& [ku, cu] : u.terms())
        for (const auto& [kv, cv] : v.terms()) {
            /* frame-bracket part: Σ_{ij} (-1)^{i+j}[u_i,v_j]∧U∖i∧V∖j */
            for (int i = 0; i < p; ++i) {
                if (ku[i] < l) continue;  // [∂, frame] = 0
                for (int j = 0; j < q; ++j) {
                    if (kv[j] < l) continue;
                    int slot_sign = ((i + j) % 2 == 0) ? 1 : -1;
                    for (int c = 0; c < alg->dim(); ++c) {
                        Scalar sc = alg->bracket_coeff(ku[i] - l, kv[j] - l, c);
                        if (sc.is_zero()) continue;
                        std::vector<int> idx;
                        idx.push_back(c + l);
                        for (int t = 0; t < p; ++t)
                            if (t != i) idx.push_back(ku[t]);
                        for (int t = 0; t < q; ++t)
                            if (t != j) idx.push_back(kv[t]);
                        emit(std::move(idx), cu * cv * sc, slot_sign);
                    }
                }
            }
            /* anchor on the second coefficient: f·[U,g]∧V,
             * [U,g] = Σ_i (-1)^{p-i} (a(u_i)g) U∖i  (1-based i) */
            for (int i = 0; i < p; ++i) {
                if (ku[i] >= l) continue;
                Scalar dg = cv.diff(ku[i]);
                if (dg.is_zero()) continue;
                int sgn = ((p - (i + 1)) % 2 == 0) ? 1 : -1;
                std::vector<int> idx;
                for (int t = 0; t < p; ++t)
                    if (t != i) idx.push_back(ku[t]);
                idx.insert(idx.end(), kv.begin(), kv.end());
                emit(std::move(idx), cu * dg, sgn);
            }
            /* anchor on the first coefficient: −(−1)^{(p−1)(q−1)} g·[V,f]∧U */
            for (int j = 0; j < q; ++j) {
                if (kv[j] >= l) continue;
                Scalar df = cu.diff(kv[j]);
                if (df.is_zero()) continue;
                int sgn = ((q - (j + 1)) % 2 == 0) ? 1 : -1;
                if (((p - 1) * (q - 1)) % 2 == 0) sgn = -sgn;
                std::vector<int> idx;
                for (int t = 0; t < q; ++t)
                    if (t != j) idx.push_back(kv[t]);
                idx.insert(idx.end(), ku.begin(), ku.end());
                emit(std::move(idx), cv * df, sgn);
            }
        }
    return r;
}

AlgebroidVector lambda_section(const DynamicalR& R) {
    const AlgebraPtr& alg = R.algebra;
    int l = alg->cartan_dim();
    AlgebroidVector lam = AlgebroidVector::embed(R.r);
    for (int i = 0; i < l; ++i) {
        AlgebroidVector h = AlgebroidVector::embed(MultiVector::basis(alg, i));
        lam = lam + algebroid_wedge(h, AlgebroidVector::partial(alg, i));
    }
    return lam;
}

MultiVector cdybe_residual(const DynamicalR& R) {
    const AlgebraPtr& alg = R.algebra;
    MultiVector res(alg, 3);
    for (int i = 0; i < alg->cartan_dim(); ++i)
        res += wedge(MultiVector::basis(alg, i), R.r.diff(i));
    MultiVector rr = schouten_bracket(R.r, R.r);
    res += rr.scaled(Scalar(alg->nvars(), 1) / Scalar(alg->nvars(), 2));
    return res;
}

std::vector<MultiVector> zero_weight_residual(const DynamicalR& R) {
    std::vector<MultiVector> out;
    for (int i = 0; i < R.algebra->cartan_dim(); ++i)
        out.push_back(schouten_bracket(MultiVector::basis(R.algebra, i), R.r));
    return out;
}

AlgebroidVector lambda_self_bracket(const DynamicalR& R) {
    AlgebroidVector lam = lambda_section(R);
    return algebroid_schouten(lam, lam);
}

bool is_r_matrix(const DynamicalR& R) {
    if (!cdybe_residual(R).is_zero()) return false;
    for (const auto& w : zero_weight_residual(R))
        if (!w.is_zero()) return false;
    return true;
}

ScalarMatrix r_component_matrix(const DynamicalR& R) {
    int n = R.algebra->dim(), nv = R.algebra->nvars();
    ScalarMatrix rho(n, n, nv);
    for (const auto& [k, c] : R.r.terms()) {
        rho.at(k[0], k[1]) = c;
        rho.at(k[1], k[0]) = -c;
    }
    return rho;
}

RankFlags rank_flags(const DynamicalR& R) {
    if (!is_r_matrix(R)) throw NotAnRMatrix();
    const AlgebraPtr& alg = R.algebra;
    int l = alg->cartan_dim(), n = alg->dim(), m = n - l, nv = alg->nvars();
    ScalarMatrix rho = r_component_matrix(R);
    ScalarMatrix c(m, m, nv);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) c.at(i, j) = rho.at(l + i, l + j);
    int rank = c.rank();
    bool nondeg = (rank == m);
    bool split = true;
    for (int i = 0; i < l && split; ++i) {
        ScalarMatrix aug(m + 1, m, nv);
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) aug.at(a, b) = c.at(a, b);
        for (int b = 0; b < m; ++b) aug.at(m, b) = rho.at(i, l + b);
        if (aug.rank() != rank) split = false;
    }
    return {rank, nondeg, split};
}

Restriction rebase(const DynamicalR& R, const ScalarMatrix& P) {
    const AlgebraPtr& alg = R.algebra;
    int l = alg->cartan_dim(), n = alg->dim(), nv = alg->nvars();
    int dim1 = P.cols();

    auto col = [&](int A) {
        std::vector<Scalar> v(n, Scalar(nv));
        for (int a = 0; a < n; ++a) v[a] = P.at(a, A);
        return v;
    };
    auto sub = std::make_shared<LieAlgebra>(dim1, l);
    for (int A = 0; A < dim1; ++A)
        for (int B = A + 1; B < dim1; ++B) {
            std::vector<Scalar> br = alg->bracket(col(A), col(B));
            ScalarMatrix rhs(n, 1, nv);
            for (int a = 0; a < n; ++a) rhs.at(a, 0) = br[a];
            auto sol = solve_exact(P, rhs);
            if (!sol) throw DomainError("rebase: span is not closed under the bracket");
            for (int C = 0; C < dim1; ++C)
                if (!sol->at(C, 0).is_zero()) sub->set_bracket(A, B, C, sol->at(C, 0));
        }
    auto diag = sub->validate();
    if (!diag.ok()) throw DomainError("rebase: subalgebra validation failed");

    /* express r in the new basis: solve Σ σ_{AB} P_A∧P_B = r */
    std::vector<std::pair<int, int>> new_pairs, old_pairs;
    for (int A = 0; A < dim1; ++A)
        for (int B = A + 1; B < dim1; ++B) new_pairs.push_back({A, B});
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) old_pairs.push_back({a, b});
    ScalarMatrix E(static_cast<int>(old_pairs.size()), static_cast<int>(new_pairs.size()), nv);
    for (size_t row = 0; row < old_pairs.size(); ++row) {
        auto [a, b] = old_pairs[row];
        for (size_t c2 = 0; c2 < new_pairs.size(); ++c2) {
            auto [A, B] = new_pairs[c2];
            E.at(static_cast<int>(row), static_cast<int>(c2)) =
                P.at(a, A) * P.at(b, B) - P.at(b, A) * P.at(a, B);
        }
    }
    ScalarMatrix rvec(static_cast<int>(old_pairs.size()), 1, nv);
    for (size_t row = 0; row < old_pairs.size(); ++row)
        rvec.at(static_cast<int>(row), 0) = R.r.coeff({old_pairs[row].first, old_pairs[row].second});
    auto sigma = solve_exact(E, rvec);
    if (!sigma) throw NotSplittable();

    MultiVector r1(sub, 2);
    for (size_t c2 = 0; c2 < new_pairs.size(); ++c2)
        r1.add_term({new_pairs[c2].first, new_pairs[c2].second}, sigma->at(static_cast<int>(c2), 0));
    return {sub, DynamicalR(sub, r1), P};
}

Restriction restrict_to_g1(const DynamicalR& R, const std::vector<GaussianRational>& lambda0) {
    RankFlags rf = rank_flags(R);
    if (!rf.splittable) throw NotSplittable();
    const AlgebraPtr& alg = R.algebra;
    int l = alg->cartan_dim(), n = alg->dim(), m = n - l, nv = alg->nvars();

    ScalarMatrix rho = r_component_matrix(R);
    /* e-projections of r(λ₀)^# e^j_*: the evaluated c-block rows */
    std::vector<std::vector<GaussianRational>> rows;
    for (int j = 0; j < m; ++j) {
        std::vector<GaussianRational> row(m);
        for (int b = 0; b < m; ++b) row[b] = rho.at(l + j, l + b).eval(lambda0);
        rows.push_back(std::move(row));
    }
    /* echelon reduction over ℚ(i) */
    std::vector<std::vector<GaussianRational>> basis_e;
    for (auto row : rows) {
        for (const auto& b : basis_e) {
            int lead = -1;
            for (int c = 0; c < m; ++c)
                if (!b[c].is_zero()) {
                    lead = c;
                    break;
                }
            if (lead >= 0 && !row[lead].is_zero()) {
                GaussianRational f = row[lead] / b[lead];
                for (int c = 0; c < m; ++c) row[c] -= f * b[c];
            }
        }
        bool zero = true;
        for (const auto& v : row)
            if (!v.is_zero()) zero = false;
        if (!zero) basis_e.push_back(row);
    }
    int k = static_cast<int>(basis_e.size());
    if (k != rf.rank) throw DomainError("restrict_to_g1: rank drop at λ₀ (choose another base point)");

    int dim1 = l + k;
    ScalarMatrix P(n, dim1, nv);
    for (int i = 0; i < l; ++i) P.at(i, i) = Scalar(nv, 1);
    for (int j = 0; j < k; ++j)
        for (int b = 0; b < m; ++b) P.at(l + b, l + j) = Scalar(nv, basis_e[j][b]);

    Restriction res = rebase(R, P);
    RankFlags rf1 = rank_flags(res.restricted);
    if (!rf1.nondegenerate) throw DomainError("restrict_to_g1: restriction is not nondegenerate");
    return res;
}

void GaugeElement::validate(const LieAlgebra& g) const {
    int n = g.dim(), nv = g.nvars();
    if (static_cast<int>(log.size()) != n) throw DomainError("gauge: coordinate count mismatch");
    for (int i = 0; i < g.cartan_dim(); ++i) {
        std::vector<Scalar> h(n, Scalar(nv));
        h[i] = Scalar(nv, 1);
        for (const Scalar& c : g.bracket(h, log))
            if (!c.is_zero()) throw DomainError("gauge: log is not 𝔥-centralizing");
    }
    ScalarMatrix ad = ad_matrix(g, log);
    ScalarMatrix pw = ScalarMatrix::identity(n, nv);
    for (int k = 0; k < nilpotency; ++k) pw = pw * ad;
    if (!pw.is_zero()) throw DomainError("gauge: ad_f is not nilpotent at the declared order");
}

ScalarMatrix ad_matrix(const LieAlgebra& g, const std::vector<Scalar>& f) {
    int n = g.dim(), nv = g.nvars();
    ScalarMatrix m(n, n, nv);
    for (int b = 0; b < n; ++b) {
        std::vector<Scalar> xb(n, Scalar(nv));
        xb[b] = Scalar(nv, 1);
        std::vector<Scalar> fb = g.bracket(f, xb);
        for (int c = 0; c < n; ++c) m.at(c, b) = fb[c];
    }
    return m;
}

MultiVector gauge_adjoint(const GaugeElement& g, const MultiVector& u) {
    const AlgebraPtr& alg = u.algebra();
    int n = alg->dim(), nv = alg->nvars();
    ScalarMatrix ad = ad_matrix(*alg, g.log);
    /* exp(ad_f), exact by nilpotency */
    ScalarMatrix expm = ScalarMatrix::identity(n, nv);
    ScalarMatrix pw = ScalarMatrix::identity(n, nv);
    Scalar fact(nv, 1);
    for (int k = 1; k <= g.nilpotency; ++k) {
        pw = pw * ad;
        fact = fact * Scalar(nv, k).inv();
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) expm.at(a, b) += pw.at(a, b) * fact;
    }
    MultiVector out(alg, u.degree());
    for (const auto& [k, c] : u.terms()) {
        MultiVector prod = MultiVector::scalar(alg, c);
        for (int a : k) {
            std::vector<Scalar> img(n, Scalar(nv));
            for (int b = 0; b < n; ++b) img[b] = expm.at(b, a);
            prod = wedge(prod, MultiVector::from_vector(alg, img));
        }
        out += prod;
    }
    return out;
}

DynamicalR gauge_transform(const DynamicalR& R, const GaugeElement& g) {
    const AlgebraPtr& alg = R.algebra;
    g.validate(*alg);
    int n = alg->dim(), l = alg->cartan_dim(), nv = alg->nvars();
    bool input_ok = is_r_matrix(R);

    MultiVector rg = gauge_adjoint(g, R.r);
    ScalarMatrix ad = ad_matrix(*alg, g.log);
    for (int i = 0; i < l; ++i) {
        /* (∂_i g) g^{-1} = Σ_k ad_f^k (∂_i f) / (k+1)! */
        std::vector<Scalar> term(n, Scalar(nv));
        for (int a = 0; a < n; ++a) term[a] = g.log[a].diff(i);
        std::vector<Scalar> acc = term;
        Scalar fact(nv, 1);
        for (int k = 1; k <= g.nilpotency; ++k) {
            std::vector<Scalar> next(n, Scalar(nv));
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) next[a] += ad.at(a, b) * term[b];
            term = std::move(next);
            fact = fact * Scalar(nv, k + 1).inv();
            for (int a = 0; a < n; ++a) acc[a] += term[a] * fact;
        }
        rg -= wedge(MultiVector::basis(alg, i), MultiVector::from_vector(alg, acc));
    }
    DynamicalR out(alg, rg);
    if (input_ok && !is_r_matrix(out))
        throw DomainError("gauge_transform: residuals failed to vanish on the gauge image");
    return out;
}

MultiVector delta_r(const DynamicalR& R, const MultiVector& tau, bool check_weight) {
    const AlgebraPtr& alg = R.algebra;
    if (check_weight)
        for (int i = 0; i < alg->cartan_dim(); ++i)
            if (!schouten_bracket(MultiVector::basis(alg, i), tau).is_zero())
                throw DomainError("delta_r: cochain is not zero-weight");
    MultiVector out(alg, tau.degree() + 1);
    for (int i = 0; i < alg->cartan_dim(); ++i)
        out += wedge(MultiVector::basis(alg, i), tau.diff(i));
    out += schouten_bracket(R.r, tau);
    return out;
}

}  // namespace drq
