#include "drq/jets.hpp"

namespace drq {

GJet::GJet(AlgebraPtr alg, int cap, const Scalar& c) : alg_(std::move(alg)), cap_(cap) {
    if (!c.is_zero()) terms_[Mono(alg_->dim(), 0)] = c;
}

GJet GJet::coordinate(AlgebraPtr alg, int cap, int b) {
    GJet j(alg, cap);
    Mono m(alg->dim(), 0);
    m.at(b) = 1;
    j.add_term(m, Scalar(alg->nvars(), 1));
    return j;
}

bool GJet::is_x_free() const {
    for (const auto& [m, c] : terms_)
        if (mono_degree(m) > 0) return false;
    return true;
}

void GJet::add_term(const Mono& m, const Scalar& c) {
    if (c.is_zero() || static_cast<int>(mono_degree(m)) > cap_) return;
    auto [it, fresh] = terms_.try_emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Scalar GJet::value_at_identity() const { return coeff(Mono(alg_->dim(), 0)); }

Scalar GJet::coeff(const Mono& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar(alg_->nvars()) : it->second;
}

GJet GJet::operator-() const {
    GJet r(alg_, cap_);
    for (const auto& [m, c] : terms_) r.terms_[m] = -c;
    return r;
}

GJet operator+(const GJet& a, const GJet& b) {
    GJet r = a;
    for (const auto& [m, c] : b.terms_) r.add_term(m, c);
    return r;
}

GJet operator-(const GJet& a, const GJet& b) { return a + (-b); }

GJet operator*(const GJet& a, const GJet& b) {
    GJet r(a.alg_, a.cap_);
    int n = a.alg_->dim();
    Mono m(n, 0);
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) {
            unsigned deg = mono_degree(ma) + mono_degree(mb);
            if (static_cast<int>(deg) > a.cap_) continue;
            for (int v = 0; v < n; ++v) m[v] = ma[v] + mb[v];
            r.add_term(m, ca * cb);
        }
    return r;
}

GJet GJet::scaled(const Scalar& c) const {
    GJet r(alg_, cap_);
    if (c.is_zero()) return r;
    for (const auto& [m, v] : terms_) {
        Scalar p = v * c;
        if (!p.is_zero()) r.terms_[m] = p;
    }
    return r;
}

GJet GJet::dx(int b) const {
    GJet r(alg_, cap_);
    for (const auto& [m, c] : terms_) {
        if (m[b] == 0) continue;
        Mono d = m;
        d[b] -= 1;
        r.add_term(d, c * Scalar(alg_->nvars(), m[b]));
    }
    return r;
}

GJet GJet::dlambda(int v) const {
    GJet r(alg_, cap_);
    for (const auto& [m, c] : terms_) r.add_term(m, c.diff(v));
    return r;
}

bool GJet::equal_mod_degree(const GJet& a, const GJet& b, int d) {
    for (const auto& [m, c] : a.terms_)
        if (static_cast<int>(mono_degree(m)) <= d && !(c - b.coeff(m)).is_zero()) return false;
    for (const auto& [m, c] : b.terms_)
        if (static_cast<int>(mono_degree(m)) <= d && !(c - a.coeff(m)).is_zero()) return false;
    return true;
}

std::string GJet::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : terms_) {
        std::string mono;
        for (size_t v = 0; v < m.size(); ++v) {
            if (m[v] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += "x" + std::to_string(v + 1);
            if (m[v] > 1) mono += "^" + std::to_string(m[v]);
        }
        std::string piece = "(" + c.str() + ")";
        if (!mono.empty()) piece += "*" + mono;
        if (!out.empty()) out += "+";
        out += piece;
    }
    return out;
}

LeftInvariantFrame::LeftInvariantFrame(AlgebraPtr alg, int cap) : alg_(std::move(alg)), cap_(cap) {
    int n = alg_->dim(), nv = alg_->nvars();
    auto zero = [&] { return GJet(alg_, cap_); };
    auto ident = [&] {
        std::vector<GJet> id(n * n, zero());
        for (int a = 0; a < n; ++a) id[a * n + a] = GJet(alg_, cap_, Scalar(nv, 1));
        return id;
    };
    auto mul = [&](const std::vector<GJet>& x, const std::vector<GJet>& y) {
        std::vector<GJet> r(n * n, zero());
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                GJet s = zero();
                for (int k = 0; k < n; ++k) s += x[a * n + k] * y[k * n + b];
                r[a * n + b] = s;
            }
        return r;
    };
    /* ad_x as a matrix of degree-1 jets: (ad_x)^c_b = Σ_a x^a c_ab^c */
    std::vector<GJet> ad(n * n, zero());
    for (int c = 0; c < n; ++c)
        for (int b = 0; b < n; ++b) {
            GJet s = zero();
            for (int a = 0; a < n; ++a) {
                Scalar sc = alg_->bracket_coeff(a, b, c);
                if (!sc.is_zero()) s += GJet::coordinate(alg_, cap_, a).scaled(sc);
            }
            ad[c * n + b] = s;
        }
    /* T = (1−exp(−ad_x))/ad_x = Σ_k (−1)^k ad^k/(k+1)! */
    std::vector<GJet> t = ident(), pw = ident();
    Scalar fact(nv, 1);
    for (int k = 1; k <= cap_; ++k) {
        pw = mul(pw, ad);
        fact = fact * Scalar(nv, k + 1).inv();
        Scalar coef = (k % 2 == 0) ? fact : -fact;
        bool all_zero = true;
        for (int e = 0; e < n * n; ++e) {
            GJet piece = pw[e].scaled(coef);
            if (!piece.is_zero()) all_zero = false;
            t[e] += piece;
        }
        if (all_zero) break;  // nilpotent ad terminates early
    }
    /* M = T^{-1} via the Neumann series in N = T − I (no constant term) */
    std::vector<GJet> nmat = t;
    for (int a = 0; a < n; ++a) nmat[a * n + a] -= GJet(alg_, cap_, Scalar(nv, 1));
    std::vector<GJet> inv = ident(), acc = ident();
    for (int k = 1; k <= cap_; ++k) {
        acc = mul(acc, nmat);
        bool all_zero = true;
        for (int e = 0; e < n * n; ++e) {
            if (acc[e].is_zero()) continue;
            all_zero = false;
            if (k % 2 == 0)
                inv[e] += acc[e];
            else
                inv[e] -= acc[e];
        }
        if (all_zero) break;
    }
    m_ = std::move(inv);
}

GJet LeftInvariantFrame::apply(int a, const GJet& f) const {
    int n = alg_->dim();
    GJet r(alg_, cap_);
    for (int b = 0; b < n; ++b) {
        GJet df = f.dx(b);
        if (df.is_zero()) continue;
        r += matrix(b, a) * df;
    }
    return r;
}

bool LeftInvariantFrame::bracket_residual_zero(int max_degree_checked) const {
    int n = alg_->dim();
    /* check on all monomial jets of degree ≤ max_degree_checked + 1 */
    std::vector<GJet> monos;
    GJet one(alg_, cap_, Scalar(alg_->nvars(), 1));
    monos.push_back(one);
    size_t lo = 0;
    for (int d = 1; d <= cap_; ++d) {
        size_t hi = monos.size();
        for (size_t t = lo; t < hi; ++t)
            for (int b = 0; b < n; ++b) monos.push_back(monos[t] * GJet::coordinate(alg_, cap_, b));
        lo = hi;
    }
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (const GJet& f : monos) {
                GJet lhs = apply(a, apply(b, f)) - apply(b, apply(a, f));
                GJet rhs(alg_, cap_);
                for (int c = 0; c < n; ++c) {
                    Scalar sc = alg_->bracket_coeff(a, b, c);
                    if (!sc.is_zero()) rhs += apply(c, f).scaled(sc);
                }
                if (!GJet::equal_mod_degree(lhs, rhs, max_degree_checked)) return false;
            }
    return true;
}

FramePtr left_invariant_fields(AlgebraPtr alg, int cap) {
    return std::make_shared<LeftInvariantFrame>(std::move(alg), cap);
}

GJet eval_jet(const Expr& e, const AlgebraPtr& alg, int cap) {
    int nv = alg->nvars();
    switch (e.kind) {
        case Expr::Kind::Number:
            return GJet(alg, cap, Scalar(nv, GaussianRational(mpq_class(e.number))));
        case Expr::Kind::Imag:
            return GJet(alg, cap, Scalar::imag_unit(nv));
        case Expr::Kind::Hbar:
            throw ParseError(e.pos, "ħ not allowed in jet context");
        case Expr::Kind::LambdaVar:
            if (e.var_index >= nv) throw ParseError(e.pos, "variable index out of range");
            return GJet(alg, cap, Scalar::variable(nv, e.var_index));
        case Expr::Kind::XVar:
            if (e.var_index >= alg->dim()) throw ParseError(e.pos, "variable index out of range");
            return GJet::coordinate(alg, cap, e.var_index);
        case Expr::Kind::Add:
            return eval_jet(*e.kids[0], alg, cap) + eval_jet(*e.kids[1], alg, cap);
        case Expr::Kind::Sub:
            return eval_jet(*e.kids[0], alg, cap) - eval_jet(*e.kids[1], alg, cap);
        case Expr::Kind::Mul:
            return eval_jet(*e.kids[0], alg, cap) * eval_jet(*e.kids[1], alg, cap);
        case Expr::Kind::Div: {
            GJet d = eval_jet(*e.kids[1], alg, cap);
            if (!d.is_x_free()) throw ParseError(e.kids[1]->pos, "division by an x-dependent jet");
            Scalar s = d.value_at_identity();
            if (s.is_zero()) throw ParseError(e.kids[1]->pos, "division by zero");
            return eval_jet(*e.kids[0], alg, cap).scaled(s.inv());
        }
        case Expr::Kind::Neg:
            return -eval_jet(*e.kids[0], alg, cap);
        case Expr::Kind::Pow: {
            GJet base = eval_jet(*e.kids[0], alg, cap);
            GJet r(alg, cap, Scalar(nv, 1));
            for (unsigned t = 0; t < e.exponent; ++t) r = r * base;
            return r;
        }
    }
    throw DomainError("eval_jet: bad node");
}

GJet parse_jet(std::string_view text, const AlgebraPtr& alg, int cap) {
    ExprPtr ast = parse_expression(text, /*allow_x=*/true);
    return eval_jet(*ast, alg, cap);
}

}  // namespace drq
