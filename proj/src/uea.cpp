#include "drq/uea.hpp"

#include "drq/expr.hpp"

#include <sstream>

namespace drq {

UEAT UEAT::unit(AlgebraPtr alg, int slots, int kmax) {
    UEAT t(alg, slots, kmax);
    t.add_term(0, std::vector<ExpVec>(slots, ExpVec(alg->dim(), 0)), Scalar(alg->nvars(), 1));
    return t;
}

UEAT UEAT::generator(AlgebraPtr alg, int slots, int kmax, int s, int a, int k) {
    UEAT t(alg, slots, kmax);
    std::vector<ExpVec> monos(slots, ExpVec(alg->dim(), 0));
    monos[s][a] = 1;
    t.add_term(k, monos, Scalar(alg->nvars(), 1));
    return t;
}

void UEAT::add_term(int k, const std::vector<ExpVec>& monos, const Scalar& c) {
    if (c.is_zero() || k > kmax_) return;
    if (k < 0) throw DomainError("uea: negative ħ power");
    auto [it, fresh] = terms_.try_emplace(Key{k, monos}, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

UEAT UEAT::operator-() const {
    UEAT r(alg_, slots_, kmax_);
    for (const auto& [k, c] : terms_) r.terms_[k] = -c;
    return r;
}

UEAT operator+(const UEAT& a, const UEAT& b) {
    if (a.slots_ != b.slots_) throw DomainError("uea sum: slot mismatch");
    UEAT r = a;
    for (const auto& [k, c] : b.terms_) r.add_term(k.first, k.second, c);
    return r;
}

UEAT operator-(const UEAT& a, const UEAT& b) { return a + (-b); }

UEAT UEAT::scaled(const Scalar& c) const {
    UEAT r(alg_, slots_, kmax_);
    if (c.is_zero()) return r;
    for (const auto& [k, v] : terms_) {
        Scalar p = v * c;
        if (!p.is_zero()) r.terms_[k] = p;
    }
    return r;
}

UEAT UEAT::hbar_part(int k) const {
    UEAT r(alg_, slots_, 0);
    for (const auto& [key, c] : terms_)
        if (key.first == k) r.terms_[{0, key.second}] = c;
    return r;
}

UEAT UEAT::hbar_shifted(int d) const {
    UEAT r(alg_, slots_, kmax_);
    for (const auto& [key, c] : terms_) r.add_term(key.first + d, key.second, c);
    return r;
}

UEAT UEAT::diff(int v) const {
    UEAT r(alg_, slots_, kmax_);
    for (const auto& [key, c] : terms_) r.add_term(key.first, key.second, c.diff(v));
    return r;
}

UEAT UEAT::swap_slots(int s, int t) const {
    UEAT r(alg_, slots_, kmax_);
    for (const auto& [key, c] : terms_) {
        auto monos = key.second;
        std::swap(monos[s], monos[t]);
        r.add_term(key.first, monos, c);
    }
    return r;
}

UEAT UEAT::counit_slot(int s) const {
    UEAT r(alg_, slots_ - 1, kmax_);
    for (const auto& [key, c] : terms_) {
        if (expvec_degree(key.second[s]) != 0) continue;  // ε kills generators
        std::vector<ExpVec> monos;
        for (int t = 0; t < slots_; ++t)
            if (t != s) monos.push_back(key.second[t]);
        r.add_term(key.first, monos, c);
    }
    return r;
}

UEAT UEAT::coproduct_slot(int s) const {
    int n = alg_->dim();
    UEAT r(alg_, slots_ + 1, kmax_);
    for (const auto& [key, c] : terms_) {
        const ExpVec& m = key.second[s];
        /* Δ(g^e) expanded binomially per generator, slots stay PBW-ordered */
        std::vector<std::pair<ExpVec, ExpVec>> split{{ExpVec(n, 0), ExpVec(n, 0)}};
        std::vector<Scalar> coef{Scalar(alg_->nvars(), 1)};
        for (int g = 0; g < n; ++g) {
            if (m[g] == 0) continue;
            std::vector<std::pair<ExpVec, ExpVec>> nsplit;
            std::vector<Scalar> ncoef;
            /* binomial table for C(m[g], j) */
            std::vector<mpz_class> binom(m[g] + 1);
            binom[0] = 1;
            for (unsigned j = 1; j <= m[g]; ++j)
                binom[j] = binom[j - 1] * (m[g] - j + 1) / j;
            for (size_t t = 0; t < split.size(); ++t)
                for (unsigned j = 0; j <= m[g]; ++j) {
                    auto pr = split[t];
                    pr.first[g] += j;
                    pr.second[g] += m[g] - j;
                    nsplit.push_back(std::move(pr));
                    ncoef.push_back(coef[t] *
                                    Scalar(alg_->nvars(), GaussianRational(mpq_class(binom[j]))));
                }
            split = std::move(nsplit);
            coef = std::move(ncoef);
        }
        for (size_t t = 0; t < split.size(); ++t) {
            std::vector<ExpVec> monos;
            for (int u = 0; u < slots_; ++u) {
                if (u == s) {
                    monos.push_back(split[t].first);
                    monos.push_back(split[t].second);
                } else {
                    monos.push_back(key.second[u]);
                }
            }
            r.add_term(key.first, monos, c * coef[t]);
        }
    }
    return r;
}

/* straightening: multiply a PBW-normal sum by one generator on the right */
namespace {

void mono_times_gen(const AlgebraPtr& alg, const ExpVec& m, int g, const Scalar& coeff,
                    std::map<ExpVec, Scalar>& out);

void accumulate(std::map<ExpVec, Scalar>& out, const ExpVec& m, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = out.try_emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) out.erase(it);
    }
}

void mono_times_gen(const AlgebraPtr& alg, const ExpVec& m, int g, const Scalar& coeff,
                    std::map<ExpVec, Scalar>& out) {
    int n = alg->dim();
    int t = -1;
    for (int idx = n - 1; idx > g; --idx)
        if (m[idx] > 0) {
            t = idx;
            break;
        }
    if (t < 0) {
        ExpVec r = m;
        r[g] += 1;
        accumulate(out, r, coeff);
        return;
    }
    /* m = m'·x_t;   m·x_g = (m'·x_g)·x_t + m'·[x_t, x_g] */
    ExpVec mp = m;
    mp[t] -= 1;
    std::map<ExpVec, Scalar> left;
    mono_times_gen(alg, mp, g, coeff, left);
    for (const auto& [mono, c] : left) mono_times_gen(alg, mono, t, c, out);
    for (int u = 0; u < n; ++u) {
        Scalar sc = alg->bracket_coeff(t, g, u);
        if (sc.is_zero()) continue;
        mono_times_gen(alg, mp, u, coeff * sc, out);
    }
}

}  // namespace

UEAT pbw_mul_mono(const AlgebraPtr& alg, const ExpVec& u, const ExpVec& v) {
    int n = alg->dim();
    std::map<ExpVec, Scalar> acc{{u, Scalar(alg->nvars(), 1)}};
    for (int g = 0; g < n; ++g)
        for (unsigned e = 0; e < v[g]; ++e) {
            std::map<ExpVec, Scalar> next;
            for (const auto& [mono, c] : acc) mono_times_gen(alg, mono, g, c, next);
            acc = std::move(next);
        }
    UEAT r(alg, 1, 0);
    for (const auto& [mono, c] : acc) r.add_term(0, {mono}, c);
    return r;
}

UEAT operator*(const UEAT& a, const UEAT& b) {
    if (a.slots_ != b.slots_) throw DomainError("uea product: slot mismatch");
    UEAT r(a.alg_, a.slots_, a.kmax_);
    for (const auto& [ka, ca] : a.terms_)
        for (const auto& [kb, cb] : b.terms_) {
            int k = ka.first + kb.first;
            if (k > a.kmax_) continue;
            /* slotwise straightened products, then the tensor cross product */
            std::vector<UEAT> slot_prods;
            for (int s = 0; s < a.slots_; ++s)
                slot_prods.push_back(pbw_mul_mono(a.alg_, ka.second[s], kb.second[s]));
            std::vector<std::pair<std::vector<ExpVec>, Scalar>> cross{
                {std::vector<ExpVec>{}, ca * cb}};
            for (int s = 0; s < a.slots_; ++s) {
                std::vector<std::pair<std::vector<ExpVec>, Scalar>> next;
                for (const auto& [monos, c] : cross)
                    for (const auto& [skey, sc] : slot_prods[s].terms()) {
                        auto m2 = monos;
                        m2.push_back(skey.second[0]);
                        next.push_back({std::move(m2), c * sc});
                    }
                cross = std::move(next);
            }
            for (const auto& [monos, c] : cross) r.add_term(k, monos, c);
        }
    return r;
}

UEAT UEAT::inverse() const {
    UEAT one = unit(alg_, slots_, kmax_);
    UEAT n = *this - one;
    for (const auto& [key, c] : n.terms_)
        if (key.first == 0) throw DomainError("uea inverse: leading term is not the unit");
    UEAT inv = one, power = one;
    for (int j = 1; j <= kmax_; ++j) {
        power = power * n;
        if (power.is_zero()) break;
        inv = (j % 2 == 0) ? inv + power : inv - power;
    }
    return inv;
}

std::vector<UEAT> UEAT::weight_residual() const {
    std::vector<UEAT> out;
    for (int a = 0; a < alg_->cartan_dim(); ++a) {
        UEAT h(alg_, slots_, kmax_);
        for (int s = 0; s < slots_; ++s) h = h + generator(alg_, slots_, kmax_, s, a);
        out.push_back(h * *this - *this * h);
    }
    return out;
}

UEAT embed3(const UEAT& f, int p, int q) {
    const AlgebraPtr& alg = f.algebra();
    UEAT r(alg, 3, f.kmax());
    for (const auto& [key, c] : f.terms()) {
        std::vector<ExpVec> monos(3, ExpVec(alg->dim(), 0));
        monos[p] = key.second[0];
        monos[q] = key.second[1];
        r.add_term(key.first, monos, c);
    }
    return r;
}

UEAT shifted_embed(const UEAT& f, int total_slots, const std::vector<int>& positions,
                   int shift_slot, int sign) {
    const AlgebraPtr& alg = f.algebra();
    int l = alg->cartan_dim(), kmax = f.kmax();
    UEAT out(alg, total_slots, kmax);
    Scalar half = Scalar(alg->nvars(), 1) / Scalar(alg->nvars(), 2);
    /* Σ_j (1/j!)(±1/2)^j ħ^j Σ_{i₁..i_j} ∂^j f ⊗ h_{i₁}..h_{i_j} */
    std::vector<std::pair<UEAT, ExpVec>> layer{{f, ExpVec(alg->dim(), 0)}};
    Scalar fac(alg->nvars(), 1);
    for (int j = 0; j <= kmax; ++j) {
        for (const auto& [df, hmono] : layer)
            for (const auto& [key, c] : df.terms()) {
                int k = key.first + j;
                if (k > kmax) continue;
                std::vector<ExpVec> monos(total_slots, ExpVec(alg->dim(), 0));
                for (size_t s = 0; s < positions.size(); ++s) monos[positions[s]] = key.second[s];
                monos[shift_slot] = hmono;
                out.add_term(k, monos, c * fac);
            }
        if (j == kmax) break;
        fac = fac * half * Scalar(alg->nvars(), j + 1).inv();
        if (sign < 0) fac = -fac;
        std::vector<std::pair<UEAT, ExpVec>> next;
        for (const auto& [df, hmono] : layer)
            for (int i = 0; i < l; ++i) {
                UEAT d = df.diff(i);
                if (d.is_zero()) continue;
                ExpVec h2 = hmono;
                h2[i] += 1;
                next.push_back({std::move(d), std::move(h2)});
            }
        if (next.empty()) break;
        layer = std::move(next);
    }
    return out;
}

UEAT r_as_tensor(const MultiVector& r, int kmax) {
    const AlgebraPtr& alg = r.algebra();
    UEAT t(alg, 2, kmax);
    for (const auto& [idx, c] : r.terms()) {
        std::vector<ExpVec> ab(2, ExpVec(alg->dim(), 0)), ba(2, ExpVec(alg->dim(), 0));
        ab[0][idx[0]] = 1;
        ab[1][idx[1]] = 1;
        ba[0][idx[1]] = 1;
        ba[1][idx[0]] = 1;
        t.add_term(0, ab, c);
        t.add_term(0, ba, -c);
    }
    return t;
}

namespace {

UEAT eval_ueat(const Expr& e, const AlgebraPtr& alg, int kmax) {
    int nv = alg->nvars();
    switch (e.kind) {
        case Expr::Kind::Number:
            return UEAT::unit(alg, 1, kmax).scaled(Scalar(nv, GaussianRational(mpq_class(e.number))));
        case Expr::Kind::Imag:
            return UEAT::unit(alg, 1, kmax).scaled(Scalar::imag_unit(nv));
        case Expr::Kind::Hbar:
            return UEAT::unit(alg, 1, kmax).hbar_shifted(1);
        case Expr::Kind::LambdaVar:
            if (e.var_index >= nv) throw ParseError(e.pos, "variable index out of range");
            return UEAT::unit(alg, 1, kmax).scaled(Scalar::variable(nv, e.var_index));
        case Expr::Kind::XVar:
            if (e.var_index >= alg->dim()) throw ParseError(e.pos, "generator index out of range");
            return UEAT::generator(alg, 1, kmax, 0, e.var_index);
        case Expr::Kind::Add:
            return eval_ueat(*e.kids[0], alg, kmax) + eval_ueat(*e.kids[1], alg, kmax);
        case Expr::Kind::Sub:
            return eval_ueat(*e.kids[0], alg, kmax) - eval_ueat(*e.kids[1], alg, kmax);
        case Expr::Kind::Mul:
            return eval_ueat(*e.kids[0], alg, kmax) * eval_ueat(*e.kids[1], alg, kmax);
        case Expr::Kind::Div: {
            UEAT d = eval_ueat(*e.kids[1], alg, kmax);
            if (d.terms().size() != 1) throw ParseError(e.kids[1]->pos, "division by a non-central element");
            const auto& [key, c] = *d.terms().begin();
            if (key.first != 0 || expvec_degree(key.second[0]) != 0)
                throw ParseError(e.kids[1]->pos, "division by a non-central element");
            return eval_ueat(*e.kids[0], alg, kmax).scaled(c.inv());
        }
        case Expr::Kind::Neg:
            return -eval_ueat(*e.kids[0], alg, kmax);
        case Expr::Kind::Pow: {
            UEAT base = eval_ueat(*e.kids[0], alg, kmax);
            UEAT r = UEAT::unit(alg, 1, kmax);
            for (unsigned t = 0; t < e.exponent; ++t) r = r * base;
            return r;
        }
    }
    throw DomainError("eval_ueat: bad node");
}

}  // namespace

UEAT parse_ueat(std::string_view text, const AlgebraPtr& alg, int kmax) {
    ExprPtr ast = parse_expression(text, /*allow_x=*/true, /*allow_hbar=*/true);
    return eval_ueat(*ast, alg, kmax);
}

GJet realize_mono(const LeftInvariantFrame& fields, const ExpVec& mono, const GJet& f) {
    GJet r = f;
    /* (uv)̄ = ū∘v̄: apply the rightmost PBW factor first */
    for (int g = static_cast<int>(mono.size()) - 1; g >= 0; --g)
        for (unsigned e = 0; e < mono[g]; ++e) r = fields.apply(g, r);
    return r;
}

std::map<int, GJet> realize(const UEAT& t, const LeftInvariantFrame& fields,
                            const std::vector<GJet>& args) {
    if (static_cast<int>(args.size()) != t.slots()) throw DomainError("realize: arity mismatch");
    std::map<int, GJet> out;
    for (const auto& [key, c] : t.terms()) {
        GJet prod(args[0].algebra(), args[0].cap(), c);
        for (int s = 0; s < t.slots(); ++s) {
            if (prod.is_zero()) break;
            prod = prod * realize_mono(fields, key.second[s], args[s]);
        }
        if (prod.is_zero()) continue;
        auto [it, fresh] = out.try_emplace(key.first, prod);
        if (!fresh) it->second += prod;
    }
    for (auto it = out.begin(); it != out.end();)
        it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

std::string UEAT::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [key, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")";
        if (key.first > 0) os << "*hbar^" << key.first;
        for (int s = 0; s < slots_; ++s) {
            os << (s == 0 ? "*[" : "|");
            bool any = false;
            for (int g = 0; g < alg_->dim(); ++g)
                for (unsigned e = 0; e < key.second[s][g]; ++e) {
                    if (any) os << ".";
                    os << alg_->label(g);
                    any = true;
                }
            if (!any) os << "1";
        }
        os << "]";
    }
    return os.str();
}

}  // namespace drq
