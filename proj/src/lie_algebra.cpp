#include "drq/lie_algebra.hpp"

#include <algorithm>
#include <sstream>

namespace drq {

LieAlgebra::LieAlgebra(int dim, int cartan_dim, std::vector<std::string> labels)
    : dim_(dim), cartan_(cartan_dim), labels_(std::move(labels)) {
    if (cartan_ < 0 || cartan_ > dim_) throw DomainError("cartan_dim out of range");
    if (labels_.empty()) {
        for (int a = 0; a < dim_; ++a)
            labels_.push_back(a < cartan_ ? "h" + std::to_string(a + 1)
                                          : "e" + std::to_string(a - cartan_ + 1));
    }
    if (static_cast<int>(labels_.size()) != dim_) throw DomainError("label count mismatch");
}

void LieAlgebra::set_bracket(int a, int b, int c, const Scalar& coeff) {
    if (a < 0 || b < 0 || c < 0 || a >= dim_ || b >= dim_ || c >= dim_)
        throw DomainError("set_bracket: index out of range");
    if (a == b) throw DomainError("set_bracket: [x,x] components must be zero");
    if (!coeff.is_constant() && !coeff.is_zero())
        throw DomainError("structure constants must be λ-free");
    if (a > b) {
        set_bracket(b, a, c, -coeff);
        return;
    }
    if (coeff.is_zero())
        brackets_[{a, b}].erase(c);
    else
        brackets_[{a, b}][c] = coeff;
}

Scalar LieAlgebra::bracket_coeff(int a, int b, int c) const {
    if (a == b) return Scalar(nvars());
    bool flip = a > b;
    if (flip) std::swap(a, b);
    auto it = brackets_.find({a, b});
    if (it == brackets_.end()) return Scalar(nvars());
    auto jt = it->second.find(c);
    if (jt == it->second.end()) return Scalar(nvars());
    return flip ? -jt->second : jt->second;
}

std::vector<Scalar> LieAlgebra::bracket(const std::vector<Scalar>& v,
                                        const std::vector<Scalar>& w) const {
    std::vector<Scalar> out(dim_, Scalar(nvars()));
    for (int a = 0; a < dim_; ++a) {
        if (v[a].is_zero()) continue;
        for (int b = 0; b < dim_; ++b) {
            if (w[b].is_zero() || a == b) continue;
            for (int c = 0; c < dim_; ++c) {
                Scalar s = bracket_coeff(a, b, c);
                if (!s.is_zero()) out[c] += v[a] * w[b] * s;
            }
        }
    }
    return out;
}

LieAlgebra::Diagnostics LieAlgebra::validate() const {
    Diagnostics d;
    auto basis_vec = [&](int a) {
        std::vector<Scalar> v(dim_, Scalar(nvars()));
        v[a] = Scalar(nvars(), 1);
        return v;
    };
    for (int a = 0; a < dim_; ++a)
        for (int b = a + 1; b < dim_; ++b)
            for (int c = b + 1; c < dim_; ++c) {
                auto j = bracket(basis_vec(a), bracket(basis_vec(b), basis_vec(c)));
                auto t = bracket(basis_vec(b), bracket(basis_vec(c), basis_vec(a)));
                auto u = bracket(basis_vec(c), bracket(basis_vec(a), basis_vec(b)));
                bool bad = false;
                for (int k = 0; k < dim_; ++k)
                    if (!(j[k] + t[k] + u[k]).is_zero()) bad = true;
                if (bad) {
                    std::ostringstream os;
                    os << "jacobi(" << labels_[a] << "," << labels_[b] << "," << labels_[c] << ")";
                    d.jacobi_violations.push_back(os.str());
                }
            }
    for (int a = 0; a < cartan_; ++a)
        for (int b = a + 1; b < cartan_; ++b)
            for (int c = 0; c < dim_; ++c)
                if (!bracket_coeff(a, b, c).is_zero()) {
                    d.abelian_violations.push_back("[" + labels_[a] + "," + labels_[b] + "] != 0");
                    break;
                }
    return d;
}

/* --- MultiVector --- */

MultiVector MultiVector::basis(AlgebraPtr alg, int a) {
    MultiVector m(alg, 1);
    m.add_term({a}, Scalar(alg->nvars(), 1));
    return m;
}

MultiVector MultiVector::from_vector(AlgebraPtr alg, const std::vector<Scalar>& v) {
    MultiVector m(alg, 1);
    for (int a = 0; a < alg->dim(); ++a)
        if (!v[a].is_zero()) m.add_term({a}, v[a]);
    return m;
}

MultiVector MultiVector::scalar(AlgebraPtr alg, const Scalar& c) {
    MultiVector m(alg, 0);
    m.add_term({}, c);
    return m;
}

void MultiVector::add_term(const std::vector<int>& idx, const Scalar& c) {
    if (static_cast<int>(idx.size()) != degree_) throw DomainError("add_term: degree mismatch");
    for (size_t k = 0; k + 1 < idx.size(); ++k)
        if (idx[k] >= idx[k + 1]) throw DomainError("add_term: indices must strictly increase");
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(idx, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Scalar MultiVector::coeff(const std::vector<int>& idx) const {
    auto it = terms_.find(idx);
    return it == terms_.end() ? Scalar(alg_ ? alg_->nvars() : 0) : it->second;
}

MultiVector MultiVector::operator-() const {
    MultiVector r(alg_, degree_);
    for (const auto& [k, c] : terms_) r.terms_[k] = -c;
    return r;
}

MultiVector operator+(const MultiVector& a, const MultiVector& b) {
    if (a.alg_ != b.alg_ || a.degree_ != b.degree_) throw DomainError("multivector sum: mismatch");
    MultiVector r = a;
    for (const auto& [k, c] : b.terms_) r.add_term(k, c);
    return r;
}

MultiVector operator-(const MultiVector& a, const MultiVector& b) { return a + (-b); }

MultiVector MultiVector::scaled(const Scalar& c) const {
    MultiVector r(alg_, degree_);
    if (c.is_zero()) return r;
    for (const auto& [k, v] : terms_) {
        Scalar p = v * c;
        if (!p.is_zero()) r.terms_[k] = p;
    }
    return r;
}

MultiVector MultiVector::diff(int v) const {
    MultiVector r(alg_, degree_);
    for (const auto& [k, c] : terms_) r.add_term(k, c.diff(v));
    return r;
}

std::string MultiVector::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [k, c] : terms_) {
        std::string mono;
        for (int a : k) {
            if (!mono.empty()) mono += "^";
            mono += alg_->label(a);
        }
        if (mono.empty()) mono = "1";
        if (!out.empty()) out += " + ";
        out += "(" + c.str() + ")*" + mono;
    }
    return out;
}

/* sign of sorting idx into strictly increasing order; 0 on repeats */
static int sort_sign(std::vector<int>& idx) {
    int sign = 1;
    for (size_t i = 1; i < idx.size(); ++i)
        for (size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
            if (idx[j - 1] == idx[j]) return 0;
            std::swap(idx[j - 1], idx[j]);
            sign = -sign;
        }
    return sign;
}

MultiVector wedge(const MultiVector& u, const MultiVector& v) {
    if (u.algebra() != v.algebra()) throw DomainError("wedge: algebra mismatch");
    int n = u.algebra()->dim();
    int deg = u.degree() + v.degree();
    MultiVector r(u.algebra(), deg);
    if (deg > n) return r;  // identically zero beyond top degree
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

/* [x_a, kv-monomial] summed against the structure constants, with the
 * removed-slot positions already signed by the caller. */
MultiVector schouten_bracket(const MultiVector& u, const MultiVector& v) {
    if (u.algebra() != v.algebra()) throw DomainError("schouten: algebra mismatch");
    const AlgebraPtr& alg = u.algebra();
    int p = u.degree(), q = v.degree();
    int deg = p + q - 1;
    MultiVector r(alg, std::max(deg, 0));
    if (p == 0 || q == 0) return r;  // bracket with ∧⁰ vanishes (no λ-derivative here)
    for (const auto& [ku, cu] : u.terms())
        for (const auto& [kv, cv] : v.terms()) {
            Scalar cuv = cu * cv;
            for (int i = 0; i < p; ++i)
                for (int j = 0; j < q; ++j) {
                    /* (-1)^{i+j} [u_i, v_j] ∧ u∖i ∧ v∖j  (1-based slots) */
                    int slot_sign = ((i + j) % 2 == 0) ? 1 : -1;  // (-1)^{(i+1)+(j+1)}
                    for (int c = 0; c < alg->dim(); ++c) {
                        Scalar sc = alg->bracket_coeff(ku[i], kv[j], c);
                        if (sc.is_zero()) continue;
                        std::vector<int> idx;
                        idx.reserve(deg);
                        idx.push_back(c);
                        for (int t = 0; t < p; ++t)
                            if (t != i) idx.push_back(ku[t]);
                        for (int t = 0; t < q; ++t)
                            if (t != j) idx.push_back(kv[t]);
                        int sign = sort_sign(idx);
                        if (sign == 0) continue;
                        Scalar term = cuv * sc;
                        if (slot_sign * sign < 0) term = -term;
                        r.add_term(idx, term);
                    }
                }
        }
    return r;
}

MultiVector ad_derivation(const MultiVector& x, const MultiVector& u) {
    if (x.degree() != 1) throw DomainError("ad_derivation: degree-1 argument required");
    const AlgebraPtr& alg = x.algebra();
    MultiVector r(alg, u.degree());
    for (const auto& [kx, cx] : x.terms())
        for (const auto& [ku, cu] : u.terms())
            for (size_t slot = 0; slot < ku.size(); ++slot)
                for (int c = 0; c < alg->dim(); ++c) {
                    Scalar sc = alg->bracket_coeff(kx[0], ku[slot], c);
                    if (sc.is_zero()) continue;
                    std::vector<int> idx = ku;
                    idx[slot] = c;
                    int sign = sort_sign(idx);
                    if (sign == 0) continue;
                    Scalar term = cx * cu * sc;
                    if (sign < 0) term = -term;
                    r.add_term(idx, term);
                }
    return r;
}

}  // namespace drq
