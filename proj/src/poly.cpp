#include "drq/poly.hpp"

#include <algorithm>

namespace drq {

Poly::Poly(int nvars, const GaussianRational& c) : nvars_(nvars) {
    if (!c.is_zero()) terms_[Mono(nvars, 0)] = c;
}

Poly Poly::variable(int nvars, int idx) {
    Poly p(nvars);
    Mono m(nvars, 0);
    m.at(idx) = 1;
    p.terms_[m] = GaussianRational(1);
    return p;
}

bool Poly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && mono_degree(terms_.begin()->first) == 0);
}

GaussianRational Poly::constant_value() const {
    if (terms_.empty()) return GaussianRational(0);
    return terms_.begin()->second;
}

unsigned Poly::total_degree() const {
    return terms_.empty() ? 0 : mono_degree(terms_.rbegin()->first);
}

int Poly::main_var() const {
    int mv = -1;
    for (const auto& [m, c] : terms_)
        for (int v = nvars_ - 1; v > mv; --v)
            if (m[v] > 0) mv = v;
    return mv;
}

unsigned Poly::degree_in(int v) const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m[v]);
    return d;
}

void Poly::set(const Mono& m, const GaussianRational& c) {
    if (c.is_zero())
        terms_.erase(m);
    else
        terms_[m] = c;
}

GaussianRational Poly::leading_coeff() const {
    return terms_.empty() ? GaussianRational(0) : terms_.rbegin()->second;
}

void Poly::cleanup() {
    for (auto it = terms_.begin(); it != terms_.end();)
        it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
}

Poly Poly::operator-() const {
    Poly r(nvars_);
    for (const auto& [m, c] : terms_) r.terms_[m] = -c;
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) {
        auto [it, fresh] = terms_.try_emplace(m, c);
        if (!fresh) it->second += c;
    }
    cleanup();
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) {
        auto [it, fresh] = terms_.try_emplace(m, -c);
        if (!fresh) it->second -= c;
    }
    cleanup();
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    Poly r(a.nvars_);
    if (a.terms_.empty() || b.terms_.empty()) return r;
    /* single-term fast path */
    if (a.terms_.size() == 1) {
        const auto& [ma, ca] = *a.terms_.begin();
        Mono m(a.nvars_, 0);
        for (const auto& [mb, cb] : b.terms_) {
            for (int v = 0; v < a.nvars_; ++v) m[v] = ma[v] + mb[v];
            GaussianRational c = ca * cb;
            if (!c.is_zero()) r.terms_.emplace_hint(r.terms_.end(), m, std::move(c));
        }
        return r;
    }
    if (b.terms_.size() == 1) return b * a;
    Mono m(a.nvars_, 0);
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) {
            for (int v = 0; v < a.nvars_; ++v) m[v] = ma[v] + mb[v];
            auto [it, fresh] = r.terms_.try_emplace(m, GaussianRational(0));
            it->second += ca * cb;
        }
    r.cleanup();
    return r;
}

Poly Poly::scaled(const GaussianRational& c) const {
    Poly r(nvars_);
    if (c.is_zero()) return r;
    for (const auto& [m, v] : terms_) r.terms_[m] = v * c;
    return r;
}

Poly Poly::diff(int v) const {
    Poly r(nvars_);
    for (const auto& [m, c] : terms_) {
        if (m[v] == 0) continue;
        Mono d = m;
        d[v] -= 1;
        r.terms_[d] = c * GaussianRational(static_cast<long>(m[v]));
    }
    return r;
}

GaussianRational Poly::eval(const std::vector<GaussianRational>& point) const {
    GaussianRational acc(0);
    for (const auto& [m, c] : terms_) {
        GaussianRational t = c;
        for (int v = 0; v < nvars_; ++v)
            for (unsigned e = 0; e < m[v]; ++e) t *= point.at(v);
        acc += t;
    }
    return acc;
}

static bool mono_divides(const Mono& a, const Mono& b) {  // a | b
    for (size_t v = 0; v < a.size(); ++v)
        if (a[v] > b[v]) return false;
    return true;
}

Poly exact_div(const Poly& num, const Poly& den) {
    if (den.is_zero()) throw DivisionByZero();
    /* single-term divisor: per-term exponent subtraction */
    if (den.terms_.size() == 1) {
        const auto& [dm, dc] = *den.terms_.begin();
        Poly q(num.nvars_);
        GaussianRational inv = dc.inv();
        for (const auto& [m, c] : num.terms_) {
            Mono qm(num.nvars_, 0);
            for (int v = 0; v < num.nvars_; ++v) {
                if (m[v] < dm[v]) throw DomainError("exact_div: not divisible");
                qm[v] = m[v] - dm[v];
            }
            q.terms_.emplace_hint(q.terms_.end(), qm, c * inv);
        }
        return q;
    }
    Poly rem = num, quot(num.nvars_);
    const Mono& lm = den.terms_.rbegin()->first;
    const GaussianRational lc = den.terms_.rbegin()->second;
    while (!rem.is_zero()) {
        const Mono& rm = rem.terms_.rbegin()->first;
        if (!mono_divides(lm, rm)) throw DomainError("exact_div: not divisible");
        Mono q(num.nvars_);
        for (int v = 0; v < num.nvars_; ++v) q[v] = rm[v] - lm[v];
        GaussianRational qc = rem.terms_.rbegin()->second / lc;
        Poly qt(num.nvars_);
        qt.terms_[q] = qc;
        quot += qt;
        rem -= qt * den;
    }
    return quot;
}

/* --- multivariate gcd: primitive PRS in the top variable --- */

/* Coefficients of p viewed as univariate in variable v. */
static std::vector<Poly> univ_coeffs(const Poly& p, int v) {
    std::vector<Poly> cs(p.degree_in(v) + 1, Poly(p.nvars()));
    for (const auto& [m, c] : p.terms()) {
        Mono stripped = m;
        unsigned d = stripped[v];
        stripped[v] = 0;
        Poly t(p.nvars());
        t.set(stripped, c);
        cs[d] += t;
    }
    return cs;
}

static Poly monic(const Poly& p) {
    if (p.is_zero()) return p;
    return p.scaled(p.leading_coeff().inv());
}

static Poly content(const Poly& p, int v) {
    Poly g(p.nvars());
    for (const Poly& c : univ_coeffs(p, v)) g = poly_gcd(g, c);
    return g;
}

/* Pseudo-remainder of f by g in variable v (lc(g)-scaled variant). */
static Poly prem(Poly f, const Poly& g, int v) {
    auto gc = univ_coeffs(g, v);
    unsigned dg = gc.size() - 1;
    Poly glc = gc.back();
    while (!f.is_zero() && f.degree_in(v) >= dg) {
        auto fc = univ_coeffs(f, v);
        unsigned df = fc.size() - 1;
        Mono m(f.nvars(), 0);
        m[v] = df - dg;
        Poly shift(f.nvars());
        shift.set(m, GaussianRational(1));
        f = f * glc - g * (fc.back() * shift);
        if (!f.is_zero() && f.degree_in(v) >= df) throw DomainError("prem: no progress");
    }
    return f;
}

/* x^{min exponent over all terms}, the monomial content */
static Mono min_support(const Poly& p) {
    Mono m = p.terms().begin()->first;
    for (const auto& [mono, c] : p.terms())
        for (size_t v = 0; v < m.size(); ++v) m[v] = std::min(m[v], mono[v]);
    return m;
}

/* every exponent concentrated in variable v */
static bool univariate_in(const Poly& p, int v) {
    for (const auto& [m, c] : p.terms())
        for (size_t u = 0; u < m.size(); ++u)
            if (static_cast<int>(u) != v && m[u] != 0) return false;
    return true;
}

/* monic Euclid over the coefficient field; keeps coefficient sizes tame
 * where the pseudo-remainder sequence would blow up */
static Poly univariate_gcd(const Poly& a, const Poly& b, int v) {
    auto dense = [&](const Poly& p) {
        std::vector<GaussianRational> c(p.degree_in(v) + 1);
        for (const auto& [m, coef] : p.terms()) c[m[v]] = coef;
        return c;
    };
    auto trim = [](std::vector<GaussianRational>& c) {
        while (!c.empty() && c.back().is_zero()) c.pop_back();
    };
    std::vector<GaussianRational> A = dense(a), B = dense(b);
    trim(A);
    trim(B);
    while (!B.empty()) {
        /* A mod B, monic-normalized */
        GaussianRational lead = B.back().inv();
        for (auto& c : B) c *= lead;
        while (A.size() >= B.size()) {
            GaussianRational f = A.back();
            size_t off = A.size() - B.size();
            for (size_t i = 0; i < B.size(); ++i) A[off + i] -= f * B[i];
            trim(A);
            if (A.empty()) break;
        }
        std::swap(A, B);
    }
    Poly g(a.nvars());
    GaussianRational lead = A.back().inv();
    Mono m(a.nvars(), 0);
    for (size_t d = 0; d < A.size(); ++d) {
        if (A[d].is_zero()) continue;
        m[v] = static_cast<unsigned>(d);
        g.set(m, A[d] * lead);
    }
    return g;
}

Poly poly_gcd(const Poly& a, const Poly& b) {
    if (a.is_zero()) return monic(b);
    if (b.is_zero()) return monic(a);
    if (a.is_constant() || b.is_constant()) return Poly::one(a.nvars());
    /* monomial fast path: gcd with a single-term poly is a monomial */
    if (a.terms().size() == 1 || b.terms().size() == 1) {
        Mono ma = min_support(a), mb = min_support(b);
        Poly g(a.nvars());
        Mono m(a.nvars(), 0);
        for (int v = 0; v < a.nvars(); ++v) m[v] = std::min(ma[v], mb[v]);
        g.set(m, GaussianRational(1));
        return g;
    }
    int v = std::max(a.main_var(), b.main_var());
    if (univariate_in(a, v) && univariate_in(b, v)) return univariate_gcd(a, b, v);
    Poly ca = content(a, v), cb = content(b, v);
    Poly pa = exact_div(a, ca), pb = exact_div(b, cb);
    if (pa.degree_in(v) < pb.degree_in(v)) std::swap(pa, pb);
    while (!pb.is_zero()) {
        Poly r = prem(pa, pb, v);
        pa = pb;
        if (r.is_zero())
            pb = Poly(a.nvars());
        else
            pb = exact_div(r, content(r, v));
    }
    Poly prim = exact_div(pa, content(pa, v));
    return monic(poly_gcd(ca, cb) * prim);
}

/* --- printing --- */

static std::string mono_str(const Mono& m) {
    std::string s;
    for (size_t v = 0; v < m.size(); ++v) {
        if (m[v] == 0) continue;
        if (!s.empty()) s += "*";
        s += "l" + std::to_string(v + 1);
        if (m[v] > 1) s += "^" + std::to_string(m[v]);
    }
    return s;
}

std::string Poly::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    /* descending grlex so the leading term prints first */
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        std::string mono = mono_str(m);
        std::string piece;
        if (mono.empty()) {
            piece = c.is_real() ? c.str() : "(" + c.str() + ")";
        } else if (c.is_one()) {
            piece = mono;
        } else if (c == GaussianRational(-1)) {
            piece = "-" + mono;
        } else if (c.is_real() || c.re == 0) {
            piece = c.str() + "*" + mono;
        } else {
            piece = "(" + c.str() + ")*" + mono;
        }
        if (out.empty())
            out = piece;
        else if (piece[0] == '-')
            out += piece;
        else
            out += "+" + piece;
    }
    return out;
}

}  // namespace drq
