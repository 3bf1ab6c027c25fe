#pragma once

#include <memory>

#include "drq/expr.hpp"
#include "drq/lie_algebra.hpp"

namespace drq {

/* Truncated polynomial in the exponential coordinates x^1..x^n on G
 * centered at the identity, with Scalar (λ-rational) coefficients: a jet of
 * a function on M = 𝔥*×G at (λ, e).  x-degree is capped at `cap`. */
class GJet {
  public:
    GJet() : cap_(0) {}
    GJet(AlgebraPtr alg, int cap) : alg_(std::move(alg)), cap_(cap) {}
    GJet(AlgebraPtr alg, int cap, const Scalar& c);  // constant-in-x jet

    static GJet coordinate(AlgebraPtr alg, int cap, int b);  // x^{b+1}

    const AlgebraPtr& algebra() const { return alg_; }
    int cap() const { return cap_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_x_free() const;
    const std::map<Mono, Scalar>& terms() const { return terms_; }
    void add_term(const Mono& m, const Scalar& c);  // truncates beyond cap
    Scalar value_at_identity() const;               // x = 0 coefficient
    Scalar coeff(const Mono& m) const;

    GJet operator-() const;
    friend GJet operator+(const GJet& a, const GJet& b);
    friend GJet operator-(const GJet& a, const GJet& b);
    friend GJet operator*(const GJet& a, const GJet& b);  // truncated at cap
    GJet& operator+=(const GJet& o) { return *this = *this + o; }
    GJet& operator-=(const GJet& o) { return *this = *this - o; }
    GJet scaled(const Scalar& c) const;
    friend bool operator==(const GJet& a, const GJet& b) {
        return a.cap_ == b.cap_ && a.terms_ == b.terms_;
    }

    GJet dx(int b) const;       // ∂/∂x^{b+1}
    GJet dlambda(int v) const;  // coefficient-wise ∂/∂λ^{v+1}

    /* equality of all terms with x-degree ≤ d */
    static bool equal_mod_degree(const GJet& a, const GJet& b, int d);

    std::string str() const;

  private:
    AlgebraPtr alg_;
    int cap_;
    std::map<Mono, Scalar> terms_;
};

/* ē_a = Σ_b M(x)^b_a ∂/∂x^b with M(x) = [(1−exp(−ad_x))/ad_x]^{-1} expanded
 * as a formal matrix power series to the jet cap. */
class LeftInvariantFrame {
  public:
    LeftInvariantFrame(AlgebraPtr alg, int cap);

    const AlgebraPtr& algebra() const { return alg_; }
    int cap() const { return cap_; }
    const GJet& matrix(int b, int a) const { return m_[b * alg_->dim() + a]; }

    GJet apply(int a, const GJet& f) const;  // ē_a f

    /* exact residual [ē_a,ē_b]f − Σ_c c_ab^c ē_c f on jets, compared up to
     * x-degree cap−1 */
    bool bracket_residual_zero(int max_degree_checked) const;

  private:
    AlgebraPtr alg_;
    int cap_;
    std::vector<GJet> m_;  // row-major (b,a)
};

using FramePtr = std::shared_ptr<const LeftInvariantFrame>;

FramePtr left_invariant_fields(AlgebraPtr alg, int cap);

/* Jet context of the expression grammar: λ-variables plus x1..xn. */
GJet eval_jet(const Expr& e, const AlgebraPtr& alg, int cap);
GJet parse_jet(std::string_view text, const AlgebraPtr& alg, int cap);

}  // namespace drq
