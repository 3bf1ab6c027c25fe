#pragma once

#include "drq/lie_algebra.hpp"

namespace drq {

struct NotAnRMatrix : Error {
    NotAnRMatrix() : Error("CDYBE or zero-weight residual is nonzero") {}
};
struct NotSplittable : Error {
    NotSplittable() : Error("dynamical r-matrix is not splittable") {}
};

/* A candidate triangular dynamical r-matrix: degree-2 element of ∧²𝔤 with
 * rational λ-coefficients.  The defining conditions are checked by the
 * residual operations, never assumed. */
struct DynamicalR {
    AlgebraPtr algebra;
    MultiVector r;  // degree 2

    DynamicalR(AlgebraPtr alg, MultiVector rr) : algebra(std::move(alg)), r(std::move(rr)) {
        if (r.degree() != 2) throw DomainError("DynamicalR: degree-2 element required");
    }
};

/* Element of ∧•A for the algebroid A = T𝔥* × 𝔤 in the global frame
 * {∂_1..∂_l} ∪ basis(𝔤); frame indices 0..l-1 are the ∂/∂λ directions and
 * l..l+n-1 the algebra directions. */
class AlgebroidVector {
  public:
    AlgebroidVector() : degree_(0) {}
    AlgebroidVector(AlgebraPtr alg, int degree) : alg_(std::move(alg)), degree_(degree) {}

    static AlgebroidVector partial(AlgebraPtr alg, int i);            // ∂_i, degree 1
    static AlgebroidVector embed(const MultiVector& m);               // ∧𝔤 -> ∧A

    const AlgebraPtr& algebra() const { return alg_; }
    int degree() const { return degree_; }
    int frame_size() const { return alg_->cartan_dim() + alg_->dim(); }
    bool is_zero() const { return terms_.empty(); }
    const std::map<std::vector<int>, Scalar>& terms() const { return terms_; }
    void add_term(const std::vector<int>& idx, const Scalar& c);

    AlgebroidVector operator-() const;
    friend AlgebroidVector operator+(const AlgebroidVector& a, const AlgebroidVector& b);
    friend AlgebroidVector operator-(const AlgebroidVector& a, const AlgebroidVector& b);
    AlgebroidVector scaled(const Scalar& c) const;
    friend bool operator==(const AlgebroidVector& a, const AlgebroidVector& b) {
        return a.degree_ == b.degree_ && a.terms_ == b.terms_;
    }

    std::string str() const;

  private:
    AlgebraPtr alg_;
    int degree_;
    std::map<std::vector<int>, Scalar> terms_;
};

AlgebroidVector algebroid_wedge(const AlgebroidVector& u, const AlgebroidVector& v);

/* Schouten bracket of the product algebroid: algebra directions bracket via
 * the structure constants, [∂_i, ·] = 0 on the frame, and the anchor sends
 * ∂_i to ∂/∂λ^i acting on Scalar coefficients. */
AlgebroidVector algebroid_schouten(const AlgebroidVector& u, const AlgebroidVector& v);

/* Λ = Σ_i h_i∧∂_i + r. */
AlgebroidVector lambda_section(const DynamicalR& R);

/* --- residuals --- */

/* Σ_i h_i ∧ ∂r/∂λ^i + ½[r,r]; zero iff the CDYBE holds. */
MultiVector cdybe_residual(const DynamicalR& R);

/* [h_i, r] for i = 1..l; all zero iff r has zero weight. */
std::vector<MultiVector> zero_weight_residual(const DynamicalR& R);

/* [Λ,Λ]; equals 2·(CDYBE residual embedded) − 2·Σ_i [h_i,r]∧∂_i, which the
 * tests cross-check against the two simple residuals. */
AlgebroidVector lambda_self_bracket(const DynamicalR& R);

bool is_r_matrix(const DynamicalR& R);

/* --- rank, splittability, restriction --- */

struct RankFlags {
    int rank;
    bool nondegenerate;
    bool splittable;
};
RankFlags rank_flags(const DynamicalR& R);  // throws NotAnRMatrix

/* The full antisymmetric component matrix ρ̂ with r = Σ_{a<b} ρ̂_{ab} x_a∧x_b,
 * so r^#(x_a^*) is row a of ρ̂. */
ScalarMatrix r_component_matrix(const DynamicalR& R);

struct Restriction {
    std::shared_ptr<LieAlgebra> subalgebra;   // 𝔤₁ with adapted basis
    DynamicalR restricted;                    // r re-expressed in ∧²𝔤₁
    ScalarMatrix basis;                       // n×dim(𝔤₁), columns = new basis in old coordinates
};
Restriction restrict_to_g1(const DynamicalR& R, const std::vector<GaussianRational>& lambda0);

/* Re-express algebra and r in the basis given by the columns of P (old
 * coordinates).  The span must be bracket-closed and contain r; the first
 * cartan_dim columns must remain the 𝔥-basis. */
Restriction rebase(const DynamicalR& R, const ScalarMatrix& P);

/* --- gauge transformations --- */

struct GaugeElement {
    std::vector<Scalar> log;  // f: 𝔥* -> 𝔤^H coordinates, Scalar entries
    int nilpotency;           // ad_f^nilpotency = 0

    void validate(const LieAlgebra& g) const;  // centralizer + nilpotency
};

/* ad_f as an n×n matrix over the field. */
ScalarMatrix ad_matrix(const LieAlgebra& g, const std::vector<Scalar>& f);

/* Ad_{exp f} = exp(ad_f) applied factorwise on ∧•𝔤 (exact finite sum). */
MultiVector gauge_adjoint(const GaugeElement& g, const MultiVector& u);

/* r_g = Ad_g r − Σ_i h_i∧(∂_i g)g^{-1}, (∂_i g)g^{-1} via the terminating
 * right-logarithmic-derivative series.  When the input residuals vanish the
 * output residuals are asserted to vanish, never assumed. */
DynamicalR gauge_transform(const DynamicalR& R, const GaugeElement& g);

/* δ_r τ = Σ_i h_i∧∂τ/∂λ^i + [r, τ]. */
MultiVector delta_r(const DynamicalR& R, const MultiVector& tau, bool check_weight);

}  // namespace drq
