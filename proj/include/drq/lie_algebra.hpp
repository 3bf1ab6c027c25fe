#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "drq/matrix.hpp"
#include "drq/scalar.hpp"

namespace drq {

/* Finite-dimensional Lie algebra with a distinguished Abelian subalgebra
 * 𝔥 = span of the first cartan_dim basis vectors.  Structure constants are
 * λ-free Scalars; the coefficient field carries nvars λ-variables so that
 * multivector coefficients can be rational in λ = (λ¹..λˡ).  By default
 * nvars = cartan_dim. */
class LieAlgebra {
  public:
    LieAlgebra(int dim, int cartan_dim, std::vector<std::string> labels = {});

    int dim() const { return dim_; }
    int cartan_dim() const { return cartan_; }
    int nvars() const { return cartan_; }
    const std::string& label(int a) const { return labels_[a]; }

    /* Set c_{ab}^c for a < b; antisymmetric counterpart is implied. */
    void set_bracket(int a, int b, int c, const Scalar& coeff);

    Scalar bracket_coeff(int a, int b, int c) const;  // any a, b

    /* [v, w] of coordinate vectors, as a coordinate vector. */
    std::vector<Scalar> bracket(const std::vector<Scalar>& v, const std::vector<Scalar>& w) const;

    struct Diagnostics {
        /* (a,b,c, component list) with nonzero Jacobi residual */
        std::vector<std::string> jacobi_violations;
        std::vector<std::string> abelian_violations;
        bool ok() const { return jacobi_violations.empty() && abelian_violations.empty(); }
    };
    Diagnostics validate() const;

  private:
    int dim_, cartan_;
    std::vector<std::string> labels_;
    /* key (a,b) with a < b; sparse component map c -> coefficient */
    std::map<std::pair<int, int>, std::map<int, Scalar>> brackets_;
};

using AlgebraPtr = std::shared_ptr<const LieAlgebra>;

/* Element of ∧•𝔤 with Scalar coefficients, sparse over strictly increasing
 * index tuples. */
class MultiVector {
  public:
    MultiVector() : degree_(0) {}
    MultiVector(AlgebraPtr alg, int degree) : alg_(std::move(alg)), degree_(degree) {}

    static MultiVector basis(AlgebraPtr alg, int a);  // degree-1 basis vector
    static MultiVector from_vector(AlgebraPtr alg, const std::vector<Scalar>& v);
    static MultiVector scalar(AlgebraPtr alg, const Scalar& c);  // degree 0

    const AlgebraPtr& algebra() const { return alg_; }
    int degree() const { return degree_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<std::vector<int>, Scalar>& terms() const { return terms_; }

    void add_term(const std::vector<int>& idx, const Scalar& c);  // idx strictly increasing
    Scalar coeff(const std::vector<int>& idx) const;

    MultiVector operator-() const;
    friend MultiVector operator+(const MultiVector& a, const MultiVector& b);
    friend MultiVector operator-(const MultiVector& a, const MultiVector& b);
    MultiVector& operator+=(const MultiVector& o) { return *this = *this + o; }
    MultiVector& operator-=(const MultiVector& o) { return *this = *this - o; }
    MultiVector scaled(const Scalar& c) const;
    friend bool operator==(const MultiVector& a, const MultiVector& b) {
        return a.degree_ == b.degree_ && a.terms_ == b.terms_;
    }

    /* Coefficient-wise ∂/∂λ^v. */
    MultiVector diff(int v) const;

    std::string str() const;

  private:
    AlgebraPtr alg_;
    int degree_;
    std::map<std::vector<int>, Scalar> terms_;
};

MultiVector wedge(const MultiVector& u, const MultiVector& v);

/* Schouten bracket on ∧•𝔤: degree p,q -> p+q-1, extending the Lie bracket
 * by the graded Leibniz rule.  Coefficients multiply as Scalars; no
 * λ-differentiation happens here. */
MultiVector schouten_bracket(const MultiVector& u, const MultiVector& v);

/* Extension of ad_x (x of degree 1) as a derivation of ∧•𝔤; used as the
 * independent cross-check of schouten_bracket on degree-1 inputs. */
MultiVector ad_derivation(const MultiVector& x, const MultiVector& u);

}  // namespace drq
