#pragma once

#include "drq/dynr.hpp"
#include "drq/matrix.hpp"

namespace drq {

/* Global frame on M = 𝔥*×G: indices 0..l-1 are ∂/∂λ^i, l..l+n-1 the
 * left-invariant fields ē of the algebra basis (so l..2l-1 are the ē_h and
 * 2l..l+n-1 the ē_e directions).  All coefficients are λ-only Scalars. */
struct Frame {
    AlgebraPtr alg;
    int l = 0, n = 0, N = 0;

    Frame() = default;
    explicit Frame(AlgebraPtr a)
        : alg(std::move(a)), l(alg->cartan_dim()), n(alg->dim()), N(l + n) {}

    bool is_v(int A) const { return A < l; }
    bool is_h(int A) const { return A >= l && A < 2 * l; }
    bool is_g(int A) const { return A >= l; }

    /* structure functions [ē_A, ē_B] = C_AB^C ē_C; zero on ∂-directions */
    Scalar structure(int A, int B, int C) const {
        if (A < l || B < l || C < l) return Scalar(alg->nvars());
        return alg->bracket_coeff(A - l, B - l, C - l);
    }
};

/* Differential form in the global coframe {dλ^i} ∪ {ξ^a} with Scalar
 * coefficients, sparse over strictly increasing index tuples. */
class FrameForm {
  public:
    FrameForm() : degree_(0) {}
    FrameForm(Frame frame, int degree) : frame_(std::move(frame)), degree_(degree) {}

    const Frame& frame() const { return frame_; }
    int degree() const { return degree_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<std::vector<int>, Scalar>& terms() const { return terms_; }
    void add_term(const std::vector<int>& idx, const Scalar& c);

    FrameForm operator-() const;
    friend FrameForm operator+(const FrameForm& a, const FrameForm& b);
    friend FrameForm operator-(const FrameForm& a, const FrameForm& b);
    FrameForm scaled(const Scalar& c) const;
    friend bool operator==(const FrameForm& a, const FrameForm& b) {
        return a.degree_ == b.degree_ && a.terms_ == b.terms_;
    }

    std::string str() const;

  private:
    Frame frame_;
    int degree_;
    std::map<std::vector<int>, Scalar> terms_;
};

FrameForm frame_wedge(const FrameForm& a, const FrameForm& b);

/* Exterior derivative in the frame: dλ-parts from coefficient derivatives,
 * Maurer–Cartan terms dξ^a = −½ c_bc^a ξ^b∧ξ^c on the invariant coframe. */
FrameForm frame_d(const FrameForm& a);

/* Contraction with the frame vector ē_A (or ∂_A for A < l). */
FrameForm frame_contract(int A, const FrameForm& a);

/* --- invariant geometry of a nondegenerate triangular dynamical r-matrix --- */

struct FrameGeometry {
    Frame frame;
    ScalarMatrix poisson;     // π^{AB} = π(θ^A, θ^B)
    ScalarMatrix symplectic;  // ω_{AB}, pinned as ω = −π^{-1}

    FrameForm omega_form() const;  // ω as a frame 2-form
};

/* Assembles π = Σ ē_h_i∧∂_i + r↑ and ω; asserts antisymmetry, dω = 0 and
 * ω(ē_h_i,·) = dλ^i.  Throws NotAnRMatrix / DomainError on a degenerate π. */
FrameGeometry build_frame_geometry(const DynamicalR& R);

/* Christoffel symbols Γ_AB^C = (∇_{ē_A} ē_B)^C in the global frame. */
class FrameConnection {
  public:
    FrameConnection() : N_(0) {}
    FrameConnection(const Frame& f) : N_(f.N), g_(N_ * N_ * N_, Scalar(f.alg->nvars())) {}

    int frame_size() const { return N_; }
    Scalar& at(int A, int B, int C) { return g_[(A * N_ + B) * N_ + C]; }
    const Scalar& at(int A, int B, int C) const { return g_[(A * N_ + B) * N_ + C]; }

    bool frame_torsion_free(const Frame& f) const;

  private:
    int N_;
    std::vector<Scalar> g_;
};

/* Biinvariant torsion-free connection for a reductive adapted basis:
 * ∇⁰_{ē_h}ē_e = [h,e]↑, ∇⁰_{ē_e}ē_e' = ½[e,e']↑, all other Christoffels
 * zero; throws if [𝔥, span(e)] ⊄ span(e). */
FrameConnection base_connection(const Frame& frame);

/* ∇ = ∇⁰ + S with ω(S(X,Y),Z) = ⅓[(∇⁰_X ω)(Y,Z) + (∇⁰_Y ω)(X,Z)]; asserts
 * ∇ω = 0, frame-torsion-freeness and ∇ē_h = 0. */
FrameConnection symplectize(const FrameConnection& nabla0, const FrameGeometry& geom);

/* (∇_A ω)_{BC} for assertions and the S-tensor. */
Scalar nabla_omega(const FrameConnection& c, const FrameGeometry& g, int A, int B, int C);

struct CurvatureTensor {
    int N;
    std::vector<Scalar> upper;    // R^C_{D,AB} at ((C*N+D)*N+A)*N+B
    std::vector<Scalar> lowered;  // R_{CD,AB} = ω_CE R^E_{D,AB}

    const Scalar& up(int C, int D, int A, int B) const { return upper[((C * N + D) * N + A) * N + B]; }
    const Scalar& low(int C, int D, int A, int B) const {
        return lowered[((C * N + D) * N + A) * N + B];
    }
};

/* Frame curvature of ∇ with the structure-function bracket term; asserts
 * the pair symmetries, the Bianchi identity, H-direction vanishing and
 * ∇_{ē_h} R = 0.  Assembly runs through the parallel kernel. */
CurvatureTensor curvature(const FrameConnection& c, const FrameGeometry& g);

/* Assembly-only entry points (no symmetry assertions): the serial
 * reference and the OpenMP kernel, used by the benchmark and the
 * parallel-equivalence tests. */
CurvatureTensor curvature_serial(const FrameConnection& c, const FrameGeometry& g);
CurvatureTensor curvature_parallel(const FrameConnection& c, const FrameGeometry& g);

/* Adapted reductive complement 𝔪 = r(λ₀)^# 𝔥^⊥: returns the rebased
 * algebra/r with basis (h₁..h_l, 𝔪-basis) and the n×n change of basis.
 * λ₀ must be neither a pole nor a rank-drop point. */
Restriction reductive_complement(const DynamicalR& R, const std::vector<GaussianRational>& lambda0);

}  // namespace drq
