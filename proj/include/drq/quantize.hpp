#pragma once

#include "drq/theta.hpp"
#include "drq/weyl.hpp"

namespace drq {

/* The full quantization pipeline on a nondegenerate triangular dynamical
 * r-matrix: geometry, connection, Abelian connection, jet star products. */
struct StarEngine {
    DynamicalR r;
    FedosovData data;         // λ-only context and solved γ
    WeylContext jctx;         // jet-coefficient context sharing the geometry
    WeylElement<GJet> gamma_jets;
    FramePtr fields;
    int hbar_order;           // K
    int jet_cap;              // D_jet

    static StarEngine build(const DynamicalR& R, int K,
                            std::vector<std::pair<int, FrameForm>> omega_pert = {},
                            int jet_cap_override = -1);

    GJet jet(const std::string& text) const;  // parse in this engine's caps
    GJet jet_scalar(const Scalar& s) const;

    WeylElement<GJet> lift(const GJet& a) const;
    JetSeries star(const GJet& f, const GJet& g) const;                        // mod ħ^{K+1}
    JetSeries star_lifted(const WeylElement<GJet>& fl, const WeylElement<GJet>& gl) const;
};

/* Restrict ⋆ to pure-G monomial jets, identify the λ-dependent
 * left-invariant bidifferential operator through the identity-jet pairing,
 * and return F(λ) ∈ U𝔤⊗U𝔤[[ħ]].  Θ acts as the identity on λ-free jets, so
 * the right-factor removal F = (F·Θ)Θ⁻¹ is the identity on this system; the
 * solved F is re-verified against the star values as whole jets. */
UEAT extract_f(const StarEngine& engine);

struct QuantizationReport {
    std::vector<UEAT> weight;  // [h_a⊗1 + 1⊗h_a, F] per a
    UEAT normal_left;          // (ε⊗id)F − 1
    UEAT normal_right;         // (id⊗ε)F − 1
    UEAT quantization;         // F₁¹² − F₁²¹ − r
    UEAT shifted_cocycle;      // (Δ⊗id)F·F¹²(λ−½ħh⁽³⁾) − (id⊗Δ)F·F²³(λ+½ħh⁽¹⁾)

    bool ok() const;
};

QuantizationReport quantization_check(const UEAT& f, const DynamicalR& R);

/* R(λ) = F²¹(λ)⁻¹F¹²(λ) */
UEAT f_to_r_matrix(const UEAT& f);

/* R¹²(λ−½ħh⁽³⁾)R¹³(λ+½ħh⁽²⁾)R²³(λ−½ħh⁽¹⁾)
 *  − R²³(λ+½ħh⁽¹⁾)R¹³(λ−½ħh⁽²⁾)R¹²(λ+½ħh⁽³⁾) */
UEAT qdybe_residual(const UEAT& f);

/* E = ΔT⁻¹ · F · T₁(λ−½ħh⁽²⁾) · T₂(λ+½ħh⁽¹⁾) for zero-weight T = 1 + O(ħ)
 * with ε(T) = 1; conditions validated. */
UEAT equivalence_transform(const UEAT& f, const UEAT& t);

}  // namespace drq
