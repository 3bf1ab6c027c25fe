#pragma once

#include "drq/jets.hpp"
#include "drq/lie_algebra.hpp"

namespace drq {

/* PBW exponent vector over the ordered basis h_1..h_l e_1..e_m. */
using ExpVec = std::vector<unsigned>;

inline unsigned expvec_degree(const ExpVec& e) {
    unsigned d = 0;
    for (unsigned x : e) d += x;
    return d;
}

/* Element of U𝔤^{⊗slots}[[ħ]] truncated at ħ^kmax, PBW-normal monomials
 * with Scalar coefficients. */
class UEAT {
  public:
    UEAT() : slots_(0), kmax_(0) {}
    UEAT(AlgebraPtr alg, int slots, int kmax)
        : alg_(std::move(alg)), slots_(slots), kmax_(kmax) {}

    static UEAT unit(AlgebraPtr alg, int slots, int kmax);
    /* ħ^k · x_a placed in slot s (identity elsewhere) */
    static UEAT generator(AlgebraPtr alg, int slots, int kmax, int s, int a, int k = 0);

    const AlgebraPtr& algebra() const { return alg_; }
    int slots() const { return slots_; }
    int kmax() const { return kmax_; }
    bool is_zero() const { return terms_.empty(); }

    using Key = std::pair<int, std::vector<ExpVec>>;
    const std::map<Key, Scalar>& terms() const { return terms_; }
    void add_term(int k, const std::vector<ExpVec>& monos, const Scalar& c);

    UEAT operator-() const;
    friend UEAT operator+(const UEAT& a, const UEAT& b);
    friend UEAT operator-(const UEAT& a, const UEAT& b);
    friend UEAT operator*(const UEAT& a, const UEAT& b);  // slotwise PBW product
    UEAT scaled(const Scalar& c) const;
    friend bool operator==(const UEAT& a, const UEAT& b) {
        return a.slots_ == b.slots_ && a.terms_ == b.terms_;
    }

    /* ħ^k coefficient as an ħ-free tensor (kmax 0) */
    UEAT hbar_part(int k) const;
    /* shift every ħ-power up by d (truncating at kmax) */
    UEAT hbar_shifted(int d) const;

    UEAT diff(int v) const;              // coefficient-wise ∂/∂λ^v
    UEAT swap_slots(int s, int t) const;  // e.g. F²¹
    UEAT counit_slot(int s) const;        // ε on slot s, one slot fewer
    UEAT coproduct_slot(int s) const;     // Δ on slot s, one slot more

    /* geometric-series inverse; requires ħ⁰ part = 1⊗..⊗1 */
    UEAT inverse() const;

    /* zero-weight residual [Σ_s 1⊗..h_a..⊗1, ·] for each a < l */
    std::vector<UEAT> weight_residual() const;

    std::string str() const;

  private:
    AlgebraPtr alg_;
    int slots_, kmax_;
    std::map<Key, Scalar> terms_;
};

/* straightened product of two PBW monomials (no ħ) */
UEAT pbw_mul_mono(const AlgebraPtr& alg, const ExpVec& u, const ExpVec& v);

/* embed a 2-slot tensor into 3 slots at positions (p,q) */
UEAT embed3(const UEAT& f, int p, int q);

/* F^{pq}(λ ± ½ħ h^{(s)}) = Σ_j (1/j!)(±ħ/2)^j ∂^j F ⊗ h-string in slot s,
 * for a 2-slot F into 3 slots; same machinery for a 1-slot T into 2. */
UEAT shifted_embed(const UEAT& f, int total_slots, const std::vector<int>& positions,
                   int shift_slot, int sign);

/* r ∈ ∧²𝔤 as the antisymmetric tensor Σ ρ_ab (x_a⊗x_b − x_b⊗x_a) */
UEAT r_as_tensor(const MultiVector& r, int kmax);

/* single-slot U𝔤[[ħ]] element from the expression grammar: x_a denote the
 * generators (monomials straighten left-to-right), 'H' is ħ */
UEAT parse_ueat(std::string_view text, const AlgebraPtr& alg, int kmax);

/* left-invariant realization: Σ ħ^k c(λ)·(ū₁f₁)·..·(ūₛfₛ) */
GJet realize_mono(const LeftInvariantFrame& fields, const ExpVec& mono, const GJet& f);
std::map<int, GJet> realize(const UEAT& t, const LeftInvariantFrame& fields,
                            const std::vector<GJet>& args);

}  // namespace drq
