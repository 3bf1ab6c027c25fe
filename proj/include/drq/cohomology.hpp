#pragma once

#include "drq/lie_algebra.hpp"

namespace drq {

/* Relative Chevalley–Eilenberg cochains: 𝔥-invariant alternating k-forms
 * on 𝔤/𝔥 with trivial coefficients, differential
 *   (dξ)(x₀..x_k) = Σ_{i<j} (−1)^{i+j} ξ([x_i,x_j] mod 𝔥, x₀..x̂_i..x̂_j..x_k).
 * Dimensions are exact over ℚ. */
struct CohomologyDims {
    int cochain_dim;  // dim C^k(𝔤,𝔥)
    int h_dim;        // dim H^k(𝔤,𝔥)
};

CohomologyDims relative_cohomology_dim(const LieAlgebra& g, int k);

/* The differential as an exact matrix C^k -> C^{k+1} on the invariant
 * subcomplex; exposed for the d² = 0 property tests. */
ScalarMatrix relative_ce_differential(const LieAlgebra& g, int k);

}  // namespace drq
