#pragma once

#include "drq/uea.hpp"

namespace drq {

/* ħ-series of jets on M (results of bidifferential operators) */
using JetSeries = std::map<int, GJet>;

JetSeries jet_series_add(const JetSeries& a, const JetSeries& b, int kmax);
JetSeries jet_series_sub(const JetSeries& a, const JetSeries& b, int kmax);
bool jet_series_zero(const JetSeries& a);
/* drop orders above kmax */
JetSeries jet_series_trunc(const JetSeries& a, int kmax);

/* Pair expansion of Θ^{sign} = exp(±ħθ), θ = ½Σ_i (h_i⊗∂_i − ∂_i⊗h_i):
 * result[j] lists the weighted jet pairs of the ħ^j component (weights
 * folded into the first member). */
std::map<int, std::vector<std::pair<GJet, GJet>>> theta_pairs(const LeftInvariantFrame& fields,
                                                              const GJet& f, const GJet& g,
                                                              int K, int sign);

/* Θ^{sign}(f,g) evaluated, truncated at ħ^K */
JetSeries theta_apply(const LeftInvariantFrame& fields, const GJet& f, const GJet& g, int K,
                      int sign = +1);

/* [(Δ⊗id)Θ]Θ¹² and [(id⊗Δ)Θ]Θ²³ applied to a jet triple — equal by the
 * cocycle identity, which the tests assert */
JetSeries theta_cocycle_left(const LeftInvariantFrame& fields, const GJet& f, const GJet& g,
                             const GJet& h, int K);
JetSeries theta_cocycle_right(const LeftInvariantFrame& fields, const GJet& f, const GJet& g,
                              const GJet& h, int K);

/* Θ(T-realized ⊗ T-realized)Θ⁻¹ applied to a pair: the conjugation side of
 * the shift identities; T may occupy either or both legs. */
JetSeries theta_conjugation(const LeftInvariantFrame& fields, const UEAT& t_left,
                            const UEAT& t_right, const GJet& f, const GJet& g, int K);

}  // namespace drq
