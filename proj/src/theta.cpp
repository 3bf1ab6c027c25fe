#include "drq/theta.hpp"

namespace drq {

JetSeries jet_series_add(const JetSeries& a, const JetSeries& b, int kmax) {
    JetSeries r = a;
    for (const auto& [k, j] : b) {
        if (k > kmax) continue;
        auto [it, fresh] = r.try_emplace(k, j);
        if (!fresh) it->second += j;
    }
    for (auto it = r.begin(); it != r.end();)
        it = (it->second.is_zero() || it->first > kmax) ? r.erase(it) : std::next(it);
    return r;
}

JetSeries jet_series_sub(const JetSeries& a, const JetSeries& b, int kmax) {
    JetSeries nb;
    for (const auto& [k, j] : b) nb[k] = -j;
    return jet_series_add(a, nb, kmax);
}

bool jet_series_zero(const JetSeries& a) {
    for (const auto& [k, j] : a)
        if (!j.is_zero()) return false;
    return true;
}

JetSeries jet_series_trunc(const JetSeries& a, int kmax) {
    JetSeries r;
    for (const auto& [k, j] : a)
        if (k <= kmax && !j.is_zero()) r[k] = j;
    return r;
}

std::map<int, std::vector<std::pair<GJet, GJet>>> theta_pairs(const LeftInvariantFrame& fields,
                                                              const GJet& f, const GJet& g,
                                                              int K, int sign) {
    const AlgebraPtr& alg = fields.algebra();
    int l = alg->cartan_dim(), nv = alg->nvars();
    Scalar half = Scalar(nv, 1) / Scalar(nv, 2);
    std::map<int, std::vector<std::pair<GJet, GJet>>> out;
    std::vector<std::pair<GJet, GJet>> layer{{f, g}};
    out[0] = layer;
    Scalar fac(nv, 1);
    for (int j = 1; j <= K; ++j) {
        /* one application of ±θ, then the cumulative 1/j! */
        std::vector<std::pair<GJet, GJet>> next;
        for (const auto& [a, b] : layer)
            for (int i = 0; i < l; ++i) {
                GJet ha = fields.apply(i, a);
                if (!ha.is_zero()) {
                    GJet db = b.dlambda(i);
                    if (!db.is_zero()) next.push_back({ha.scaled(half), db});
                }
                GJet da = a.dlambda(i);
                if (!da.is_zero()) {
                    GJet hb = fields.apply(i, b);
                    if (!hb.is_zero()) next.push_back({da.scaled(-half), hb});
                }
            }
        if (next.empty()) break;
        layer = next;
        fac = fac * Scalar(nv, j).inv();
        Scalar w = (sign < 0 && j % 2 == 1) ? -fac : fac;
        auto& slot = out[j];
        for (auto& [a, b] : next) slot.push_back({a.scaled(w), b});
    }
    return out;
}

JetSeries theta_apply(const LeftInvariantFrame& fields, const GJet& f, const GJet& g, int K,
                      int sign) {
    JetSeries r;
    for (const auto& [j, pairs] : theta_pairs(fields, f, g, K, sign)) {
        GJet acc(f.algebra(), f.cap());
        for (const auto& [a, b] : pairs) acc += a * b;
        if (!acc.is_zero()) r[j] = acc;
    }
    return r;
}

JetSeries theta_cocycle_left(const LeftInvariantFrame& fields, const GJet& f, const GJet& g,
                             const GJet& h, int K) {
    /* [(Δ⊗id)Θ]Θ¹²(f,g,h) = Σ_{(a,b) ∈ Θ¹²(f,g)} Θ(a·b, h) */
    JetSeries out;
    for (const auto& [j1, pairs] : theta_pairs(fields, f, g, K, +1))
        for (const auto& [a, b] : pairs) {
            JetSeries inner = theta_apply(fields, a * b, h, K - j1);
            for (const auto& [j2, jet] : inner) {
                auto [it, fresh] = out.try_emplace(j1 + j2, jet);
                if (!fresh) it->second += jet;
            }
        }
    for (auto it = out.begin(); it != out.end();)
        it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

JetSeries theta_cocycle_right(const LeftInvariantFrame& fields, const GJet& f, const GJet& g,
                              const GJet& h, int K) {
    JetSeries out;
    for (const auto& [j1, pairs] : theta_pairs(fields, g, h, K, +1))
        for (const auto& [b, c] : pairs) {
            JetSeries inner = theta_apply(fields, f, b * c, K - j1);
            for (const auto& [j2, jet] : inner) {
                auto [it, fresh] = out.try_emplace(j1 + j2, jet);
                if (!fresh) it->second += jet;
            }
        }
    for (auto it = out.begin(); it != out.end();)
        it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

JetSeries theta_conjugation(const LeftInvariantFrame& fields, const UEAT& t_left,
                            const UEAT& t_right, const GJet& f, const GJet& g, int K) {
    JetSeries out;
    for (const auto& [j1, pairs] : theta_pairs(fields, f, g, K, -1))  // Θ⁻¹ first
        for (const auto& [a, b] : pairs) {
            /* realize the single-slot operators on each leg */
            JetSeries ta = realize(t_left, fields, {a});
            JetSeries tb = realize(t_right, fields, {b});
            for (const auto& [ka, ja] : ta)
                for (const auto& [kb, jb] : tb) {
                    if (j1 + ka + kb > K) continue;
                    JetSeries outer = theta_apply(fields, ja, jb, K - j1 - ka - kb, +1);
                    for (const auto& [j2, jet] : outer) {
                        auto [it, fresh] = out.try_emplace(j1 + ka + kb + j2, jet);
                        if (!fresh) it->second += jet;
                    }
                }
        }
    for (auto it = out.begin(); it != out.end();)
        it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

}  // namespace drq
