#include "drq/cohomology.hpp"

#include <algorithm>

namespace drq {

namespace {

/* strictly increasing k-tuples over {0..m-1} (complement indices, 0-based
 * relative to the e-block) */
std::vector<std::vector<int>> tuples(int m, int k) {
    std::vector<std::vector<int>> out;
    if (k < 0 || k > m) return out;
    std::vector<int> t(k);
    for (int i = 0; i < k; ++i) t[i] = i;
    for (;;) {
        out.push_back(t);
        int i = k - 1;
        while (i >= 0 && t[i] == m - (k - i)) --i;
        if (i < 0) break;
        ++t[i];
        for (int j = i + 1; j < k; ++j) t[j] = t[j - 1] + 1;
    }
    if (k == 0) out = {std::vector<int>{}};
    return out;
}

int sort_sign(std::vector<int>& idx) {
    int sign = 1;
    for (size_t i = 1; i < idx.size(); ++i)
        for (size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
            if (idx[j - 1] == idx[j]) return 0;
            std::swap(idx[j - 1], idx[j]);
            sign = -sign;
        }
    return sign;
}

int tuple_index(const std::vector<std::vector<int>>& all, const std::vector<int>& t) {
    auto it = std::lower_bound(all.begin(), all.end(), t);
    return static_cast<int>(it - all.begin());
}

/* Basis (as columns) of the 𝔥-invariant subspace of Hom(∧^k(𝔤/𝔥), ℚ). */
ScalarMatrix invariant_basis(const LieAlgebra& g, int k) {
    int l = g.cartan_dim(), n = g.dim(), m = n - l, nv = g.nvars();
    auto ks = tuples(m, k);
    int dim = static_cast<int>(ks.size());
    /* rows: one equation per (h_a, k-tuple); cols: full k-form space */
    ScalarMatrix eq(l * dim, dim, nv);
    for (int a = 0; a < l; ++a)
        for (int ti = 0; ti < dim; ++ti) {
            const auto& J = ks[ti];
            for (int s = 0; s < k; ++s)
                for (int c = l; c < n; ++c) {
                    Scalar sc = g.bracket_coeff(a, l + J[s], c);
                    if (sc.is_zero()) continue;
                    std::vector<int> rep = J;
                    rep[s] = c - l;
                    int sg = sort_sign(rep);
                    if (sg == 0) continue;
                    Scalar v = (sg < 0) ? -sc : sc;
                    eq.at(a * dim + ti, tuple_index(ks, rep)) += v;
                }
        }
    return nullspace(eq);
}

/* d on the full space Hom(∧^k(𝔤/𝔥)) -> Hom(∧^{k+1}(𝔤/𝔥)). */
ScalarMatrix full_differential(const LieAlgebra& g, int k) {
    int l = g.cartan_dim(), n = g.dim(), m = n - l, nv = g.nvars();
    auto ks = tuples(m, k);
    auto k1s = tuples(m, k + 1);
    ScalarMatrix d(static_cast<int>(k1s.size()), static_cast<int>(ks.size()), nv);
    for (size_t row = 0; row < k1s.size(); ++row) {
        const auto& T = k1s[row];
        for (int i = 0; i < k + 1; ++i)
            for (int j = i + 1; j < k + 1; ++j) {
                int pm = ((i + j) % 2 == 0) ? 1 : -1;
                for (int c = l; c < n; ++c) {
                    Scalar sc = g.bracket_coeff(l + T[i], l + T[j], c);
                    if (sc.is_zero()) continue;
                    std::vector<int> arg;
                    arg.push_back(c - l);
                    for (int t = 0; t < k + 1; ++t)
                        if (t != i && t != j) arg.push_back(T[t]);
                    int sg = sort_sign(arg);
                    if (sg == 0) continue;
                    Scalar v = sc;
                    if (pm * sg < 0) v = -v;
                    d.at(static_cast<int>(row), tuple_index(ks, arg)) += v;
                }
            }
    }
    return d;
}

}  // namespace

ScalarMatrix relative_ce_differential(const LieAlgebra& g, int k) {
    ScalarMatrix bk = invariant_basis(g, k);
    ScalarMatrix bk1 = invariant_basis(g, k + 1);
    ScalarMatrix image = full_differential(g, k) * bk;
    auto x = solve_exact(bk1, image);
    if (!x) throw DomainError("relative CE differential does not preserve invariants");
    return *x;
}

CohomologyDims relative_cohomology_dim(const LieAlgebra& g, int k) {
    int m = g.dim() - g.cartan_dim();
    if (k < 0 || k > m) throw DomainError("relative_cohomology_dim: degree out of range");
    ScalarMatrix bk = invariant_basis(g, k);
    int ck = bk.cols();
    int rank_dk = (k < m) ? (full_differential(g, k) * bk).rank() : 0;
    int rank_dk1 = 0;
    if (k > 0) {
        ScalarMatrix bkm = invariant_basis(g, k - 1);
        rank_dk1 = (full_differential(g, k - 1) * bkm).rank();
    }
    return {ck, ck - rank_dk - rank_dk1};
}

}  // namespace drq
