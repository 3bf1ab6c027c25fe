#pragma once

#include <random>

#include "drq/dynr.hpp"
#include "drq/expr.hpp"

namespace drq::fixtures {

/* abelian ℝ³ with 𝔥 = span{h}, r = e₁∧e₂ */
inline DynamicalR make_fix_a() {
    auto alg = std::make_shared<LieAlgebra>(3, 1);
    MultiVector r(alg, 2);
    r.add_term({1, 2}, Scalar(1, 1));
    return DynamicalR(alg, r);
}

/* Heisenberg {h,e₁,e₂}, [e₁,e₂] = h central, r = f(λ)·e₁∧e₂ */
inline AlgebraPtr heisenberg() {
    auto alg = std::make_shared<LieAlgebra>(3, 1);
    alg->set_bracket(1, 2, 0, Scalar(1, 1));
    return alg;
}

inline DynamicalR make_fix_b(const std::string& f = "1/l1") {
    auto alg = heisenberg();
    MultiVector r(alg, 2);
    r.add_term({1, 2}, parse_scalar(f, 1));
    return DynamicalR(alg, r);
}

/* two-dimensional {h,e} with [h,e] = a·h, r = f(λ)·h∧e */
inline DynamicalR make_fix_c(long a = 1, const std::string& f = "1/l1") {
    auto alg = std::make_shared<LieAlgebra>(2, 1, std::vector<std::string>{"h", "e"});
    if (a != 0) alg->set_bracket(0, 1, 0, Scalar(1, a));
    MultiVector r(alg, 2);
    r.add_term({0, 1}, parse_scalar(f, 1));
    return DynamicalR(alg, r);
}

/* deterministic small random scalars: rational functions p(λ)/q(λ) */
struct Rng {
    std::mt19937 gen{12345u};

    long small() { return static_cast<long>(gen() % 7) - 3; }

    Scalar scalar(int nvars, bool allow_denominator = false) {
        Poly num(nvars);
        for (int t = 0; t < 3; ++t) {
            Mono m(nvars, 0);
            for (int v = 0; v < nvars; ++v) m[v] = gen() % 3;
            Poly piece(nvars);
            piece.set(m, GaussianRational(small()));
            num += piece;
        }
        if (!allow_denominator) return Scalar(num);
        Poly den(nvars);
        Mono m(nvars, 0);
        if (nvars > 0) m[0] = 1 + gen() % 2;
        den.set(m, GaussianRational(1));
        den += Poly::one(nvars);
        return Scalar(num, den);
    }

    MultiVector multivector(const AlgebraPtr& alg, int degree, bool allow_denominator = false) {
        MultiVector mv(alg, degree);
        int n = alg->dim();
        for (int t = 0; t < 3; ++t) {
            std::vector<int> idx;
            while (static_cast<int>(idx.size()) < degree) {
                int a = static_cast<int>(gen() % n);
                bool dup = false;
                for (int x : idx)
                    if (x == a) dup = true;
                if (!dup) idx.push_back(a);
            }
            std::sort(idx.begin(), idx.end());
            mv.add_term(idx, scalar(alg->nvars(), allow_denominator));
        }
        return mv;
    }
};

}  // namespace drq::fixtures
