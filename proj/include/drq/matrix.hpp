#pragma once

#include <optional>
#include <vector>

#include "drq/scalar.hpp"

namespace drq {

/* Dense matrix over the rational-function field ℚ(i)(λ). */
class ScalarMatrix {
  public:
    ScalarMatrix() : rows_(0), cols_(0), nvars_(0) {}
    ScalarMatrix(int rows, int cols, int nvars)
        : rows_(rows), cols_(cols), nvars_(nvars), e_(rows * cols, Scalar(nvars)) {}

    static ScalarMatrix identity(int n, int nvars);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int nvars() const { return nvars_; }

    Scalar& at(int r, int c) { return e_[r * cols_ + c]; }
    const Scalar& at(int r, int c) const { return e_[r * cols_ + c]; }

    friend ScalarMatrix operator*(const ScalarMatrix& a, const ScalarMatrix& b);
    friend ScalarMatrix operator-(const ScalarMatrix& a, const ScalarMatrix& b);
    friend bool operator==(const ScalarMatrix& a, const ScalarMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
    }

    ScalarMatrix transposed() const;
    bool is_zero() const;
    bool is_antisymmetric() const;

    /* Rank over ℚ(i)(λ) by fraction-free (Bareiss) elimination on the
     * denominator-cleared polynomial matrix. */
    int rank() const;

    /* Exact inverse via Gauss-Jordan over the field; nullopt when the
     * matrix is singular or non-square. */
    std::optional<ScalarMatrix> inverse() const;

  private:
    int rows_, cols_, nvars_;
    std::vector<Scalar> e_;
};

/* matrix_rank_inverse per the module contract. */
struct RankInverse {
    int rank;
    std::optional<ScalarMatrix> inverse;
};
RankInverse matrix_rank_inverse(const ScalarMatrix& m);

/* Columns span ker(m); exact over the field. */
ScalarMatrix nullspace(const ScalarMatrix& m);

/* Solve a·x = b exactly (b may have several columns); nullopt when
 * inconsistent.  With a of full column rank the solution is unique. */
std::optional<ScalarMatrix> solve_exact(const ScalarMatrix& a, const ScalarMatrix& b);

}  // namespace drq
