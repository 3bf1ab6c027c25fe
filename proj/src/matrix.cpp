#include "drq/matrix.hpp"

namespace drq {

ScalarMatrix ScalarMatrix::identity(int n, int nvars) {
    ScalarMatrix m(n, n, nvars);
    for (int i = 0; i < n; ++i) m.at(i, i) = Scalar(nvars, 1);
    return m;
}

ScalarMatrix operator*(const ScalarMatrix& a, const ScalarMatrix& b) {
    if (a.cols_ != b.rows_) throw DomainError("matrix product: shape mismatch");
    ScalarMatrix r(a.rows_, b.cols_, a.nvars_);
    for (int i = 0; i < a.rows_; ++i)
        for (int j = 0; j < b.cols_; ++j) {
            Scalar s(a.nvars_);
            for (int k = 0; k < a.cols_; ++k) s += a.at(i, k) * b.at(k, j);
            r.at(i, j) = s;
        }
    return r;
}

ScalarMatrix operator-(const ScalarMatrix& a, const ScalarMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DomainError("matrix difference: shape mismatch");
    ScalarMatrix r(a.rows_, a.cols_, a.nvars_);
    for (int i = 0; i < a.rows_ * a.cols_; ++i) r.e_[i] = a.e_[i] - b.e_[i];
    return r;
}

ScalarMatrix ScalarMatrix::transposed() const {
    ScalarMatrix r(cols_, rows_, nvars_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

bool ScalarMatrix::is_zero() const {
    for (const Scalar& s : e_)
        if (!s.is_zero()) return false;
    return true;
}

bool ScalarMatrix::is_antisymmetric() const {
    if (rows_ != cols_) return false;
    for (int i = 0; i < rows_; ++i)
        for (int j = i; j < cols_; ++j)
            if (!(at(i, j) + at(j, i)).is_zero()) return false;
    return true;
}

int ScalarMatrix::rank() const {
    if (rows_ == 0 || cols_ == 0) return 0;
    /* clear denominators row by row, then Bareiss */
    std::vector<Poly> m;
    m.reserve(rows_ * cols_);
    for (int i = 0; i < rows_; ++i) {
        Poly common = Poly::one(nvars_);
        for (int j = 0; j < cols_; ++j)
            common = exact_div(common * at(i, j).den(), poly_gcd(common, at(i, j).den()));
        for (int j = 0; j < cols_; ++j)
            m.push_back(at(i, j).num() * exact_div(common, at(i, j).den()));
    }
    auto el = [&](int r, int c) -> Poly& { return m[r * cols_ + c]; };
    Poly prev = Poly::one(nvars_);
    int rank = 0;
    for (int col = 0; col < cols_ && rank < rows_; ++col) {
        int pivot = -1;
        for (int r = rank; r < rows_; ++r)
            if (!el(r, col).is_zero()) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        if (pivot != rank)
            for (int c = 0; c < cols_; ++c) std::swap(el(pivot, c), el(rank, c));
        for (int r = rank + 1; r < rows_; ++r) {
            for (int c = col + 1; c < cols_; ++c)
                el(r, c) = exact_div(el(rank, col) * el(r, c) - el(r, col) * el(rank, c), prev);
            el(r, col) = Poly(nvars_);
        }
        prev = el(rank, col);
        ++rank;
    }
    return rank;
}

std::optional<ScalarMatrix> ScalarMatrix::inverse() const {
    if (rows_ != cols_) return std::nullopt;
    ScalarMatrix a = *this;
    ScalarMatrix inv = identity(rows_, nvars_);
    for (int col = 0; col < cols_; ++col) {
        int pivot = -1;
        for (int r = col; r < rows_; ++r)
            if (!a.at(r, col).is_zero()) {
                pivot = r;
                break;
            }
        if (pivot < 0) return std::nullopt;
        if (pivot != col)
            for (int c = 0; c < cols_; ++c) {
                std::swap(a.at(pivot, c), a.at(col, c));
                std::swap(inv.at(pivot, c), inv.at(col, c));
            }
        Scalar p = a.at(col, col).inv();
        for (int c = 0; c < cols_; ++c) {
            a.at(col, c) *= p;
            inv.at(col, c) *= p;
        }
        for (int r = 0; r < rows_; ++r) {
            if (r == col || a.at(r, col).is_zero()) continue;
            Scalar f = a.at(r, col);
            for (int c = 0; c < cols_; ++c) {
                a.at(r, c) -= f * a.at(col, c);
                inv.at(r, c) -= f * inv.at(col, c);
            }
        }
    }
    return inv;
}

RankInverse matrix_rank_inverse(const ScalarMatrix& m) {
    RankInverse out{m.rank(), std::nullopt};
    if (m.rows() == m.cols() && out.rank == m.rows()) out.inverse = m.inverse();
    return out;
}

/* Row-reduce `a` in place (Gauss-Jordan), applying the same operations to
 * `rhs` when given; returns pivot column indices. */
static std::vector<int> row_reduce(ScalarMatrix& a, ScalarMatrix* rhs) {
    std::vector<int> pivots;
    int r = 0;
    for (int col = 0; col < a.cols() && r < a.rows(); ++col) {
        int pivot = -1;
        for (int i = r; i < a.rows(); ++i)
            if (!a.at(i, col).is_zero()) {
                pivot = i;
                break;
            }
        if (pivot < 0) continue;
        if (pivot != r) {
            for (int c = 0; c < a.cols(); ++c) std::swap(a.at(pivot, c), a.at(r, c));
            if (rhs)
                for (int c = 0; c < rhs->cols(); ++c) std::swap(rhs->at(pivot, c), rhs->at(r, c));
        }
        Scalar inv = a.at(r, col).inv();
        for (int c = 0; c < a.cols(); ++c) a.at(r, c) *= inv;
        if (rhs)
            for (int c = 0; c < rhs->cols(); ++c) rhs->at(r, c) *= inv;
        for (int i = 0; i < a.rows(); ++i) {
            if (i == r || a.at(i, col).is_zero()) continue;
            Scalar f = a.at(i, col);
            for (int c = 0; c < a.cols(); ++c) a.at(i, c) -= f * a.at(r, c);
            if (rhs)
                for (int c = 0; c < rhs->cols(); ++c) rhs->at(i, c) -= f * rhs->at(r, c);
        }
        pivots.push_back(col);
        ++r;
    }
    return pivots;
}

ScalarMatrix nullspace(const ScalarMatrix& m) {
    ScalarMatrix a = m;
    std::vector<int> pivots = row_reduce(a, nullptr);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int p : pivots) is_pivot[p] = true;
    std::vector<int> free_cols;
    for (int c = 0; c < m.cols(); ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    ScalarMatrix basis(m.cols(), static_cast<int>(free_cols.size()), m.nvars());
    for (size_t j = 0; j < free_cols.size(); ++j) {
        basis.at(free_cols[j], static_cast<int>(j)) = Scalar(m.nvars(), 1);
        for (size_t r = 0; r < pivots.size(); ++r)
            basis.at(pivots[r], static_cast<int>(j)) = -a.at(static_cast<int>(r), free_cols[j]);
    }
    return basis;
}

std::optional<ScalarMatrix> solve_exact(const ScalarMatrix& a, const ScalarMatrix& b) {
    if (a.rows() != b.rows()) throw DomainError("solve_exact: shape mismatch");
    ScalarMatrix red = a, rhs = b;
    std::vector<int> pivots = row_reduce(red, &rhs);
    /* consistency: zero rows of `red` must have zero rhs */
    for (int i = static_cast<int>(pivots.size()); i < red.rows(); ++i)
        for (int c = 0; c < rhs.cols(); ++c)
            if (!rhs.at(i, c).is_zero()) return std::nullopt;
    ScalarMatrix x(a.cols(), b.cols(), a.nvars());
    for (size_t r = 0; r < pivots.size(); ++r)
        for (int c = 0; c < b.cols(); ++c) x.at(pivots[r], c) = rhs.at(static_cast<int>(r), c);
    return x;
}

}  // namespace drq
