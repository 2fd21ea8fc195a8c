#pragma once

#include "sphereforge/rational.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace sphereforge {

/// Dense row-major matrix over an exact field F. A 0xN or Nx0 matrix is
/// legal and stands for a map to or from the zero space.
template <class F>
class Mat {
public:
    Mat() : rows_(0), cols_(0) {}
    Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), e_(rows * cols) {}

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = F(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    F& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const F& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    bool is_zero() const {
        for (const F& x : e_)
            if (x != 0) return false;
        return true;
    }

    bool operator==(const Mat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
    }

    Mat operator+(const Mat& o) const {
        require(rows_ == o.rows_ && cols_ == o.cols_, "matrix shape mismatch in +");
        Mat r(rows_, cols_);
        for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] + o.e_[i];
        return r;
    }

    Mat operator-(const Mat& o) const {
        require(rows_ == o.rows_ && cols_ == o.cols_, "matrix shape mismatch in -");
        Mat r(rows_, cols_);
        for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] - o.e_[i];
        return r;
    }

    Mat operator-() const {
        Mat r(rows_, cols_);
        for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = -e_[i];
        return r;
    }

    Mat operator*(const Mat& o) const {
        require(cols_ == o.rows_, "matrix shape mismatch in *");
        Mat r(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const F& a = at(i, k);
                if (a == 0) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) {
                    const F& b = o.at(k, j);
                    if (b != 0) r.at(i, j) += a * b;
                }
            }
        return r;
    }

    Mat scaled(const F& c) const {
        Mat r(rows_, cols_);
        for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] * c;
        return r;
    }

    Mat transpose() const {
        Mat r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    Mat col(std::size_t j) const {
        Mat r(rows_, 1);
        for (std::size_t i = 0; i < rows_; ++i) r.at(i, 0) = at(i, j);
        return r;
    }

    /// Copies the given columns into a new matrix, in order.
    Mat select_cols(const std::vector<std::size_t>& idx) const {
        Mat r(rows_, idx.size());
        for (std::size_t j = 0; j < idx.size(); ++j)
            for (std::size_t i = 0; i < rows_; ++i) r.at(i, j) = at(i, idx[j]);
        return r;
    }

    static void require(bool ok, const char* msg) {
        if (!ok) throw Error(msg);
    }

private:
    std::size_t rows_, cols_;
    std::vector<F> e_;
};

template <class F>
Mat<F> hstack(const Mat<F>& a, const Mat<F>& b) {
    if (a.cols() == 0 && a.rows() == 0) return b;
    if (b.cols() == 0 && b.rows() == 0) return a;
    Mat<F>::require(a.rows() == b.rows(), "hstack row mismatch");
    Mat<F> r(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) r.at(i, a.cols() + j) = b.at(i, j);
    }
    return r;
}

template <class F>
Mat<F> vstack(const Mat<F>& a, const Mat<F>& b) {
    if (a.cols() == 0 && a.rows() == 0) return b;
    if (b.cols() == 0 && b.rows() == 0) return a;
    Mat<F>::require(a.cols() == b.cols(), "vstack col mismatch");
    Mat<F> r(a.rows() + b.rows(), a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j) {
        for (std::size_t i = 0; i < a.rows(); ++i) r.at(i, j) = a.at(i, j);
        for (std::size_t i = 0; i < b.rows(); ++i) r.at(a.rows() + i, j) = b.at(i, j);
    }
    return r;
}

/// Row echelon data: the reduced matrix plus pivot column indices.
template <class F>
struct Echelon {
    Mat<F> mat;
    std::vector<std::size_t> pivots;
};

/// Reduced row echelon form. Pivoting picks the leftmost nonzero column and
/// within it the first nonzero row; no numerical considerations apply.
template <class F>
Echelon<F> rref(Mat<F> m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t sel = row;
        while (sel < m.rows() && m.at(sel, col) == 0) ++sel;
        if (sel == m.rows()) continue;
        if (sel != row)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(sel, j), m.at(row, j));
        const F inv = F(1) / m.at(row, col);
        for (std::size_t j = col; j < m.cols(); ++j) m.at(row, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || m.at(i, col) == 0) continue;
            const F c = m.at(i, col);
            for (std::size_t j = col; j < m.cols(); ++j) m.at(i, j) -= c * m.at(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return {std::move(m), std::move(pivots)};
}

template <class F>
std::size_t rank(const Mat<F>& m) {
    return rref(m).pivots.size();
}

/// Basis of the null space, as columns; count = cols - rank.
template <class F>
Mat<F> kernel_basis(const Mat<F>& m) {
    Echelon<F> e = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t p : e.pivots) is_pivot[p] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t j = 0; j < m.cols(); ++j)
        if (!is_pivot[j]) free_cols.push_back(j);
    Mat<F> k(m.cols(), free_cols.size());
    for (std::size_t jj = 0; jj < free_cols.size(); ++jj) {
        const std::size_t fc = free_cols[jj];
        k.at(fc, jj) = F(1);
        for (std::size_t r = 0; r < e.pivots.size(); ++r)
            k.at(e.pivots[r], jj) = -e.mat.at(r, fc);
    }
    return k;
}

/// Columns of m spanning its image (the pivot columns).
template <class F>
Mat<F> image_basis(const Mat<F>& m) {
    return m.select_cols(rref(m).pivots);
}

/// Solves m * X = b column-wise; empty when the system is inconsistent.
/// Throws on a row-count mismatch.
template <class F>
std::optional<Mat<F>> solve(const Mat<F>& m, const Mat<F>& b) {
    if (m.rows() != b.rows())
        throw Error("solve: dimension mismatch (" + std::to_string(m.rows()) + " vs " +
                    std::to_string(b.rows()) + " rows)");
    Echelon<F> e = rref(hstack(m, b));
    for (std::size_t p : e.pivots)
        if (p >= m.cols()) return std::nullopt;
    Mat<F> x(m.cols(), b.cols());
    for (std::size_t r = 0; r < e.pivots.size(); ++r)
        for (std::size_t j = 0; j < b.cols(); ++j)
            x.at(e.pivots[r], j) = e.mat.at(r, m.cols() + j);
    return x;
}

/// Extends the independent columns of `sub` to a basis of F^ambient_dim by
/// first-fit against the standard basis. Throws if `sub` is dependent.
template <class F>
Mat<F> complement_basis(const Mat<F>& sub, std::size_t ambient_dim) {
    if (sub.cols() > 0 && sub.rows() != ambient_dim)
        throw Error("complement_basis: ambient dimension mismatch");
    if (rank(sub) != sub.cols()) throw Error("complement_basis: dependent input columns");
    Mat<F> acc = sub.rows() == ambient_dim ? sub : Mat<F>(ambient_dim, 0);
    std::size_t r = acc.cols();
    Mat<F> comp(ambient_dim, 0);
    for (std::size_t j = 0; j < ambient_dim && r < ambient_dim; ++j) {
        Mat<F> e(ambient_dim, 1);
        e.at(j, 0) = F(1);
        Mat<F> cand = hstack(acc, e);
        if (rank(cand) > r) {
            acc = std::move(cand);
            comp = hstack(comp, e);
            ++r;
        }
    }
    return comp.rows() == ambient_dim ? comp : Mat<F>(ambient_dim, 0);
}

/// Greedy selection of columns from `pool` extending the independent set
/// `sub`; the result together with sub spans what [sub|pool] spans.
template <class F>
Mat<F> extend_basis_from(const Mat<F>& sub, const Mat<F>& pool) {
    Mat<F> acc = sub;
    std::size_t r = rank(acc);
    Mat<F> picked(pool.rows(), 0);
    for (std::size_t j = 0; j < pool.cols(); ++j) {
        Mat<F> cand = hstack(acc, pool.col(j));
        std::size_t nr = rank(cand);
        if (nr > r) {
            acc = std::move(cand);
            picked = hstack(picked, pool.col(j));
            r = nr;
        }
    }
    return picked;
}

/// Exact inverse; empty when the matrix is singular or not square.
template <class F>
std::optional<Mat<F>> inverse(const Mat<F>& m) {
    if (m.rows() != m.cols()) return std::nullopt;
    auto x = solve(m, Mat<F>::identity(m.rows()));
    if (!x) return std::nullopt;
    if (rank(m) != m.rows()) return std::nullopt;
    return x;
}

using Matrix = Mat<Rational>;

}  // namespace sphereforge
