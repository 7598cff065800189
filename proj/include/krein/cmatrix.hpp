#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

#include "krein/errors.hpp"

namespace krein {

using cx = std::complex<double>;

inline bool nearly_equal(cx a, cx b, double tol) { return std::abs(a - b) <= tol; }

// Dense complex matrix, row-major, value semantics. Everything in this
// library lives at desk scale (dims <= 64), so no blocking or aliasing
// tricks; clarity and bit-reproducibility win.
class CMatrix {
  public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, cx(0.0, 0.0)) {}

    CMatrix(std::initializer_list<std::initializer_list<cx>> rows) {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        a_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_) throw DimensionMismatch("ragged initializer");
            a_.insert(a_.end(), r.begin(), r.end());
        }
    }

    static CMatrix zero(std::size_t rows, std::size_t cols) { return CMatrix(rows, cols); }

    static CMatrix identity(std::size_t n) {
        CMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static CMatrix diag(const std::vector<cx>& d) {
        CMatrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    static CMatrix diag_real(const std::vector<double>& d) {
        CMatrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    static CMatrix column(const std::vector<cx>& v) {
        CMatrix m(v.size(), 1);
        for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }
    bool square() const { return rows_ == cols_; }

    cx& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    cx operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    CMatrix adjoint() const {
        CMatrix r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
        return r;
    }

    CMatrix transpose() const {
        CMatrix r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    CMatrix conj() const {
        CMatrix r = *this;
        for (auto& v : r.a_) v = std::conj(v);
        return r;
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& v : a_) m = std::max(m, std::abs(v));
        return m;
    }

    double frobenius() const {
        double s = 0.0;
        for (const auto& v : a_) s += std::norm(v);
        return std::sqrt(s);
    }

    CMatrix block(std::size_t i0, std::size_t j0, std::size_t nr, std::size_t nc) const {
        CMatrix r(nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j) r(i, j) = (*this)(i0 + i, j0 + j);
        return r;
    }

    void set_block(std::size_t i0, std::size_t j0, const CMatrix& b) {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) (*this)(i0 + i, j0 + j) = b(i, j);
    }

    CMatrix& operator+=(const CMatrix& o) {
        check_same_shape(o);
        for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
        return *this;
    }
    CMatrix& operator-=(const CMatrix& o) {
        check_same_shape(o);
        for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
        return *this;
    }
    CMatrix& operator*=(cx s) {
        for (auto& v : a_) v *= s;
        return *this;
    }

    friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
    friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
    friend CMatrix operator*(CMatrix a, cx s) { return a *= s; }
    friend CMatrix operator*(cx s, CMatrix a) { return a *= s; }
    friend CMatrix operator-(CMatrix a) { return a *= cx(-1.0); }

    friend CMatrix operator*(const CMatrix& a, const CMatrix& b) {
        if (a.cols_ != b.rows_) throw DimensionMismatch("matmul shape");
        CMatrix r(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const cx aik = a(i, k);
                if (aik == cx(0.0)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
            }
        return r;
    }

  private:
    void check_same_shape(const CMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("shape mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cx> a_;
};

inline double max_abs_diff(const CMatrix& a, const CMatrix& b) { return (a - b).max_abs(); }

// In-place partial-pivot LU. Singularities surface as exceptions rather
// than being regularized; exceptional points are part of the contract.
class LU {
  public:
    explicit LU(CMatrix a) : lu_(std::move(a)), piv_(lu_.rows()) {
        if (!lu_.square()) throw DimensionMismatch("LU needs square matrix");
        const std::size_t n = lu_.rows();
        for (std::size_t i = 0; i < n; ++i) piv_[i] = i;
        for (std::size_t k = 0; k < n; ++k) {
            std::size_t p = k;
            double best = std::abs(lu_(k, k));
            for (std::size_t i = k + 1; i < n; ++i) {
                const double v = std::abs(lu_(i, k));
                if (v > best) {
                    best = v;
                    p = i;
                }
            }
            if (p != k) {
                for (std::size_t j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(p, j));
                std::swap(piv_[k], piv_[p]);
                sign_ = -sign_;
            }
            const cx pivot = lu_(k, k);
            if (std::abs(pivot) == 0.0) {
                singular_ = true;
                continue;
            }
            for (std::size_t i = k + 1; i < n; ++i) {
                lu_(i, k) /= pivot;
                const cx lik = lu_(i, k);
                if (lik == cx(0.0)) continue;
                for (std::size_t j = k + 1; j < n; ++j) lu_(i, j) -= lik * lu_(k, j);
            }
        }
    }

    bool singular(double tol = 0.0) const {
        if (singular_) return true;
        double mn = 1e300, mx = 0.0;
        for (std::size_t i = 0; i < lu_.rows(); ++i) {
            const double d = std::abs(lu_(i, i));
            mn = std::min(mn, d);
            mx = std::max(mx, d);
        }
        if (mx == 0.0) return lu_.rows() > 0;
        return mn <= tol * mx;
    }

    cx det() const {
        cx d(sign_, 0.0);
        for (std::size_t i = 0; i < lu_.rows(); ++i) d *= lu_(i, i);
        return d;
    }

    // Solves A X = B.
    CMatrix solve(const CMatrix& b) const {
        const std::size_t n = lu_.rows();
        if (b.rows() != n) throw DimensionMismatch("solve rhs rows");
        if (singular(1e-14)) throw SingularMatrix("LU solve: singular system");
        CMatrix x(n, b.cols());
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) x(i, j) = b(piv_[i], j);
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = k + 1; i < n; ++i) {
                const cx lik = lu_(i, k);
                if (lik == cx(0.0)) continue;
                for (std::size_t j = 0; j < b.cols(); ++j) x(i, j) -= lik * x(k, j);
            }
        for (std::size_t kk = n; kk-- > 0;) {
            for (std::size_t j = 0; j < b.cols(); ++j) x(kk, j) /= lu_(kk, kk);
            for (std::size_t i = 0; i < kk; ++i) {
                const cx uik = lu_(i, kk);
                if (uik == cx(0.0)) continue;
                for (std::size_t j = 0; j < b.cols(); ++j) x(i, j) -= uik * x(kk, j);
            }
        }
        return x;
    }

    CMatrix inverse() const { return solve(CMatrix::identity(lu_.rows())); }

  private:
    CMatrix lu_;
    std::vector<std::size_t> piv_;
    int sign_ = 1;
    bool singular_ = false;
};

inline CMatrix solve(const CMatrix& a, const CMatrix& b) { return LU(a).solve(b); }
inline CMatrix inverse(const CMatrix& a) { return LU(a).inverse(); }

// Matrix exponential by scaling-and-squaring on the plain Taylor series.
// Used only to generate J-unitary matrices from J-skew generators, where
// inputs are pre-scaled; not a general-purpose expm.
inline CMatrix expm(const CMatrix& a) {
    if (!a.square()) throw DimensionMismatch("expm needs square matrix");
    const std::size_t n = a.rows();
    int s = 0;
    double scale = a.max_abs();
    while (scale > 0.5) {
        scale *= 0.5;
        ++s;
    }
    CMatrix x = a * cx(std::ldexp(1.0, -s));
    CMatrix sum = CMatrix::identity(n);
    CMatrix term = CMatrix::identity(n);
    for (int k = 1; k <= 24; ++k) {
        term = term * x;
        term *= cx(1.0 / k);
        sum += term;
        if (term.max_abs() < 1e-18) break;
    }
    for (int i = 0; i < s; ++i) sum = sum * sum;
    return sum;
}

}  // namespace krein
