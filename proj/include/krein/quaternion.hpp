#pragma once

#include <cmath>
#include <cstddef>
#include <type_traits>
#include <utility>
#include <vector>

#include "krein/cmatrix.hpp"
#include "krein/errors.hpp"

namespace krein {

// Quaternion p = x0 + x1 i + x2 j + x3 k with i^2 = j^2 = -1, ij = -ji = k.
struct Quaternion {
    double x0 = 0.0, x1 = 0.0, x2 = 0.0, x3 = 0.0;

    Quaternion() = default;
    Quaternion(double a, double b = 0.0, double c = 0.0, double d = 0.0) : x0(a), x1(b), x2(c), x3(d) {}

    static Quaternion from_complex(cx z) { return Quaternion(z.real(), z.imag()); }
    static Quaternion unit_i() { return Quaternion(0.0, 1.0); }
    static Quaternion unit_j() { return Quaternion(0.0, 0.0, 1.0); }
    static Quaternion unit_k() { return Quaternion(0.0, 0.0, 0.0, 1.0); }

    double re() const { return x0; }
    double norm2() const { return x0 * x0 + x1 * x1 + x2 * x2 + x3 * x3; }
    double abs() const { return std::sqrt(norm2()); }
    double imag_abs() const { return std::sqrt(x1 * x1 + x2 * x2 + x3 * x3); }
    bool is_real(double tol = 1e-13) const { return imag_abs() <= tol * std::max(1.0, std::fabs(x0)); }

    // p = a + b j with complex a, b (the symplectic split).
    cx part1() const { return cx(x0, x1); }
    cx part2() const { return cx(x2, x3); }
    static Quaternion from_parts(cx a, cx b) { return Quaternion(a.real(), a.imag(), b.real(), b.imag()); }

    Quaternion conj() const { return Quaternion(x0, -x1, -x2, -x3); }

    // Imaginary unit of the complex slice containing p.
    Quaternion slice_unit() const {
        const double n = imag_abs();
        if (n < 1e-300) return unit_i();  // real axis: any slice works
        return Quaternion(0.0, x1 / n, x2 / n, x3 / n);
    }

    friend Quaternion operator+(Quaternion a, const Quaternion& b) {
        return Quaternion(a.x0 + b.x0, a.x1 + b.x1, a.x2 + b.x2, a.x3 + b.x3);
    }
    friend Quaternion operator-(Quaternion a, const Quaternion& b) {
        return Quaternion(a.x0 - b.x0, a.x1 - b.x1, a.x2 - b.x2, a.x3 - b.x3);
    }
    friend Quaternion operator-(Quaternion a) { return Quaternion(-a.x0, -a.x1, -a.x2, -a.x3); }
    friend Quaternion operator*(Quaternion a, double s) {
        return Quaternion(a.x0 * s, a.x1 * s, a.x2 * s, a.x3 * s);
    }
    friend Quaternion operator*(double s, Quaternion a) { return a * s; }

    friend Quaternion operator*(const Quaternion& a, const Quaternion& b) {
        return Quaternion(a.x0 * b.x0 - a.x1 * b.x1 - a.x2 * b.x2 - a.x3 * b.x3,
                          a.x0 * b.x1 + a.x1 * b.x0 + a.x2 * b.x3 - a.x3 * b.x2,
                          a.x0 * b.x2 - a.x1 * b.x3 + a.x2 * b.x0 + a.x3 * b.x1,
                          a.x0 * b.x3 + a.x1 * b.x2 - a.x2 * b.x1 + a.x3 * b.x0);
    }

    Quaternion inv() const {
        const double n2 = norm2();
        if (n2 < 1e-300) throw DivisionByZero("quaternion inverse of zero");
        return conj() * (1.0 / n2);
    }
};

inline double qabs_diff(const Quaternion& a, const Quaternion& b) { return (a - b).abs(); }

// Dense quaternion matrix. Spectral and inversion work is always routed
// through the complex 2m x 2n embedding chi(A + Bj) = [[A, B], [-conj B, conj A]].
class QMatrix {
  public:
    QMatrix() = default;
    QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    static QMatrix identity(std::size_t n) {
        QMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = Quaternion(1.0);
        return m;
    }

    static QMatrix from_real(const CMatrix& re) {
        QMatrix m(re.rows(), re.cols());
        for (std::size_t i = 0; i < re.rows(); ++i)
            for (std::size_t j = 0; j < re.cols(); ++j) m(i, j) = Quaternion(re(i, j).real(), re(i, j).imag());
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Quaternion& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Quaternion& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    QMatrix adjoint() const {
        QMatrix r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j).conj();
        return r;
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& v : a_) m = std::max(m, v.abs());
        return m;
    }

    bool all_real(double tol = 1e-13) const {
        for (const auto& v : a_)
            if (!v.is_real(tol)) return false;
        return true;
    }

    CMatrix real_part() const {
        CMatrix r(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j).x0;
        return r;
    }

    CMatrix embed() const {
        CMatrix e(2 * rows_, 2 * cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) {
                const cx a = (*this)(i, j).part1();
                const cx b = (*this)(i, j).part2();
                e(i, j) = a;
                e(i, cols_ + j) = b;
                e(rows_ + i, j) = -std::conj(b);
                e(rows_ + i, cols_ + j) = std::conj(a);
            }
        return e;
    }

    static QMatrix from_embed(const CMatrix& e, double tol = 1e-9) {
        if (e.rows() % 2 != 0 || e.cols() % 2 != 0)
            throw NotInImage("from_embed: odd-sized complex matrix");
        const std::size_t m = e.rows() / 2, n = e.cols() / 2;
        const double scale = std::max(1.0, e.max_abs());
        QMatrix r(m, n);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const cx a = e(i, j), b = e(i, n + j);
                if (std::abs(e(m + i, j) + std::conj(b)) > tol * scale ||
                    std::abs(e(m + i, n + j) - std::conj(a)) > tol * scale)
                    throw NotInImage("from_embed: matrix lacks the symplectic symmetry");
                r(i, j) = Quaternion::from_parts(a, b);
            }
        return r;
    }

    friend QMatrix operator+(QMatrix x, const QMatrix& y) {
        for (std::size_t i = 0; i < x.a_.size(); ++i) x.a_[i] = x.a_[i] + y.a_[i];
        return x;
    }
    friend QMatrix operator-(QMatrix x, const QMatrix& y) {
        for (std::size_t i = 0; i < x.a_.size(); ++i) x.a_[i] = x.a_[i] - y.a_[i];
        return x;
    }

    friend QMatrix operator*(const QMatrix& x, const QMatrix& y) {
        if (x.cols_ != y.rows_) throw DimensionMismatch("qmatrix matmul shape");
        QMatrix r(x.rows_, y.cols_);
        for (std::size_t i = 0; i < x.rows_; ++i)
            for (std::size_t k = 0; k < x.cols_; ++k)
                for (std::size_t j = 0; j < y.cols_; ++j)
                    r(i, j) = r(i, j) + x(i, k) * y(k, j);
        return r;
    }

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Quaternion> a_;
};

inline QMatrix scalar_left(const Quaternion& s, QMatrix m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = s * m(i, j);
    return m;
}

inline QMatrix scalar_right(QMatrix m, const Quaternion& s) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = m(i, j) * s;
    return m;
}

inline double qmax_abs_diff(const QMatrix& a, const QMatrix& b) { return (a - b).max_abs(); }

inline QMatrix qinverse(const QMatrix& m) {
    if (m.rows() != m.cols()) throw DimensionMismatch("qinverse needs a square matrix");
    LU lu(m.embed());
    if (lu.singular(1e-13)) throw SingularSResolvent("quaternion matrix is singular");
    return QMatrix::from_embed(lu.inverse());
}

// G * (I - pA)^{-*} = (G - conj(p) G A)(I - 2 Re(p) A + |p|^2 A^2)^{-1},
// the slice extension of x -> G (I - xA)^{-1} off the real axis.
inline QMatrix star_inverse_resolvent(const QMatrix& a, const QMatrix& g, const Quaternion& p) {
    const std::size_t n = a.rows();
    if (a.cols() != n) throw DimensionMismatch("star_inverse_resolvent: A must be square");
    const QMatrix a2 = a * a;
    QMatrix den = QMatrix::identity(n) - scalar_left(Quaternion(2.0 * p.re()), a) + scalar_left(Quaternion(p.norm2()), a2);
    LU lu(den.embed());
    if (lu.singular(1e-13)) throw SingularSResolvent("p lies on the S-spectrum of the resolvent");
    const QMatrix num = g - scalar_left(p.conj(), g * a);
    return num * QMatrix::from_embed(lu.inverse());
}

// Power series around a real center, coefficients on the right:
// f(p) = sum_n (p - alpha)^n f_n. The real center is what makes the
// coefficient calculus (Cauchy products, shifts) valid.
template <typename Coeff>
struct SlicePowerSeries {
    double center = 0.0;
    std::vector<Coeff> coeffs;

    SlicePowerSeries() = default;
    SlicePowerSeries(double c, std::vector<Coeff> f) : center(c), coeffs(std::move(f)) {}

    std::size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
};

using QSeries = SlicePowerSeries<Quaternion>;
using QMatrixSeries = SlicePowerSeries<QMatrix>;

inline Quaternion series_eval(const QSeries& f, const Quaternion& p) {
    const Quaternion q = p - Quaternion(f.center);
    Quaternion acc(0.0), qpow(1.0);
    for (const auto& c : f.coeffs) {
        acc = acc + qpow * c;
        qpow = qpow * q;
    }
    return acc;
}

inline QMatrix series_eval(const QMatrixSeries& f, const Quaternion& p) {
    if (f.coeffs.empty()) return QMatrix();
    const Quaternion q = p - Quaternion(f.center);
    QMatrix acc(f.coeffs.front().rows(), f.coeffs.front().cols());
    Quaternion qpow(1.0);
    for (const auto& c : f.coeffs) {
        acc = acc + scalar_left(qpow, c);
        qpow = qpow * q;
    }
    return acc;
}

// Coefficient Cauchy product, the star product for real-centered series.
template <typename Coeff>
SlicePowerSeries<Coeff> star_product(const SlicePowerSeries<Coeff>& f, const SlicePowerSeries<Coeff>& g) {
    if (f.center != g.center) throw CenterMismatch("star_product: series centers differ");
    if (f.coeffs.empty() || g.coeffs.empty()) return SlicePowerSeries<Coeff>(f.center, {});
    std::vector<Coeff> h(f.coeffs.size() + g.coeffs.size() - 1);
    if constexpr (std::is_same_v<Coeff, QMatrix>) {
        for (auto& c : h) c = QMatrix(f.coeffs.front().rows(), g.coeffs.front().cols());
    }
    for (std::size_t i = 0; i < f.coeffs.size(); ++i)
        for (std::size_t j = 0; j < g.coeffs.size(); ++j) h[i + j] = h[i + j] + f.coeffs[i] * g.coeffs[j];
    return SlicePowerSeries<Coeff>(f.center, std::move(h));
}

inline bool is_intrinsic(const QSeries& f, double tol = 1e-13) {
    for (const auto& c : f.coeffs)
        if (!c.is_real(tol)) return false;
    return true;
}

// Pointwise star evaluation. For f(p) != 0 the conjugation identity
// (f star g)(p) = f(p) g(f(p)^{-1} p f(p)) gives the exact value; the
// zero case falls back to evaluating the coefficient product.
inline Quaternion star_eval(const QSeries& f, const QSeries& g, const Quaternion& p) {
    if (f.center != g.center) throw CenterMismatch("star_eval: series centers differ");
    const Quaternion fp = series_eval(f, p);
    if (fp.abs() < 1e-12) return series_eval(star_product(f, g), p);
    const Quaternion moved = fp.inv() * p * fp;
    return fp * series_eval(g, moved);
}

// R_alpha on a series centered at alpha is the coefficient shift.
template <typename Coeff>
SlicePowerSeries<Coeff> resolvent_r_alpha(const SlicePowerSeries<Coeff>& f, double alpha) {
    if (alpha != f.center) throw CenterMismatch("resolvent_r_alpha: alpha must equal the series center");
    if (f.coeffs.size() <= 1) return SlicePowerSeries<Coeff>(f.center, {});
    std::vector<Coeff> shifted(f.coeffs.begin() + 1, f.coeffs.end());
    return SlicePowerSeries<Coeff>(f.center, std::move(shifted));
}

}  // namespace krein
