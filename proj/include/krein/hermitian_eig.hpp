#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "krein/cmatrix.hpp"
#include "krein/errors.hpp"

namespace krein {

struct HermEig {
    std::vector<double> eigenvalues;  // ascending
    CMatrix vectors;                  // unitary, columns match eigenvalues
};

struct Inertia {
    std::size_t n_plus = 0;
    std::size_t n_minus = 0;
    std::size_t n_zero = 0;

    bool operator==(const Inertia&) const = default;
};

namespace detail {

// One complex Jacobi rotation zeroing A(p,q). The 2x2 pivot block is
// phase-reduced to a real symmetric problem and rotated with the
// classical smaller-angle tangent choice, which keeps the sweep stable.
inline void jacobi_rotate(CMatrix& a, CMatrix& v, std::size_t p, std::size_t q) {
    const cx apq = a(p, q);
    const double mag = std::abs(apq);
    if (mag == 0.0) return;
    const cx phase = apq / mag;
    const double app = a(p, p).real();
    const double aqq = a(q, q).real();
    const double tau = (aqq - app) / (2.0 * mag);
    double t;
    if (tau >= 0.0)
        t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
    else
        t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;

    // U = [[c*phase, s*phase], [-s, c]] on the (p,q) plane.
    const cx upp = c * phase, upq = s * phase;
    const cx uqp = cx(-s, 0.0), uqq = cx(c, 0.0);

    const std::size_t n = a.rows();
    for (std::size_t j = 0; j < n; ++j) {  // A <- U^H A (rows p,q)
        const cx rp = a(p, j), rq = a(q, j);
        a(p, j) = std::conj(upp) * rp + std::conj(uqp) * rq;
        a(q, j) = std::conj(upq) * rp + std::conj(uqq) * rq;
    }
    for (std::size_t i = 0; i < n; ++i) {  // A <- A U (cols p,q)
        const cx cp = a(i, p), cq = a(i, q);
        a(i, p) = cp * upp + cq * uqp;
        a(i, q) = cp * upq + cq * uqq;
    }
    for (std::size_t i = 0; i < n; ++i) {  // V <- V U
        const cx cp = v(i, p), cq = v(i, q);
        v(i, p) = cp * upp + cq * uqp;
        v(i, q) = cp * upq + cq * uqq;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = cx(a(p, p).real(), 0.0);
    a(q, q) = cx(a(q, q).real(), 0.0);
}

inline double off_diag_norm(const CMatrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

}  // namespace detail

// Eigendecomposition of a Hermitian matrix by cyclic Jacobi sweeps.
// Deterministic (fixed sweep order, no pivot-size heuristics) and
// accurate to machine precision at the dimensions used here (<= 64).
// `tol` only gates the Hermitian-symmetry precondition, relative to the
// largest entry; it does not loosen the decomposition itself.
inline HermEig herm_eig(const CMatrix& m, double tol = 1e-10) {
    if (!m.square()) throw DimensionMismatch("herm_eig needs square matrix");
    const std::size_t n = m.rows();
    const double scale = std::max(1.0, m.max_abs());
    if (max_abs_diff(m, m.adjoint()) > tol * scale)
        throw NonHermitian("herm_eig: matrix is not Hermitian within tolerance");

    CMatrix a = (m + m.adjoint()) * cx(0.5);
    CMatrix v = CMatrix::identity(n);
    const double target = 1e-15 * std::max(1.0, a.frobenius());
    for (int sweep = 0; sweep < 60; ++sweep) {
        if (detail::off_diag_norm(a) <= target) break;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q)
                if (std::abs(a(p, q)) > 1e-300) detail::jacobi_rotate(a, v, p, q);
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<double> lam(n);
    for (std::size_t i = 0; i < n; ++i) lam[i] = a(i, i).real();
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return lam[i] < lam[j]; });

    HermEig out;
    out.eigenvalues.resize(n);
    out.vectors = CMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.eigenvalues[k] = lam[order[k]];
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
    }
    return out;
}

// Signature counts of a Hermitian matrix: eigenvalues above tol, below
// -tol, and inside [-tol, tol]. The tolerance is absolute; callers that
// want a relative cut scale it by max|entry| first.
inline Inertia inertia(const CMatrix& m, double tol = 1e-10, double herm_tol = 1e-10) {
    const HermEig eig = herm_eig(m, herm_tol);
    Inertia in;
    for (double lam : eig.eigenvalues) {
        if (lam > tol)
            ++in.n_plus;
        else if (lam < -tol)
            ++in.n_minus;
        else
            ++in.n_zero;
    }
    return in;
}

}  // namespace krein
