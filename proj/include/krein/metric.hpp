#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "krein/cmatrix.hpp"
#include "krein/errors.hpp"
#include "krein/hermitian_eig.hpp"

namespace krein {

// Finite-dimensional indefinite metric. Stored canonically as diag(+/-1);
// arbitrary Hermitian invertible Gram matrices are accepted through
// normalize() and reduced once by congruence, after which adjoints are
// sign flips and the metric's own inertia is read off the signature.
class Metric {
  public:
    Metric() = default;

    static Metric euclidean(std::size_t dim) { return Metric(std::vector<int>(dim, 1)); }

    static Metric from_signature(std::vector<int> signs) { return Metric(std::move(signs)); }

    std::size_t dim() const { return signs_.size(); }
    std::size_t ind_minus() const { return ind_minus_; }
    int sign(std::size_t i) const { return signs_[i]; }
    const std::vector<int>& signature() const { return signs_; }

    CMatrix gram() const {
        CMatrix g(dim(), dim());
        for (std::size_t i = 0; i < dim(); ++i) g(i, i) = static_cast<double>(signs_[i]);
        return g;
    }

    bool same_as(const Metric& o) const { return signs_ == o.signs_; }

    // Direct sum metric for block maps P (+) C.
    friend Metric operator+(const Metric& a, const Metric& b) {
        std::vector<int> s = a.signs_;
        s.insert(s.end(), b.signs_.begin(), b.signs_.end());
        return Metric(std::move(s));
    }

    // Indefinite form [x, y] = y^H J x on coordinate vectors.
    cx form(const CMatrix& x, const CMatrix& y) const {
        if (x.rows() != dim() || y.rows() != dim() || x.cols() != 1 || y.cols() != 1)
            throw DimensionMismatch("metric form shape");
        cx s = 0.0;
        for (std::size_t i = 0; i < dim(); ++i) s += std::conj(y(i, 0)) * cx(double(signs_[i])) * x(i, 0);
        return s;
    }

  private:
    explicit Metric(std::vector<int> signs) : signs_(std::move(signs)) {
        for (int s : signs_) {
            if (s != 1 && s != -1) throw DomainViolation("metric signature entries must be +/-1");
            if (s < 0) ++ind_minus_;
        }
    }

    std::vector<int> signs_;
    std::size_t ind_minus_ = 0;
};

struct NormalizedMetric {
    Metric metric;      // canonical diag(+/-1), eigenvalue-ascending order
    CMatrix basis;      // W with W^H G W = J; new coordinates x' satisfy x = W x'
    CMatrix basis_inv;  // W^{-1}
};

// Congruence-normalizes a Hermitian invertible Gram matrix to diag(+/-1).
// Throws NonHermitian / SingularMatrix when the invariants fail.
inline NormalizedMetric normalize_metric(const CMatrix& gram, double tol = 1e-10) {
    const HermEig eig = herm_eig(gram, tol);
    const std::size_t n = gram.rows();
    const double scale = std::max(1.0, gram.max_abs());
    std::vector<int> signs(n);
    CMatrix w(n, n), winv(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        const double lam = eig.eigenvalues[k];
        if (std::abs(lam) <= tol * scale) throw SingularMatrix("metric gram is numerically singular");
        signs[k] = lam > 0.0 ? 1 : -1;
        const double r = 1.0 / std::sqrt(std::abs(lam));
        for (std::size_t i = 0; i < n; ++i) {
            w(i, k) = eig.vectors(i, k) * r;
            winv(k, i) = std::conj(eig.vectors(i, k)) / r;
        }
    }
    return NormalizedMetric{Metric::from_signature(std::move(signs)), std::move(w), std::move(winv)};
}

// Linear map between metric spaces, carrying its domain and codomain.
struct MetricMap {
    CMatrix mat;
    Metric domain;
    Metric codomain;

    MetricMap() = default;
    MetricMap(CMatrix m, Metric dom, Metric cod)
        : mat(std::move(m)), domain(std::move(dom)), codomain(std::move(cod)) {
        if (mat.rows() != codomain.dim() || mat.cols() != domain.dim())
            throw DimensionMismatch("metric map shape inconsistent with metrics");
    }
};

// A^[*] = J_dom^{-1} A^H J_cod; with canonical metrics this is just sign
// flips around the conjugate transpose.
inline MetricMap indef_adjoint(const MetricMap& a) {
    CMatrix adj = a.mat.adjoint();
    for (std::size_t i = 0; i < adj.rows(); ++i) {
        const double si = a.domain.sign(i);
        for (std::size_t j = 0; j < adj.cols(); ++j) adj(i, j) *= si * a.codomain.sign(j);
    }
    return MetricMap(std::move(adj), a.codomain, a.domain);
}

inline bool is_coisometric(const MetricMap& m, double tol = 1e-10) {
    const CMatrix defect = m.mat * indef_adjoint(m).mat - CMatrix::identity(m.codomain.dim());
    return defect.max_abs() <= tol;
}

struct DefectFactorization {
    MetricMap factor;   // X : C1 -> Q with X X^[*] = I - C C^[*]
    Metric metric_c1;   // signature of the defect space
    CMatrix defect;     // I - C C^[*] itself, for audit
    Inertia inertia_q;  // inertia of J_Q (I - C C^[*])
};

// Inertia-revealing factorization of the coisometry defect I - C C^[*].
// From the Hermitian matrix J_Q M = U L U^H keep the numerically nonzero
// part and take X = J_Q^{-1} U_r |L_r|^{1/2}, so that X X^[*] = M and the
// defect space signature is diag(sign L_r). Eigenvalues falling in the
// guard band (tol, 10 tol) times max|L| abort with RankAmbiguous: the
// rank cut would be arbitrary there and the caller must adjust tol.
inline DefectFactorization defect_factorization(const MetricMap& c, double tol = 1e-10) {
    const Metric& q = c.codomain;
    const std::size_t nq = q.dim();
    const CMatrix defect = CMatrix::identity(nq) - c.mat * indef_adjoint(c).mat;

    CMatrix jm = defect;  // J_Q * defect, row-scaled by signs
    for (std::size_t i = 0; i < nq; ++i) {
        const double si = q.sign(i);
        for (std::size_t j = 0; j < nq; ++j) jm(i, j) *= si;
    }
    const HermEig eig = herm_eig(jm, tol);

    double lmax = 0.0;
    for (double lam : eig.eigenvalues) lmax = std::max(lmax, std::abs(lam));
    const double cut = tol * std::max(lmax, 1e-300);
    std::vector<std::size_t> kept;
    for (std::size_t k = 0; k < nq; ++k) {
        const double lam = std::abs(eig.eigenvalues[k]);
        if (lam <= cut) continue;
        if (lam < 10.0 * cut)
            throw RankAmbiguous("defect_factorization: eigenvalue inside the rank guard band");
        kept.push_back(k);
    }
    // The factor is unique only up to a C1-coisometry; pin columns by
    // descending |lambda| and make the first nonzero entry positive real.
    std::stable_sort(kept.begin(), kept.end(), [&](std::size_t i, std::size_t j) {
        return std::abs(eig.eigenvalues[i]) > std::abs(eig.eigenvalues[j]);
    });

    Inertia in;
    std::vector<int> signs;
    signs.reserve(kept.size());
    CMatrix x(nq, kept.size());
    for (std::size_t col = 0; col < kept.size(); ++col) {
        const std::size_t k = kept[col];
        const double lam = eig.eigenvalues[k];
        signs.push_back(lam > 0.0 ? 1 : -1);
        const double r = std::sqrt(std::abs(lam));
        cx phase(1.0, 0.0);
        for (std::size_t i = 0; i < nq; ++i) {
            const cx v = eig.vectors(i, k);
            if (std::abs(v) > 1e-12) {
                phase = std::abs(v) / v;
                break;
            }
        }
        for (std::size_t i = 0; i < nq; ++i)
            x(i, col) = double(q.sign(i)) * eig.vectors(i, k) * phase * r;
    }
    for (std::size_t k = 0; k < nq; ++k) {
        const double lam = eig.eigenvalues[k];
        if (std::abs(lam) <= cut)
            ++in.n_zero;
        else if (lam > 0.0)
            ++in.n_plus;
        else
            ++in.n_minus;
    }

    Metric c1 = Metric::from_signature(std::move(signs));
    return DefectFactorization{MetricMap(std::move(x), c1, q), c1, defect, in};
}

}  // namespace krein
