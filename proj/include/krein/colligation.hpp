#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "krein/cmatrix.hpp"
#include "krein/errors.hpp"
#include "krein/hermitian_eig.hpp"
#include "krein/kernels.hpp"
#include "krein/metric.hpp"
#include "krein/rng.hpp"

namespace krein {

// Coisometric block colligation (T F; G H) : P (+) D -> P (+) C between
// metric spaces, together with the base point of the realization.
class Colligation {
  public:
    Colligation(CMatrix t, CMatrix f, CMatrix g, CMatrix h, Metric p, Metric d, Metric c, cx alpha,
                double tol = 1e-9)
        : t_(std::move(t)), f_(std::move(f)), g_(std::move(g)), h_(std::move(h)), p_(std::move(p)),
          d_(std::move(d)), c_(std::move(c)), alpha_(alpha) {
        if (t_.rows() != p_.dim() || t_.cols() != p_.dim()) throw DimensionMismatch("T block shape");
        if (f_.rows() != p_.dim() || f_.cols() != d_.dim()) throw DimensionMismatch("F block shape");
        if (g_.rows() != c_.dim() || g_.cols() != p_.dim()) throw DimensionMismatch("G block shape");
        if (h_.rows() != c_.dim() || h_.cols() != d_.dim()) throw DimensionMismatch("H block shape");
        if (d_.ind_minus() != c_.ind_minus())
            throw DomainViolation("colligation requires ind_-(D) = ind_-(C)");
        if (!is_coisometric(block_map(), tol))
            throw DomainViolation("colligation block matrix is not coisometric at the given tolerance");
    }

    const CMatrix& t() const { return t_; }
    const CMatrix& f() const { return f_; }
    const CMatrix& g() const { return g_; }
    const CMatrix& h() const { return h_; }
    const Metric& space_p() const { return p_; }
    const Metric& space_d() const { return d_; }
    const Metric& space_c() const { return c_; }
    cx alpha() const { return alpha_; }

    MetricMap block_map() const {
        const std::size_t np = p_.dim(), nd = d_.dim(), nc = c_.dim();
        CMatrix m(np + nc, np + nd);
        m.set_block(0, 0, t_);
        m.set_block(0, np, f_);
        m.set_block(np, 0, g_);
        m.set_block(np, np, h_);
        return MetricMap(std::move(m), p_ + d_, p_ + c_);
    }

  private:
    CMatrix t_, f_, g_, h_;
    Metric p_, d_, c_;
    cx alpha_;
};

namespace detail {

// (I - w T)^{-1} X with the singularity reported, never regularized.
inline CMatrix resolvent_solve(const CMatrix& t, cx w, const CMatrix& x) {
    const std::size_t n = t.rows();
    if (n == 0) return x;
    const CMatrix m = CMatrix::identity(n) - w * t;
    LU lu(m);
    if (lu.singular(1e-13)) throw SingularResolvent("I - wT is singular at this point");
    return lu.solve(x);
}

inline cx mobius_to_disk(cx z, cx alpha) {
    const cx den = z + std::conj(alpha);
    if (std::abs(den) < 1e-300) throw SingularResolvent("half-plane Moebius map singular");
    return (z - alpha) / den;
}

}  // namespace detail

// S(z) = H + z G (I - z T)^{-1} F.
inline CMatrix eval_disk(const Colligation& c, cx z) {
    return c.h() + z * (c.g() * detail::resolvent_solve(c.t(), z, c.f()));
}

// S(z) = H + b(z) G (I - b(z) T)^{-1} F with b(z) = (z - a)/(z + conj a).
inline CMatrix eval_halfplane(const Colligation& c, cx z) {
    if (c.alpha().real() <= 0.0) throw DomainViolation("half-plane evaluation needs Re alpha > 0");
    const cx b = detail::mobius_to_disk(z, c.alpha());
    return c.h() + b * (c.g() * detail::resolvent_solve(c.t(), b, c.f()));
}

inline CMatrix eval_setting(const Colligation& c, Setting setting, cx z) {
    return setting == Setting::Disk ? eval_disk(c, z) : eval_halfplane(c, z);
}

// Point-evaluation row map C_z : P -> C of the canonical model realized
// by the colligation. Disk: G (I - zT)^{-1}. Half-plane:
// C_z = (a + conj a)/(z + conj a) C_a (I - b(z) T)^{-1}, C_a = G / sqrt(2 pi k).
inline CMatrix point_eval_map(const Colligation& c, Setting setting, cx z) {
    if (setting == Setting::Disk) return c.g() * detail::resolvent_solve(c.t(), z, CMatrix::identity(c.space_p().dim()));
    const double k = 2.0 * c.alpha().real();
    if (k <= 0.0) throw DomainViolation("half-plane point evaluation needs Re alpha > 0");
    const cx b = detail::mobius_to_disk(z, c.alpha());
    const cx scale = cx(k) / (z + std::conj(c.alpha())) / std::sqrt(kTwoPi * k);
    return scale * (c.g() * detail::resolvent_solve(c.t(), b, CMatrix::identity(c.space_p().dim())));
}

// K_S(z,w) = (I - S(z) S(w)^[*]) / (1 - z conj w)   (disk)
//          = (I - S(z) S(w)^[*]) / (2 pi (z + conj w))   (half-plane)
inline CMatrix kernel_direct(const Colligation& c, Setting setting, cx z, cx w) {
    const cx den = setting == Setting::Disk ? cx(1.0) - z * std::conj(w)
                                            : kTwoPi * (z + std::conj(w));
    if (std::abs(den) < 1e-13) throw SingularResolvent("kernel denominator vanishes at (z, w)");
    const CMatrix sz = eval_setting(c, setting, z);
    const MetricMap sw(eval_setting(c, setting, w), c.space_d(), c.space_c());
    return (CMatrix::identity(c.space_c().dim()) - sz * indef_adjoint(sw).mat) * (cx(1.0) / den);
}

// Same kernel through the resolvent form K_S(z,w) = C_z C_w^[*].
inline CMatrix kernel_colligation(const Colligation& c, Setting setting, cx z, cx w) {
    const MetricMap cw(point_eval_map(c, setting, w), c.space_p(), c.space_c());
    return point_eval_map(c, setting, z) * indef_adjoint(cw).mat;
}

inline std::size_t negative_squares_of_s(const Colligation& c, Setting setting, const PointChoice& choice,
                                         double tol = 1e-10) {
    auto kernel = [&](cx z, cx w) { return kernel_direct(c, setting, z, w); };
    return negative_squares(kernel, choice, tol, c.space_c().gram());
}

// Random coisometric colligation: a J-unitary block matrix over
// P (+) C with D identified with C (Euclidean), cut into blocks.
inline Colligation random_colligation(SplitMix64& rng, std::size_t dim_p, std::size_t ind_p,
                                      std::size_t dim_c, cx alpha, double spread = 0.6) {
    std::vector<int> sig(dim_p, 1);
    for (std::size_t i = 0; i < ind_p && i < dim_p; ++i) sig[i] = -1;
    const Metric p = Metric::from_signature(sig);
    const Metric cmet = Metric::euclidean(dim_c);
    const CMatrix m = random_j_unitary(rng, p + cmet, spread);
    return Colligation(m.block(0, 0, dim_p, dim_p), m.block(0, dim_p, dim_p, dim_c),
                       m.block(dim_p, 0, dim_c, dim_p), m.block(dim_p, dim_p, dim_c, dim_c), p, cmet,
                       cmet, alpha);
}

// Finite reproducing-kernel model space presented by raw matrices: the
// Gram of a basis, the matrix of R_alpha on it, and the point evaluation
// at alpha. Deliberately representation-free so the construction
// algorithm is testable on bare data.
struct FiniteModelSpace {
    CMatrix gram;     // Hermitian invertible n x n
    CMatrix a_alpha;  // R_alpha on the basis
    CMatrix e_alpha;  // dim(C) x n evaluation at alpha
    Metric coeff;     // metric of the coefficient space C
    cx alpha;         // base point, Re alpha > 0

    std::size_t dim() const { return gram.rows(); }
};

// Slack of the structural inequality at alpha, in the raw basis:
//   -( k A^H P A + A^H P + P A + 2 pi E^H J_C E ),  k = 2 Re alpha.
// Positive semidefinite iff the inequality holds; identically zero for
// spaces sitting isometrically inside the Hardy space.
inline CMatrix model_inequality_slack(const FiniteModelSpace& m) {
    const double k = 2.0 * m.alpha.real();
    const CMatrix& p = m.gram;
    const CMatrix jc = m.coeff.gram();
    const CMatrix ah = m.a_alpha.adjoint();
    CMatrix s = ah * p * m.a_alpha * cx(k) + ah * p + p * m.a_alpha + m.e_alpha.adjoint() * jc * m.e_alpha * cx(kTwoPi);
    s = (s + s.adjoint()) * cx(-0.5);
    return s;
}

// Reproducing kernel of the model space itself, via the transported
// point evaluation E_z = ((a + conj a)/(z + conj a)) E (I - b(z) T)^{-1}
// with T = kA + I: K(z,w) = E_z P^{-1} E_w^H J_C.
inline CMatrix model_space_kernel(const FiniteModelSpace& m, cx z, cx w) {
    const double k = 2.0 * m.alpha.real();
    const CMatrix t = m.a_alpha * cx(k) + CMatrix::identity(m.dim());
    auto ev = [&](cx zz) {
        const cx b = detail::mobius_to_disk(zz, m.alpha);
        const cx scale = cx(k) / (zz + std::conj(m.alpha));
        return scale * (m.e_alpha * detail::resolvent_solve(t, b, CMatrix::identity(m.dim())));
    };
    const CMatrix ez = ev(z);
    const CMatrix ew = ev(w);
    return ez * solve(m.gram, ew.adjoint()) * m.coeff.gram();
}

struct Construction {
    Colligation colligation;
    double k;                  // 2 Re alpha
    CMatrix t_mat, g_mat;      // T, G on the normalized basis
    DefectFactorization defect;
    Metric metric_c1;
    Inertia slack_inertia;     // inertia of the inequality slack
    NormalizedMetric basis;    // congruence used to canonicalize the Gram
};

// Constructive model-space-to-colligation algorithm:
//   T = k R_alpha + I,  G = sqrt(2 pi k) C_alpha,  C = (T; G),
// then a defect factorization of I - C C^[*] supplies (F; H) and the
// block matrix is coisometric by construction.
inline Construction construct_from_space(const FiniteModelSpace& m, double tol = 1e-10) {
    if (m.alpha.real() <= 0.0) throw DomainViolation("construct_from_space: Re alpha must be positive");
    if (m.a_alpha.rows() != m.dim() || m.a_alpha.cols() != m.dim())
        throw DimensionMismatch("model space: R_alpha matrix shape");
    if (m.e_alpha.cols() != m.dim() || m.e_alpha.rows() != m.coeff.dim())
        throw DimensionMismatch("model space: evaluation matrix shape");

    const CMatrix slack = model_inequality_slack(m);
    const Inertia slack_in = inertia(slack, tol * std::max(1.0, slack.max_abs()));
    if (slack_in.n_minus > 0)
        throw InequalityViolated("construct_from_space: structural inequality fails at the base point");

    NormalizedMetric basis = normalize_metric(m.gram, tol);
    const Metric& jp = basis.metric;
    const CMatrix a = basis.basis_inv * m.a_alpha * basis.basis;
    const CMatrix e = m.e_alpha * basis.basis;

    const double k = 2.0 * m.alpha.real();
    const CMatrix t = a * cx(k) + CMatrix::identity(m.dim());
    const CMatrix g = e * cx(std::sqrt(kTwoPi * k));

    CMatrix col(m.dim() + m.coeff.dim(), m.dim());
    col.set_block(0, 0, t);
    col.set_block(m.dim(), 0, g);
    DefectFactorization defect = defect_factorization(MetricMap(col, jp, jp + m.coeff), tol);

    if (defect.metric_c1.ind_minus() != m.coeff.ind_minus())
        throw InequalityViolated("construct_from_space: defect space index does not match ind_-(C)");

    const CMatrix f = defect.factor.mat.block(0, 0, m.dim(), defect.metric_c1.dim());
    const CMatrix h = defect.factor.mat.block(m.dim(), 0, m.coeff.dim(), defect.metric_c1.dim());

    Colligation cg(t, f, g, h, jp, defect.metric_c1, m.coeff, m.alpha, std::max(tol, 1e-9));
    return Construction{std::move(cg), k,      t,       g, std::move(defect), defect.metric_c1,
                        slack_in,      std::move(basis)};
}

// n-factor half-plane Blaschke product and the model space spanned by
// the Hardy kernel sections at its zeros (an isometric inclusion).
inline cx blaschke_halfplane(const std::vector<cx>& zeros, cx z) {
    cx v(1.0);
    for (cx w : zeros) v *= (z - w) / (z + std::conj(w));
    return v;
}

inline FiniteModelSpace blaschke_model_space(const std::vector<cx>& zeros, cx alpha) {
    const std::size_t n = zeros.size();
    FiniteModelSpace m;
    m.gram = CMatrix(n, n);
    m.a_alpha = CMatrix(n, n);
    m.e_alpha = CMatrix(1, n);
    m.coeff = Metric::euclidean(1);
    m.alpha = alpha;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m.gram(i, j) = 1.0 / (kTwoPi * (zeros[i] + std::conj(zeros[j])));
        m.a_alpha(i, i) = -1.0 / (alpha + std::conj(zeros[i]));
        m.e_alpha(0, i) = 1.0 / (kTwoPi * (alpha + std::conj(zeros[i])));
    }
    return m;
}

inline cx blaschke_kernel(const std::vector<cx>& zeros, cx z, cx w) {
    return (1.0 - blaschke_halfplane(zeros, z) * std::conj(blaschke_halfplane(zeros, w))) /
           (kTwoPi * (z + std::conj(w)));
}

// Reads the model-space data back out of a half-plane colligation
// (inverse of construct_from_space up to basis choice).
inline FiniteModelSpace model_space_of(const Colligation& c) {
    const double k = 2.0 * c.alpha().real();
    if (k <= 0.0) throw DomainViolation("model_space_of: Re alpha must be positive");
    FiniteModelSpace m;
    m.gram = c.space_p().gram();
    m.a_alpha = (c.t() - CMatrix::identity(c.space_p().dim())) * cx(1.0 / k);
    m.e_alpha = c.g() * cx(1.0 / std::sqrt(kTwoPi * k));
    m.coeff = c.space_c();
    m.alpha = c.alpha();
    return m;
}

}  // namespace krein
