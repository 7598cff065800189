#pragma once

#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "krein/abpair.hpp"
#include "krein/cmatrix.hpp"
#include "krein/colligation.hpp"
#include "krein/errors.hpp"
#include "krein/hermitian_eig.hpp"
#include "krein/kernels.hpp"
#include "krein/metric.hpp"
#include "krein/quaternion.hpp"

namespace krein {

inline bool in_half_space(const Quaternion& p) { return p.re() > 0.0; }

// Slice-hyperholomorphic Hardy kernel of the right half-space,
// k(p,q) = (p + conj q)^{-star} in p. Both published factorizations are
// computed and must agree to near machine precision.
inline Quaternion k_halfspace(const Quaternion& p, const Quaternion& q) {
    if (!in_half_space(p) || !in_half_space(q)) throw DomainViolation("k_halfspace: points must satisfy Re > 0");
    const Quaternion qc = q.conj();
    const Quaternion den1 = Quaternion(p.norm2()) + 2.0 * p.re() * qc + qc * qc;
    const Quaternion den2 = Quaternion(q.norm2()) + 2.0 * q.re() * p + p * p;
    if (den1.abs() < 1e-300 || den2.abs() < 1e-300)
        throw SingularDenominator("k_halfspace: factorization denominator vanished");
    const Quaternion k1 = (p.conj() + qc) * den1.inv();
    const Quaternion k2 = den2.inv() * (p + q);
    if (qabs_diff(k1, k2) > 1e-12 * std::max(1.0, k1.abs()))
        throw Error("k_halfspace: the two factorizations disagree");
    return k2;
}

// Residual of the scalar Stein-type identity nu k(nu,mu) + k(nu,mu) conj(mu) = 1.
inline double k_stein_identity_residual(const Quaternion& nu, const Quaternion& mu) {
    const Quaternion k = k_halfspace(nu, mu);
    return (nu * k + k * mu.conj() - Quaternion(1.0)).abs();
}

// Coisometric quaternionic colligation with a real base point. Metrics
// are real signature matrices; coisometry is checked through the complex
// embedding, under which the signature simply doubles.
class QColligation {
  public:
    QColligation(QMatrix t, QMatrix f, QMatrix g, QMatrix h, Metric p, Metric d, Metric c, double alpha,
                 double tol = 1e-9)
        : t_(std::move(t)), f_(std::move(f)), g_(std::move(g)), h_(std::move(h)), p_(std::move(p)),
          d_(std::move(d)), c_(std::move(c)), alpha_(alpha) {
        if (alpha_ <= 0.0) throw DomainViolation("quaternionic colligation needs a real base point alpha > 0");
        if (t_.rows() != p_.dim() || t_.cols() != p_.dim()) throw DimensionMismatch("T block shape");
        if (f_.rows() != p_.dim() || f_.cols() != d_.dim()) throw DimensionMismatch("F block shape");
        if (g_.rows() != c_.dim() || g_.cols() != p_.dim()) throw DimensionMismatch("G block shape");
        if (h_.rows() != c_.dim() || h_.cols() != d_.dim()) throw DimensionMismatch("H block shape");
        if (d_.ind_minus() != c_.ind_minus()) throw DomainViolation("ind_-(D) must equal ind_-(C)");

        const std::size_t np = p_.dim(), nd = d_.dim(), nc = c_.dim();
        QMatrix big(np + nc, np + nd);
        for (std::size_t i = 0; i < np; ++i) {
            for (std::size_t j = 0; j < np; ++j) big(i, j) = t_(i, j);
            for (std::size_t j = 0; j < nd; ++j) big(i, np + j) = f_(i, j);
        }
        for (std::size_t i = 0; i < nc; ++i) {
            for (std::size_t j = 0; j < np; ++j) big(np + i, j) = g_(i, j);
            for (std::size_t j = 0; j < nd; ++j) big(np + i, np + j) = h_(i, j);
        }
        const Metric dom = double_metric(p_ + d_);
        const Metric cod = double_metric(p_ + c_);
        if (!is_coisometric(MetricMap(big.embed(), dom, cod), tol))
            throw DomainViolation("quaternionic colligation is not coisometric");
    }

    const QMatrix& t() const { return t_; }
    const QMatrix& f() const { return f_; }
    const QMatrix& g() const { return g_; }
    const QMatrix& h() const { return h_; }
    const Metric& space_p() const { return p_; }
    const Metric& space_d() const { return d_; }
    const Metric& space_c() const { return c_; }
    double alpha() const { return alpha_; }

    // Complex colligation of the embedded blocks (sizes doubled). Its
    // half-plane transfer function is the analytic continuation of
    // x -> chi(S(x)) off the real axis.
    Colligation embedded(double tol = 1e-9) const {
        return Colligation(t_.embed(), f_.embed(), g_.embed(), h_.embed(), double_metric(p_),
                           double_metric(d_), double_metric(c_), cx(alpha_, 0.0), tol);
    }

    static Metric double_metric(const Metric& m) {
        std::vector<int> s = m.signature();
        s.insert(s.end(), m.signature().begin(), m.signature().end());
        return Metric::from_signature(std::move(s));
    }

  private:
    QMatrix t_, f_, g_, h_;
    Metric p_, d_, c_;
    double alpha_;
};

// Random coisometric quaternionic colligation: exponential of a J-skew
// quaternionic generator, computed through the embedding (chi commutes
// with the exponential series). D is identified with C, Euclidean.
inline QColligation random_q_colligation(SplitMix64& rng, std::size_t dim_p, std::size_t ind_p,
                                         std::size_t dim_c, double alpha, double spread = 0.5,
                                         bool real_entries = false) {
    std::vector<int> sig(dim_p, 1);
    for (std::size_t i = 0; i < ind_p && i < dim_p; ++i) sig[i] = -1;
    const Metric p = Metric::from_signature(sig);
    const Metric cmet = Metric::euclidean(dim_c);
    const Metric j = p + cmet;
    const std::size_t n = j.dim();

    QMatrix w(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            w(i, k) = real_entries
                          ? Quaternion(rng.uniform(-spread, spread))
                          : Quaternion(rng.uniform(-spread, spread), rng.uniform(-spread, spread),
                                       rng.uniform(-spread, spread), rng.uniform(-spread, spread));
    QMatrix skew = w - w.adjoint();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) skew(i, k) = skew(i, k) * (0.5 * double(j.sign(k)));
    const QMatrix m = QMatrix::from_embed(expm(skew.embed()));

    QMatrix t(dim_p, dim_p), f(dim_p, dim_c), g(dim_c, dim_p), h(dim_c, dim_c);
    for (std::size_t i = 0; i < dim_p; ++i) {
        for (std::size_t k = 0; k < dim_p; ++k) t(i, k) = m(i, k);
        for (std::size_t k = 0; k < dim_c; ++k) f(i, k) = m(i, dim_p + k);
    }
    for (std::size_t i = 0; i < dim_c; ++i) {
        for (std::size_t k = 0; k < dim_p; ++k) g(i, k) = m(dim_p + i, k);
        for (std::size_t k = 0; k < dim_c; ++k) h(i, k) = m(dim_p + i, dim_p + k);
    }
    return QColligation(std::move(t), std::move(f), std::move(g), std::move(h), p, cmet, cmet, alpha);
}

namespace detail {

inline Quaternion half_space_mobius(const Quaternion& p, double alpha) {
    const Quaternion den = p + Quaternion(alpha);
    if (den.abs() < 1e-300) throw SingularSResolvent("half-space Moebius map singular");
    return (p - Quaternion(alpha)) * den.inv();
}

}  // namespace detail

// S(p) = H + q(p) G star (I - q(p) T)^{-star} F with q(p) = (p - a)(p + a)^{-1}.
// q is intrinsic because alpha is real, which is what licenses plugging a
// quaternion into the resolvent extension.
inline QMatrix eval_q(const QColligation& c, const Quaternion& p) {
    const Quaternion qq = detail::half_space_mobius(p, c.alpha());
    const QMatrix res = star_inverse_resolvent(c.t(), c.g(), qq);
    return c.h() + scalar_left(qq, res * c.f());
}

namespace detail {

// Complex point (x + iy, I) presentation of a quaternion.
struct SlicePoint {
    cx z;
    Quaternion unit;
};

inline SlicePoint slice_of(const Quaternion& p) {
    const double y = p.imag_abs();
    return SlicePoint{cx(p.re(), y), y < 1e-300 ? Quaternion::unit_i() : p.slice_unit()};
}

}  // namespace detail

// K_S(p,q) = k(p,q) I_C - S(p) star k(p,q) I_C star_r S(q)^*, computed
// exactly as the two-sided slice extension of the real-axis kernel
// (t,s) -> (I - S(t) S(s)^[*]) / (t + s). The embedded complex kernel
// Khat(z,w) is sesqui-analytic and chi-compatible at real points, so four
// evaluations at (z,w), (conj z,w), (z,conj w), (conj z,conj w) recover
// the coefficient sums over Re/Im parts of (p-a)^m and (conj q-a)^n.
inline QMatrix kernel_q(const QColligation& c, const Quaternion& p, const Quaternion& q) {
    if (!in_half_space(p) || !in_half_space(q)) throw DomainViolation("kernel_q: points must satisfy Re > 0");
    const Colligation emb = c.embedded();
    const auto phat = [&](cx z, cx w) { return kernel_direct(emb, Setting::HalfPlane, z, w) * cx(kTwoPi); };

    const detail::SlicePoint sp = detail::slice_of(p);
    const detail::SlicePoint sq = detail::slice_of(q);
    const CMatrix e1 = phat(sp.z, sq.z);
    const CMatrix e2 = phat(std::conj(sp.z), sq.z);
    const CMatrix e3 = phat(sp.z, std::conj(sq.z));
    const CMatrix e4 = phat(std::conj(sp.z), std::conj(sq.z));

    const std::size_t nc = c.space_c().dim();
    const cx quarter(0.25), quarter_i = cx(0.0, -0.25);  // 1/(4i)
    auto combine = [&](std::size_t bi, std::size_t bj) {
        const CMatrix b1 = e1.block(bi, bj, nc, nc);
        const CMatrix b2 = e2.block(bi, bj, nc, nc);
        const CMatrix b3 = e3.block(bi, bj, nc, nc);
        const CMatrix b4 = e4.block(bi, bj, nc, nc);
        struct Combos {
            CMatrix rr, ri, ir, ii;
        } out{(b1 + b2 + b3 + b4) * quarter, (b1 + b2 - b3 - b4) * quarter_i,
              (b1 + b3 - b2 - b4) * quarter_i, (b1 + b4 - b2 - b3) * cx(-0.25)};
        return out;
    };
    const auto c1 = combine(0, 0);        // chi top-left: first complex component
    const auto c2 = combine(0, nc);       // chi top-right: second complex component

    auto to_q = [&](const CMatrix& a, const CMatrix& b) {
        QMatrix m(nc, nc);
        for (std::size_t i = 0; i < nc; ++i)
            for (std::size_t j = 0; j < nc; ++j) m(i, j) = Quaternion::from_parts(a(i, j), b(i, j));
        return m;
    };
    const QMatrix a_rr = to_q(c1.rr, c2.rr);
    const QMatrix a_ri = to_q(c1.ri, c2.ri);
    const QMatrix a_ir = to_q(c1.ir, c2.ir);
    const QMatrix a_ii = to_q(c1.ii, c2.ii);

    return a_rr + scalar_right(a_ri, sq.unit) + scalar_left(sp.unit, a_ir) +
           scalar_left(sp.unit, scalar_right(a_ii, sq.unit));
}

inline QMatrix q_metric_adjoint(const QMatrix& m, const Metric& dom, const Metric& cod) {
    QMatrix adj = m.adjoint();
    for (std::size_t i = 0; i < adj.rows(); ++i)
        for (std::size_t j = 0; j < adj.cols(); ++j)
            adj(i, j) = adj(i, j) * double(dom.sign(i) * cod.sign(j));
    return adj;
}

// Residuals of the Stein-type equation p K + K conj(q) = I - S(p) S(q)^[*]
// in both printed readings (with and without the adjoint on the second
// kernel occurrence). Reported, not asserted; the two variants are not
// equivalent and only one collapses correctly on the real axis.
struct SteinResiduals {
    double unstarred = 0.0;
    double starred = 0.0;
};

inline SteinResiduals verify_stein(const QColligation& c, const Quaternion& p, const Quaternion& q) {
    const QMatrix k = kernel_q(c, p, q);
    const QMatrix sp = eval_q(c, p);
    const QMatrix sq = eval_q(c, q);
    const QMatrix rhs = QMatrix::identity(c.space_c().dim()) - sp * q_metric_adjoint(sq, c.space_d(), c.space_c());
    const QMatrix kstar = q_metric_adjoint(k, c.space_c(), c.space_c());
    SteinResiduals r;
    r.unstarred = qmax_abs_diff(scalar_left(p, k) + scalar_right(k, q.conj()), rhs);
    r.starred = qmax_abs_diff(scalar_left(p, k) + scalar_right(kstar, q.conj()), rhs);
    return r;
}

// Quaternionic structural identity on Hardy kernel sections k(., mu),
// k(., nu), assembled from the four closed-form inner products of the
// right-linear Hardy space (alpha, beta real and positive). Uses the
// eigenrelation R_alpha k(., mu) = -k(., mu) (alpha + conj mu)^{-1}.
inline double check_lemma27q(double alpha, double beta, const Quaternion& mu, const Quaternion& nu) {
    if (alpha <= 0.0 || beta <= 0.0) throw DomainViolation("check_lemma27q: alpha, beta must be positive reals");
    if (!in_half_space(mu) || !in_half_space(nu)) throw DomainViolation("check_lemma27q: mu, nu must satisfy Re > 0");
    const Quaternion kv = k_halfspace(nu, mu);
    const Quaternion inv_am = (Quaternion(alpha) + mu.conj()).inv();
    const Quaternion inv_bn = (Quaternion(beta) + nu).inv();
    const Quaternion lhs = -(kv * inv_am) - inv_bn * kv + (alpha + beta) * (inv_bn * kv * inv_am) + inv_bn * inv_am;
    return lhs.abs() / kTwoPi;
}

// b_u(p) = (1 + p u)^{-1} (p + u): the intrinsic Blaschke self-map of
// the unit ball used to move base points.
inline Quaternion blaschke_q(double u, const Quaternion& p) {
    if (u <= -1.0 || u >= 1.0) throw DomainViolation("blaschke_q: u must lie in (-1, 1)");
    const Quaternion den = Quaternion(1.0) + p * u;
    if (den.abs() < 1e-13) throw SingularDenominator("blaschke_q: 1 + pu = 0");
    return den.inv() * (p + Quaternion(u));
}

inline Quaternion eval_poly_q(const Polynomial& poly, const Quaternion& p) {
    Quaternion acc(0.0);
    const auto& c = poly.coeffs();
    for (std::size_t k = c.size(); k-- > 0;) acc = p * acc + Quaternion::from_complex(c[k]);
    return acc;
}

// Unified quaternionic evaluation: S(p) = H + b_sigma(p) G star (...)^{-star} F
// with sigma = b/a for an intrinsic pair and a real base point, so that
// b_sigma(p) is intrinsic and the composition stays slice hyperholomorphic.
inline QMatrix eval_q_unified(const QColligation& c, const ABPair& ab, const Quaternion& p) {
    if (!ab.intrinsic()) throw NonIntrinsicPair("eval_q_unified: a, b must have real coefficients");
    const double alpha = c.alpha();
    if (std::abs(ab.sigma_prime(cx(alpha, 0.0))) < 1e-12)
        throw NonInvertibleSigma("eval_q_unified: sigma' vanishes at the base point");
    const Quaternion ap = eval_poly_q(ab.a(), p);
    const Quaternion bp = eval_poly_q(ab.b(), p);
    if (ap.abs() < 1e-300) throw ZeroDenominator("eval_q_unified: a(p) = 0");
    const Quaternion sigma_p = ap.inv() * bp;
    const double sigma_a = ab.sigma(cx(alpha, 0.0)).real();
    const Quaternion den = Quaternion(1.0) - sigma_p * sigma_a;
    if (den.abs() < 1e-13) throw SingularSResolvent("eval_q_unified: sigma Moebius map singular");
    const Quaternion bs = (sigma_p - Quaternion(sigma_a)) * den.inv();
    const QMatrix res = star_inverse_resolvent(c.t(), c.g(), bs);
    return c.h() + scalar_left(bs, res * c.f());
}

// Quaternionic generalized resolvent for intrinsic pairs at a real base
// point; pointwise formula, no star products needed since the
// denominators are intrinsic.
inline Quaternion r_ab_apply_q(const ABPair& ab, ResolventRole role, const std::function<Quaternion(Quaternion)>& f,
                               double alpha, const Quaternion& p) {
    if (!ab.intrinsic()) throw NonIntrinsicPair("r_ab_apply_q: a, b must have real coefficients");
    const Polynomial& pa = role == ResolventRole::AB ? ab.a() : ab.b();
    const Polynomial& pb = role == ResolventRole::AB ? ab.b() : ab.a();
    const double pa_alpha = pa.eval(cx(alpha, 0.0)).real();
    const double pb_alpha = pb.eval(cx(alpha, 0.0)).real();
    const Quaternion den = pa_alpha * eval_poly_q(pb, p) - pb_alpha * eval_poly_q(pa, p);
    if (den.abs() < 1e-13) throw ZeroDenominator("r_ab_apply_q: pencil denominator vanished");
    const Quaternion num = eval_poly_q(pa, p) * f(p) - pa_alpha * f(Quaternion(alpha));
    return den.inv() * num;
}

// Negative squares of a quaternionic Hermitian kernel on a finite point
// choice, computed through the complex embedding of the Gram (whose
// spectrum doubles, so n_minus is halved).
inline std::size_t negative_squares_q(const std::function<QMatrix(Quaternion, Quaternion)>& kernel,
                                      const std::vector<Quaternion>& points, const std::vector<QMatrix>& vectors,
                                      const Metric& coeff, double tol = 1e-10) {
    const std::size_t n = points.size();
    if (n == 0 || vectors.size() != n) throw DimensionMismatch("negative_squares_q: bad point choice");
    QMatrix gram(n, n);
    for (std::size_t l = 0; l < n; ++l)
        for (std::size_t k = 0; k < n; ++k) {
            const QMatrix kv = kernel(points[l], points[k]);
            // [K c_k, c_l] = c_l^H J_C K c_k  (1x1 quaternion)
            QMatrix jc = kv * vectors[k];
            for (std::size_t r = 0; r < jc.rows(); ++r) jc(r, 0) = double(coeff.sign(r)) * jc(r, 0);
            gram(l, k) = (vectors[l].adjoint() * jc)(0, 0);
        }
    const CMatrix g = gram.embed();
    const CMatrix h = (g + g.adjoint()) * cx(0.5);
    const Inertia in = inertia(h, tol * std::max(1.0, h.max_abs()));
    if (in.n_minus % 2 != 0) throw Error("negative_squares_q: embedded Gram has odd negative count");
    return in.n_minus / 2;
}

}  // namespace krein
