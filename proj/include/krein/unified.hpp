#pragma once

#include <cmath>
#include <utility>

#include "krein/abpair.hpp"
#include "krein/cmatrix.hpp"
#include "krein/colligation.hpp"
#include "krein/errors.hpp"

namespace krein {

// Operators of the unified realization recovered from the colligation:
//   T = (rho(a,a) R(a,b,a) - conj(b(a)) I) / conj(a(a))
// inverted for R(a,b,alpha), then R(b,a,alpha) from the resolvent pairing
// a(alpha) R(b,a,alpha) + b(alpha) R(a,b,alpha) = -I, and the point
// evaluation C_alpha = G / sqrt(rho(alpha,alpha)).
struct UnifiedOperators {
    CMatrix r_ab;
    CMatrix r_ba;
    CMatrix c_alpha;
    cx a_alpha, b_alpha;
    double rho_alpha;
};

inline UnifiedOperators unified_operators(const Colligation& c, const ABPair& ab) {
    const cx alpha = c.alpha();
    if (ab.classify(alpha) != Region::OmegaPlus)
        throw DomainViolation("unified realization: base point must lie in Omega+");
    const cx aa = ab.a().eval(alpha);
    const cx ba = ab.b().eval(alpha);
    const double rho = ab.rho(alpha, alpha).real();
    if (rho <= 0.0) throw DomainViolation("unified realization: rho(alpha,alpha) must be positive");

    UnifiedOperators u;
    u.a_alpha = aa;
    u.b_alpha = ba;
    u.rho_alpha = rho;
    u.r_ab = (c.t() * std::conj(aa) + CMatrix::identity(c.space_p().dim()) * std::conj(ba)) * cx(1.0 / rho);
    u.r_ba = (CMatrix::identity(c.space_p().dim()) + u.r_ab * ba) * (cx(-1.0) / aa);
    u.c_alpha = c.g() * cx(1.0 / std::sqrt(rho));
    return u;
}

namespace detail {

inline cx sigma_mobius(const ABPair& ab, cx z, cx alpha) {
    const cx sz = ab.sigma(z);
    const cx sa = ab.sigma(alpha);
    const cx den = cx(1.0) - sz * std::conj(sa);
    if (std::abs(den) < 1e-300) throw SingularResolvent("sigma Moebius map singular");
    return (sz - sa) / den;
}

// a(z) R(b,a,alpha) + b(z) R(a,b,alpha), the resolvent pencil of the
// unified kernel formula.
inline CMatrix resolvent_pencil(const UnifiedOperators& u, const ABPair& ab, cx z) {
    return u.r_ba * ab.a().eval(z) + u.r_ab * ab.b().eval(z);
}

}  // namespace detail

// sigma-composed form of the realization.
inline CMatrix eval_unified_sigma(const Colligation& c, const ABPair& ab, cx z) {
    const cx bs = detail::sigma_mobius(ab, z, c.alpha());
    return c.h() + bs * (c.g() * detail::resolvent_solve(c.t(), bs, c.f()));
}

// Resolvent form of the same value:
// S(z) = H - |a(a)|^2 delta(z,a) / (a(a)^2 rho(a,a)) G (a(z) R(b,a,a) + b(z) R(a,b,a))^{-1} F.
inline CMatrix eval_unified_resolvent(const Colligation& c, const ABPair& ab, cx z) {
    const UnifiedOperators u = unified_operators(c, ab);
    const cx aa = u.a_alpha;
    const cx coeff = -std::norm(aa) * ab.delta(z, c.alpha()) / (aa * aa * u.rho_alpha);
    const CMatrix pencil = detail::resolvent_pencil(u, ab, z);
    LU lu(pencil);
    if (lu.singular(1e-13)) throw SingularResolvent("unified resolvent pencil singular");
    return c.h() + coeff * (c.g() * lu.solve(c.f()));
}

// Both routes, cross-checked; disagreement means the colligation or the
// pair violates the preconditions, so it is an error, not a residual.
inline CMatrix eval_unified(const Colligation& c, const ABPair& ab, cx z, double tol = 1e-9) {
    const CMatrix a = eval_unified_sigma(c, ab, z);
    const CMatrix b = eval_unified_resolvent(c, ab, z);
    if (max_abs_diff(a, b) > tol * std::max(1.0, a.max_abs()))
        throw Error("eval_unified: sigma-composed and resolvent forms disagree");
    return a;
}

// K_S(z,w) = (I - S(z) S(w)^[*]) / rho(z,w).
inline CMatrix kernel_unified_direct(const Colligation& c, const ABPair& ab, cx z, cx w) {
    const cx den = ab.rho(z, w);
    if (std::abs(den) < 1e-13) throw SingularResolvent("rho(z,w) vanishes");
    const CMatrix sz = eval_unified_sigma(c, ab, z);
    const MetricMap sw(eval_unified_sigma(c, ab, w), c.space_d(), c.space_c());
    return (CMatrix::identity(c.space_c().dim()) - sz * indef_adjoint(sw).mat) * (cx(1.0) / den);
}

// Resolvent-pencil form K_S(z,w) = C_z C_w^[*] with
// C_w = -C_alpha (a(w) R(b,a,alpha) + b(w) R(a,b,alpha))^{-1}.
inline CMatrix point_eval_unified(const Colligation& c, const ABPair& ab, cx w) {
    const UnifiedOperators u = unified_operators(c, ab);
    const CMatrix pencil = detail::resolvent_pencil(u, ab, w);
    LU lu(pencil);
    if (lu.singular(1e-13)) throw SingularResolvent("unified resolvent pencil singular");
    return -1.0 * (u.c_alpha * lu.inverse());
}

inline CMatrix kernel_unified_resolvent(const Colligation& c, const ABPair& ab, cx z, cx w) {
    const MetricMap cw(point_eval_unified(c, ab, w), c.space_p(), c.space_c());
    return point_eval_unified(c, ab, z) * indef_adjoint(cw).mat;
}

inline CMatrix kernel_unified(const Colligation& c, const ABPair& ab, cx z, cx w, double tol = 1e-9) {
    const CMatrix a = kernel_unified_direct(c, ab, z, w);
    const CMatrix b = kernel_unified_resolvent(c, ab, z, w);
    if (max_abs_diff(a, b) > tol * std::max(1.0, a.max_abs()))
        throw Error("kernel_unified: direct and resolvent forms disagree");
    return a;
}

// Operator identities behind the resolvent form; returned as residuals
// so they can serve as property checks on random data.
inline double step_identity_first(const Colligation& c, const ABPair& ab, cx z) {
    const UnifiedOperators u = unified_operators(c, ab);
    const cx alpha = c.alpha();
    const cx sz = ab.sigma(z), sa = ab.sigma(alpha);
    const std::size_t n = c.space_p().dim();
    const CMatrix lhs = CMatrix::identity(n) * (cx(1.0) - sz * std::conj(sa)) - c.t() * (sz - sa);
    const cx az = ab.a().eval(z);
    const CMatrix rhs =
        (CMatrix::identity(n) - u.r_ab * (ab.delta(z, alpha) / az)) * cx(u.rho_alpha / std::norm(u.a_alpha));
    return max_abs_diff(lhs, rhs);
}

inline double step_identity_second(const Colligation& c, const ABPair& ab, cx z) {
    const UnifiedOperators u = unified_operators(c, ab);
    const cx alpha = c.alpha();
    const cx az = ab.a().eval(z);
    const std::size_t n = c.space_p().dim();
    const CMatrix lhs = (u.r_ba + u.r_ab * (ab.b().eval(z) / az)) * u.a_alpha;
    const CMatrix rhs = CMatrix::identity(n) * cx(-1.0) + u.r_ab * (ab.delta(z, alpha) / az);
    return max_abs_diff(lhs, rhs);
}

}  // namespace krein
