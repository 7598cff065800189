#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "krein/abpair.hpp"
#include "krein/cmatrix.hpp"
#include "krein/errors.hpp"
#include "krein/hermitian_eig.hpp"

namespace krein {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

enum class Setting { Disk, HalfPlane };

// Reproducing-kernel space descriptor: the Hardy space of the disk or
// right half-plane, or the 1/rho space of an (a, b) pair.
class KernelSpace {
  public:
    enum class Kind { Disk, HalfPlane, Rho };

    static KernelSpace disk() { return KernelSpace(Kind::Disk, std::nullopt); }
    static KernelSpace halfplane() { return KernelSpace(Kind::HalfPlane, std::nullopt); }
    static KernelSpace rho(ABPair ab) { return KernelSpace(Kind::Rho, std::move(ab)); }
    static KernelSpace of(Setting s) { return s == Setting::Disk ? disk() : halfplane(); }

    Kind kind() const { return kind_; }
    const ABPair& ab() const {
        if (!ab_) throw DomainViolation("kernel space has no ab pair");
        return *ab_;
    }

    bool in_domain(cx z) const {
        switch (kind_) {
            case Kind::Disk: return std::abs(z) < 1.0;
            case Kind::HalfPlane: return z.real() > 0.0;
            case Kind::Rho: return ab_->domain().contains(z) && ab_->classify(z) == Region::OmegaPlus;
        }
        return false;
    }

    cx kernel(cx z, cx w) const {
        switch (kind_) {
            case Kind::Disk: return 1.0 / (1.0 - z * std::conj(w));
            case Kind::HalfPlane: return 1.0 / (kTwoPi * (z + std::conj(w)));
            case Kind::Rho: {
                const cx r = ab_->rho(z, w);
                if (std::abs(r) < 1e-300) throw ZeroDenominator("rho kernel singular at (z, w)");
                return 1.0 / r;
            }
        }
        return cx(0.0);
    }

    // Kernel sections are resolvent eigenfunctions; these are the
    // multipliers. For rho spaces the operators are R(a,b,alpha) and
    // R(b,a,alpha) obtained by transporting the disk rule through
    // f = F(sigma)/a.
    cx resolvent_eigenvalue(cx alpha, cx mu) const {
        switch (kind_) {
            case Kind::Disk: return std::conj(mu) / (1.0 - alpha * std::conj(mu));
            case Kind::HalfPlane: return -1.0 / (alpha + std::conj(mu));
            case Kind::Rho: return rho_resolvent_eigenvalue(ResolventRole::AB, alpha, mu);
        }
        return cx(0.0);
    }

    cx rho_resolvent_eigenvalue(ResolventRole role, cx alpha, cx mu) const {
        if (kind_ != Kind::Rho) throw DomainViolation("rho resolvent on a non-rho space");
        const cx sa = ab_->sigma(alpha);
        const cx smu_bar = std::conj(ab_->sigma(mu));
        const cx denom = ab_->a().eval(alpha) * (1.0 - sa * smu_bar);
        if (std::abs(denom) < 1e-300) throw ZeroDenominator("rho resolvent eigenvalue singular");
        if (role == ResolventRole::AB) return smu_bar / denom;
        return -1.0 / denom;
    }

    bool same_as(const KernelSpace& o) const {
        if (kind_ != o.kind_) return false;
        if (kind_ != Kind::Rho) return true;
        return ab_->a().coeffs() == o.ab_->a().coeffs() && ab_->b().coeffs() == o.ab_->b().coeffs();
    }

  private:
    KernelSpace(Kind kind, std::optional<ABPair> ab) : kind_(kind), ab_(std::move(ab)) {}

    Kind kind_;
    std::optional<ABPair> ab_;
};

inline cx hardy_kernel(Setting setting, cx z, cx w) {
    const KernelSpace space = KernelSpace::of(setting);
    if (!space.in_domain(z) || !space.in_domain(w))
        throw DomainViolation("hardy_kernel: point outside the open domain");
    return space.kernel(z, w);
}

struct PointChoice {
    std::vector<cx> points;
    std::vector<CMatrix> vectors;  // column vectors in the coefficient space
};

// Finite combination of kernel sections k(., mu_i) c_i plus a polynomial
// part with vector coefficients. Kept canonical: terms with equal pole
// parameter merged, vanishing coefficients dropped, terms ordered.
class RationalSection {
  public:
    explicit RationalSection(KernelSpace space, std::size_t coeff_dim = 1)
        : space_(std::move(space)), coeff_dim_(coeff_dim) {}

    static RationalSection section(KernelSpace space, cx mu, CMatrix coeff) {
        RationalSection f(space, coeff.rows());
        f.add_term(mu, std::move(coeff));
        return f;
    }
    static RationalSection scalar_section(KernelSpace space, cx mu, cx coeff = cx(1.0)) {
        return section(std::move(space), mu, CMatrix{{coeff}});
    }

    const KernelSpace& space() const { return space_; }
    std::size_t coeff_dim() const { return coeff_dim_; }
    std::size_t term_count() const { return mus_.size(); }
    const std::vector<cx>& poles() const { return mus_; }
    const CMatrix& coeff(std::size_t i) const { return coeffs_[i]; }
    bool has_poly_part() const { return !poly_.empty(); }
    const std::vector<CMatrix>& poly() const { return poly_; }

    void add_term(cx mu, CMatrix coeff) {
        if (!space_.in_domain(mu)) throw DomainViolation("kernel section parameter outside the domain");
        if (coeff.rows() != coeff_dim_ || coeff.cols() != 1)
            throw DimensionMismatch("kernel section coefficient shape");
        for (std::size_t i = 0; i < mus_.size(); ++i) {
            if (std::abs(mus_[i] - mu) < 1e-13) {
                coeffs_[i] += coeff;
                prune();
                return;
            }
        }
        mus_.push_back(mu);
        coeffs_.push_back(std::move(coeff));
        sort_terms();
    }

    void add_poly_coeff(std::size_t power, CMatrix coeff) {
        if (coeff.rows() != coeff_dim_ || coeff.cols() != 1)
            throw DimensionMismatch("polynomial coefficient shape");
        if (poly_.size() <= power) poly_.resize(power + 1, CMatrix(coeff_dim_, 1));
        poly_[power] += coeff;
        while (!poly_.empty() && poly_.back().max_abs() == 0.0) poly_.pop_back();
    }

    CMatrix eval(cx z) const {
        CMatrix v(coeff_dim_, 1);
        for (std::size_t i = 0; i < mus_.size(); ++i) v += space_.kernel(z, mus_[i]) * coeffs_[i];
        cx zp(1.0);
        for (const auto& p : poly_) {
            v += zp * p;
            zp *= z;
        }
        return v;
    }

    RationalSection& operator+=(const RationalSection& o) {
        if (!space_.same_as(o.space_) || coeff_dim_ != o.coeff_dim_)
            throw DimensionMismatch("adding sections of different spaces");
        for (std::size_t i = 0; i < o.mus_.size(); ++i) add_term(o.mus_[i], o.coeffs_[i]);
        for (std::size_t k = 0; k < o.poly_.size(); ++k) add_poly_coeff(k, o.poly_[k]);
        return *this;
    }

    RationalSection scaled(cx s) const {
        RationalSection f(space_, coeff_dim_);
        for (std::size_t i = 0; i < mus_.size(); ++i) f.add_term(mus_[i], coeffs_[i] * s);
        for (std::size_t k = 0; k < poly_.size(); ++k) f.add_poly_coeff(k, poly_[k] * s);
        return f;
    }

    friend RationalSection operator+(RationalSection a, const RationalSection& b) { return a += b; }
    friend RationalSection operator-(RationalSection a, const RationalSection& b) { return a += b.scaled(cx(-1.0)); }

  private:
    void sort_terms() {
        std::vector<std::size_t> order(mus_.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
            if (mus_[i].real() != mus_[j].real()) return mus_[i].real() < mus_[j].real();
            return mus_[i].imag() < mus_[j].imag();
        });
        std::vector<cx> mus;
        std::vector<CMatrix> coeffs;
        for (std::size_t i : order) {
            mus.push_back(mus_[i]);
            coeffs.push_back(std::move(coeffs_[i]));
        }
        mus_ = std::move(mus);
        coeffs_ = std::move(coeffs);
    }

    void prune() {
        for (std::size_t i = 0; i < mus_.size();) {
            if (coeffs_[i].max_abs() == 0.0) {
                mus_.erase(mus_.begin() + i);
                coeffs_.erase(coeffs_.begin() + i);
            } else {
                ++i;
            }
        }
    }

    KernelSpace space_;
    std::size_t coeff_dim_;
    std::vector<cx> mus_;
    std::vector<CMatrix> coeffs_;
    std::vector<CMatrix> poly_;
};

// Classical R_alpha on a section: kernel terms pick up their eigenvalue,
// the polynomial part becomes its difference quotient.
inline RationalSection resolvent_apply(const RationalSection& f, cx alpha) {
    if (f.space().kind() == KernelSpace::Kind::Rho)
        throw UnsupportedFunction("use rho_resolvent_apply on rho-space sections");
    if (!f.space().in_domain(alpha)) throw DomainViolation("resolvent_apply: alpha outside the domain");
    RationalSection out(f.space(), f.coeff_dim());
    for (std::size_t i = 0; i < f.term_count(); ++i) {
        const cx lam = f.space().resolvent_eigenvalue(alpha, f.poles()[i]);
        out.add_term(f.poles()[i], f.coeff(i) * lam);
    }
    if (f.has_poly_part()) {
        // Horner-style synthetic division of the vector polynomial.
        const auto& p = f.poly();
        if (p.size() > 1) {
            std::vector<CMatrix> q(p.size() - 1, CMatrix(f.coeff_dim(), 1));
            CMatrix carry = p.back();
            for (std::size_t k = p.size() - 1; k-- > 0;) {
                if (k < q.size()) q[k] = carry;
                carry = p[k] + alpha * carry;
            }
            for (std::size_t k = 0; k < q.size(); ++k) out.add_poly_coeff(k, q[k]);
        }
    }
    return out;
}

inline RationalSection rho_resolvent_apply(const RationalSection& f, ResolventRole role, cx alpha) {
    if (f.space().kind() != KernelSpace::Kind::Rho)
        throw UnsupportedFunction("rho_resolvent_apply needs rho-space sections");
    if (f.has_poly_part()) throw UnsupportedFunction("rho resolvents act on pure kernel sections");
    if (!f.space().in_domain(alpha)) throw DomainViolation("rho_resolvent_apply: alpha outside Omega+");
    RationalSection out(f.space(), f.coeff_dim());
    for (std::size_t i = 0; i < f.term_count(); ++i) {
        const cx lam = f.space().rho_resolvent_eigenvalue(role, alpha, f.poles()[i]);
        out.add_term(f.poles()[i], f.coeff(i) * lam);
    }
    return out;
}

// <f, g>_J from the reproducing property:
// <k(.,mu)c, k(.,nu)d>_J = d^H J k(nu, mu) c. Exact on kernel sections;
// polynomial parts have no closed Gram here and are rejected.
inline cx inner_product(const RationalSection& f, const RationalSection& g,
                        const std::optional<CMatrix>& j = std::nullopt) {
    if (!f.space().same_as(g.space())) throw DimensionMismatch("inner_product: different spaces");
    if (f.has_poly_part() || g.has_poly_part())
        throw UnsupportedFunction("inner_product is defined on kernel sections only");
    if (f.coeff_dim() != g.coeff_dim()) throw DimensionMismatch("inner_product: coefficient dims differ");
    const CMatrix jm = j ? *j : CMatrix::identity(f.coeff_dim());
    cx acc(0.0);
    for (std::size_t jj = 0; jj < g.term_count(); ++jj) {
        const CMatrix jd = jm * g.coeff(jj);
        for (std::size_t ii = 0; ii < f.term_count(); ++ii) {
            const cx kv = f.space().kernel(g.poles()[jj], f.poles()[ii]);
            cx dot(0.0);
            for (std::size_t r = 0; r < f.coeff_dim(); ++r)
                dot += std::conj(jd(r, 0)) * f.coeff(ii)(r, 0);
            acc += kv * dot;
        }
    }
    return acc;
}

inline cx value_form(const CMatrix& x, const CMatrix& y, const CMatrix& j) {
    cx acc(0.0);
    const CMatrix jy = j * y;
    for (std::size_t r = 0; r < x.rows(); ++r) acc += std::conj(jy(r, 0)) * x(r, 0);
    return acc;
}

enum class StructureIdentity { Equadb1, Equadb2, Adjfa };

// Residual of one of the structural identities on kernel sections. All
// terms are computed in closed form, so the result is pure round-off
// when the identity holds.
inline double check_identity(StructureIdentity which, const RationalSection& f, const RationalSection& g,
                             cx alpha, cx beta, const std::optional<CMatrix>& j = std::nullopt) {
    if (!f.space().same_as(g.space())) throw DimensionMismatch("check_identity: different spaces");
    if (!f.space().in_domain(alpha) || !f.space().in_domain(beta))
        throw DomainViolation("check_identity: evaluation point outside the domain");
    const CMatrix jm = j ? *j : CMatrix::identity(f.coeff_dim());
    const cx boundary = value_form(f.eval(alpha), g.eval(beta), jm);

    switch (which) {
        case StructureIdentity::Equadb1: {
            if (f.space().kind() != KernelSpace::Kind::Disk)
                throw DomainViolation("equadb1 lives on the disk");
            const RationalSection rf = resolvent_apply(f, alpha);
            const RationalSection rg = resolvent_apply(g, beta);
            const cx lhs = inner_product(f, g, jm) + alpha * inner_product(rf, g, jm) +
                           std::conj(beta) * inner_product(f, rg, jm) -
                           (1.0 - alpha * std::conj(beta)) * inner_product(rf, rg, jm) - boundary;
            return std::abs(lhs);
        }
        case StructureIdentity::Equadb2: {
            if (f.space().kind() != KernelSpace::Kind::HalfPlane)
                throw DomainViolation("equadb2 lives on the right half-plane");
            const RationalSection rf = resolvent_apply(f, alpha);
            const RationalSection rg = resolvent_apply(g, beta);
            const cx lhs = inner_product(rf, g, jm) + inner_product(f, rg, jm) +
                           (alpha + std::conj(beta)) * inner_product(rf, rg, jm) + kTwoPi * boundary;
            return std::abs(lhs);
        }
        case StructureIdentity::Adjfa: {
            if (f.space().kind() != KernelSpace::Kind::Rho)
                throw DomainViolation("adjfa needs rho-space sections (provide the ab pair)");
            const RationalSection fa = rho_resolvent_apply(f, ResolventRole::AB, alpha);
            const RationalSection ga = rho_resolvent_apply(g, ResolventRole::AB, beta);
            const RationalSection fb = rho_resolvent_apply(f, ResolventRole::BA, alpha);
            const RationalSection gb = rho_resolvent_apply(g, ResolventRole::BA, beta);
            const cx lhs = inner_product(fa, ga, jm) - inner_product(fb, gb, jm) + boundary;
            return std::abs(lhs);
        }
    }
    return 0.0;
}

// Negative squares of a Hermitian kernel on a finite point/vector
// choice: n_minus of the Gram [K(w_l, w_k) c_k, c_l].
inline std::size_t negative_squares(const std::function<CMatrix(cx, cx)>& kernel, const PointChoice& choice,
                                    double tol = 1e-10, const std::optional<CMatrix>& j = std::nullopt) {
    const std::size_t n = choice.points.size();
    if (n == 0 || choice.vectors.size() != n) throw DimensionMismatch("negative_squares: bad point choice");
    const CMatrix jm = j ? *j : CMatrix::identity(choice.vectors.front().rows());

    CMatrix gram(n, n);
    double scale = 0.0;
    std::vector<std::vector<CMatrix>> kv(n, std::vector<CMatrix>(n));
    for (std::size_t l = 0; l < n; ++l)
        for (std::size_t k = 0; k < n; ++k) {
            kv[l][k] = kernel(choice.points[l], choice.points[k]);
            scale = std::max(scale, kv[l][k].max_abs());
        }
    for (std::size_t l = 0; l < n; ++l)
        for (std::size_t k = 0; k < n; ++k) {
            // Hermitian precondition: K(z,w) = J^{-1} K(w,z)^H J.
            const CMatrix sym = jm * kv[k][l].adjoint() * jm;  // canonical J: J^{-1} = J
            if (max_abs_diff(kv[l][k], sym) > 1e3 * tol * std::max(1.0, scale))
                throw NonHermitianKernel("negative_squares: kernel is not Hermitian on the chosen points");
            gram(l, k) = value_form(kv[l][k] * choice.vectors[k], choice.vectors[l], jm);
        }
    gram = (gram + gram.adjoint()) * cx(0.5);
    return inertia(gram, tol * std::max(1.0, gram.max_abs())).n_minus;
}

}  // namespace krein
