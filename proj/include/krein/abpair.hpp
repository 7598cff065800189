#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "krein/cmatrix.hpp"
#include "krein/errors.hpp"
#include "krein/polynomial.hpp"

namespace krein {

enum class Region { OmegaPlus, OmegaMinus, OmegaZero };

// User-declared working domain for an (a, b) pair.
struct DomainSpec {
    enum class Kind { Rectangle, Disk } kind = Kind::Rectangle;
    double re_lo = -1.0, re_hi = 1.0, im_lo = -1.0, im_hi = 1.0;  // rectangle
    cx center = cx(0.0);                                          // disk
    double radius = 1.0;

    static DomainSpec rectangle(double re_lo, double re_hi, double im_lo, double im_hi) {
        DomainSpec d;
        d.kind = Kind::Rectangle;
        d.re_lo = re_lo;
        d.re_hi = re_hi;
        d.im_lo = im_lo;
        d.im_hi = im_hi;
        return d;
    }
    static DomainSpec disk(cx center, double radius) {
        DomainSpec d;
        d.kind = Kind::Disk;
        d.center = center;
        d.radius = radius;
        return d;
    }

    bool contains(cx z) const {
        if (kind == Kind::Disk) return std::abs(z - center) < radius;
        return z.real() > re_lo && z.real() < re_hi && z.imag() > im_lo && z.imag() < im_hi;
    }

    // Deterministic sampling grid (n x n interior points).
    std::vector<cx> grid(std::size_t n) const {
        std::vector<cx> pts;
        pts.reserve(n * n);
        double rlo = re_lo, rhi = re_hi, ilo = im_lo, ihi = im_hi;
        if (kind == Kind::Disk) {
            rlo = center.real() - radius;
            rhi = center.real() + radius;
            ilo = center.imag() - radius;
            ihi = center.imag() + radius;
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const cx z(rlo + (rhi - rlo) * (i + 0.5) / n, ilo + (ihi - ilo) * (j + 0.5) / n);
                if (contains(z)) pts.push_back(z);
            }
        return pts;
    }
};

// Pair of analytic functions a, b splitting the domain into
// Omega+ = {|b| < |a|}, Omega- = {|b| > |a|} and the boundary set.
// Restricted to polynomials; every downstream formula is rational in
// (a, b), and polynomial data keeps sigma inversion and region sampling
// well behaved.
class ABPair {
  public:
    ABPair(Polynomial a, Polynomial b, DomainSpec omega)
        : a_(std::move(a)), b_(std::move(b)), omega_(omega) {
        if (a_.degree() > 8 || b_.degree() > 8)
            throw DomainViolation("ab pair: polynomial degree above 8 is not supported");
        validate();
    }

    static ABPair disk_pair() {
        return ABPair(Polynomial::constant(1.0), Polynomial::z(), DomainSpec::disk(cx(0.0), 2.0));
    }

    // a = sqrt(2pi) (z+1)/2, b = sqrt(2pi) (z-1)/2; Omega+ is the right
    // half-plane slice of the declared rectangle.
    static ABPair halfplane_pair() {
        const double s = std::sqrt(2.0 * 3.14159265358979323846) / 2.0;
        return ABPair(Polynomial{cx(s), cx(s)}, Polynomial{cx(-s), cx(s)},
                      DomainSpec::rectangle(-3.0, 3.0, -3.0, 3.0));
    }

    const Polynomial& a() const { return a_; }
    const Polynomial& b() const { return b_; }
    const DomainSpec& domain() const { return omega_; }

    cx rho(cx z, cx w) const { return a_.eval(z) * std::conj(a_.eval(w)) - b_.eval(z) * std::conj(b_.eval(w)); }

    cx delta(cx z, cx alpha) const { return b_.eval(z) * a_.eval(alpha) - a_.eval(z) * b_.eval(alpha); }

    cx sigma(cx z) const {
        const cx az = a_.eval(z);
        if (std::abs(az) < 1e-300) throw ZeroDenominator("sigma: a(z) = 0");
        return b_.eval(z) / az;
    }

    cx sigma_prime(cx z) const {
        const cx az = a_.eval(z);
        if (std::abs(az) < 1e-300) throw ZeroDenominator("sigma': a(z) = 0");
        return (b_.derivative().eval(z) * az - b_.eval(z) * a_.derivative().eval(z)) / (az * az);
    }

    Region classify(cx z) const {
        const double na = std::abs(a_.eval(z));
        const double nb = std::abs(b_.eval(z));
        const double band = 1e-12 * std::max({na, nb, 1.0});
        if (std::abs(nb - na) <= band) return Region::OmegaZero;
        return nb < na ? Region::OmegaPlus : Region::OmegaMinus;
    }

    bool intrinsic(double tol = 1e-14) const {
        for (const auto& c : a_.coeffs())
            if (std::abs(c.imag()) > tol) return false;
        for (const auto& c : b_.coeffs())
            if (std::abs(c.imag()) > tol) return false;
        return true;
    }

    // (a', b') = (a, b) U. For U with U J0 U^* = J0 this leaves rho and
    // the region split unchanged.
    ABPair rerepresent(const CMatrix& u) const {
        if (u.rows() != 2 || u.cols() != 2) throw DimensionMismatch("rerepresent expects a 2x2 matrix");
        Polynomial a2 = a_ * u(0, 0) + b_ * u(1, 0);
        Polynomial b2 = a_ * u(0, 1) + b_ * u(1, 1);
        return ABPair(std::move(a2), std::move(b2), omega_);
    }

  private:
    void validate() const {
        bool plus = false, minus = false;
        double a_floor_on_plus = 1e300;
        for (const cx z : omega_.grid(32)) {  // >= 10^3 interior samples
            const Region r = classify(z);
            if (r == Region::OmegaPlus) {
                plus = true;
                a_floor_on_plus = std::min(a_floor_on_plus, std::abs(a_.eval(z)));
            } else if (r == Region::OmegaMinus) {
                minus = true;
            }
        }
        if (!plus || !minus) throw DomainViolation("ab pair: Omega+ or Omega- is empty on the sampling grid");
        double coeff_scale = 0.0;
        for (const auto& c : a_.coeffs()) coeff_scale = std::max(coeff_scale, std::abs(c));
        if (a_floor_on_plus <= 1e-9 * std::max(coeff_scale, 1.0))
            throw DomainViolation("ab pair: a vanishes on Omega+ samples");
    }

    Polynomial a_;
    Polynomial b_;
    DomainSpec omega_;
};

enum class ResolventRole { AB, BA };  // R(a,b,alpha) resp. R(b,a,alpha)

// Generalized resolvent (R(a,b,alpha) f)(z) =
// (a(z) f(z) - a(alpha) f(alpha)) / (a(alpha) b(z) - b(alpha) a(z)),
// with the removable singularity at z = alpha deflated.
inline RationalFunction r_ab_apply(const ABPair& ab, ResolventRole role, const RationalFunction& f, cx alpha) {
    const Polynomial& pa = role == ResolventRole::AB ? ab.a() : ab.b();
    const Polynomial& pb = role == ResolventRole::AB ? ab.b() : ab.a();
    if (!f.finite_at(alpha)) throw PoleAtAlpha("r_ab_apply: f has a pole at alpha");
    const cx pa_alpha = pa.eval(alpha);
    const cx pb_alpha = pb.eval(alpha);
    Polynomial den = pa_alpha * pb - pb_alpha * pa;  // vanishes at alpha
    if (den.is_zero()) throw ZeroDenominator("r_ab_apply: degenerate pair, a and b proportional");
    const cx f_alpha = f.eval(alpha);
    Polynomial num = pa * f.num() - (pa_alpha * f_alpha) * f.den();  // vanishes at alpha
    return RationalFunction(num.deflate_at(alpha), f.den() * den.deflate_at(alpha));
}

// Local inverse of sigma = b/a near a seed point: Newton first, then a
// bisection fallback on the real slice for real targets. Failures are
// loud (NonInvertibleSigma); local invertibility is an assumption of the
// transport, not a theorem we can lean on.
inline cx sigma_inverse(const ABPair& ab, cx target, cx seed, double tol = 1e-12) {
    cx z = seed;
    for (int it = 0; it < 128; ++it) {
        const cx r = ab.sigma(z) - target;
        if (std::abs(r) <= tol) return z;
        const cx d = ab.sigma_prime(z);
        if (std::abs(d) < 1e-14) break;
        cx step = r / d;
        if (std::abs(step) > 1.0) step *= 1.0 / std::abs(step);  // damp wild steps
        z -= step;
    }
    if (std::abs(ab.sigma(z) - target) <= tol) return z;

    if (std::abs(target.imag()) < 1e-13 && std::abs(seed.imag()) < 1e-13 && ab.intrinsic()) {
        double lo = seed.real() - 1.0, hi = seed.real() + 1.0;
        auto g = [&](double x) { return (ab.sigma(cx(x, 0.0)) - target).real(); };
        for (int grow = 0; grow < 8 && g(lo) * g(hi) > 0.0; ++grow) {
            lo -= 0.5;
            hi += 0.5;
        }
        if (g(lo) * g(hi) <= 0.0) {
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (g(lo) * g(mid) <= 0.0)
                    hi = mid;
                else
                    lo = mid;
            }
            const cx z2(0.5 * (lo + hi), 0.0);
            if (std::abs(ab.sigma(z2) - target) <= 1e2 * tol) return z2;
        }
    }
    throw NonInvertibleSigma("sigma_inverse: no local inverse found near the seed");
}

// f(z) = F(sigma(z)) / a(z) pulled back to the disk: F(u) = f(z_u) a(z_u)
// with z_u the locally inverted sigma.
class TransportedFunction {
  public:
    TransportedFunction(ABPair ab, std::function<cx(cx)> f, cx base)
        : ab_(std::move(ab)), f_(std::move(f)), base_(base) {
        if (std::abs(ab_.sigma_prime(base_)) < 1e-12)
            throw NonInvertibleSigma("transport_to_disk: sigma' vanishes at the base point");
    }

    cx eval(cx u) const {
        const cx z = sigma_inverse(ab_, u, base_);
        return f_(z) * ab_.a().eval(z);
    }

    cx preimage(cx u) const { return sigma_inverse(ab_, u, base_); }

  private:
    ABPair ab_;
    std::function<cx(cx)> f_;
    cx base_;
};

inline TransportedFunction transport_to_disk(const ABPair& ab, std::function<cx(cx)> f, cx base) {
    return TransportedFunction(ab, std::move(f), base);
}

inline CMatrix j0_signature() {
    CMatrix j(2, 2);
    j(0, 0) = 1.0;
    j(1, 1) = -1.0;
    return j;
}

}  // namespace krein
