#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "krein/cmatrix.hpp"
#include "krein/errors.hpp"

namespace krein {

// Dense univariate polynomial over C, coefficient c[k] on z^k.
class Polynomial {
  public:
    Polynomial() = default;
    explicit Polynomial(std::vector<cx> coeffs) : c_(std::move(coeffs)) { trim(); }
    Polynomial(std::initializer_list<cx> coeffs) : c_(coeffs) { trim(); }

    static Polynomial constant(cx v) { return Polynomial({v}); }
    static Polynomial z() { return Polynomial({cx(0.0), cx(1.0)}); }

    bool is_zero() const { return c_.empty(); }
    std::size_t degree() const { return c_.empty() ? 0 : c_.size() - 1; }
    const std::vector<cx>& coeffs() const { return c_; }

    cx eval(cx z) const {
        cx acc(0.0);
        for (std::size_t k = c_.size(); k-- > 0;) acc = acc * z + c_[k];
        return acc;
    }

    Polynomial derivative() const {
        if (c_.size() <= 1) return Polynomial();
        std::vector<cx> d(c_.size() - 1);
        for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * cx(double(k));
        return Polynomial(std::move(d));
    }

    // Synthetic division by (z - root). The remainder must vanish; this
    // is only called at roots known analytically (removable points).
    Polynomial deflate_at(cx root) const {
        if (c_.empty()) return Polynomial();
        std::vector<cx> q(c_.size() - 1);
        cx carry = c_.back();
        for (std::size_t k = c_.size() - 1; k-- > 0;) {
            if (k < q.size()) q[k] = carry;
            carry = c_[k] + carry * root;
        }
        return Polynomial(std::move(q));
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        std::vector<cx> r(std::max(a.c_.size(), b.c_.size()), cx(0.0));
        for (std::size_t k = 0; k < a.c_.size(); ++k) r[k] += a.c_[k];
        for (std::size_t k = 0; k < b.c_.size(); ++k) r[k] += b.c_[k];
        return Polynomial(std::move(r));
    }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (b * cx(-1.0)); }
    friend Polynomial operator*(const Polynomial& a, cx s) {
        std::vector<cx> r = a.c_;
        for (auto& v : r) v *= s;
        return Polynomial(std::move(r));
    }
    friend Polynomial operator*(cx s, const Polynomial& a) { return a * s; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.c_.empty() || b.c_.empty()) return Polynomial();
        std::vector<cx> r(a.c_.size() + b.c_.size() - 1, cx(0.0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return Polynomial(std::move(r));
    }

  private:
    void trim() {
        double mx = 0.0;
        for (const auto& v : c_) mx = std::max(mx, std::abs(v));
        const double cut = mx * 1e-14;
        while (!c_.empty() && std::abs(c_.back()) <= cut) c_.pop_back();
    }

    std::vector<cx> c_;
};

// Quotient of polynomials. No floating-point GCD: cancellations happen
// only at analytically known removable roots via deflate_at, which keeps
// the representation honest.
class RationalFunction {
  public:
    RationalFunction() : num_(), den_({cx(1.0)}) {}
    RationalFunction(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw ZeroDenominator("rational function with zero denominator");
    }
    static RationalFunction constant(cx v) { return RationalFunction(Polynomial::constant(v), Polynomial::constant(1.0)); }
    static RationalFunction from_poly(Polynomial p) { return RationalFunction(std::move(p), Polynomial::constant(1.0)); }

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }

    cx eval(cx z) const {
        const cx d = den_.eval(z);
        if (std::abs(d) < 1e-300) throw ZeroDenominator("rational function evaluated at a pole");
        return num_.eval(z) / d;
    }

    bool finite_at(cx z, double tol = 1e-12) const {
        double scale = 0.0;
        for (const auto& c : den_.coeffs()) scale = std::max(scale, std::abs(c));
        return std::abs(den_.eval(z)) > tol * std::max(scale, 1e-300);
    }

    RationalFunction derivative() const {
        return RationalFunction(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
    }

    // Removes a known common root of numerator and denominator.
    RationalFunction deflate_common_root(cx root) const {
        return RationalFunction(num_.deflate_at(root), den_.deflate_at(root));
    }

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RationalFunction operator*(const RationalFunction& a, cx s) {
        return RationalFunction(a.num_ * s, a.den_);
    }
    friend RationalFunction operator*(cx s, const RationalFunction& a) { return a * s; }

  private:
    Polynomial num_;
    Polynomial den_;
};

// Classical difference-quotient resolvent on rational data:
// (R_alpha f)(z) = (f(z) - f(alpha)) / (z - alpha), with the removable
// singularity at alpha deflated away.
inline RationalFunction resolvent(const RationalFunction& f, cx alpha) {
    if (!f.finite_at(alpha)) throw PoleAtAlpha("resolvent: function has a pole at alpha");
    const cx falpha = f.eval(alpha);
    Polynomial num = f.num() - f.den() * falpha;  // vanishes at alpha
    return RationalFunction(num.deflate_at(alpha), f.den());
}

}  // namespace krein
