#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "krein/quaternion.hpp"
#include "krein/rng.hpp"

using namespace krein;

namespace {

Quaternion random_quaternion(SplitMix64& rng, double scale = 1.0) {
    return Quaternion(rng.uniform(-scale, scale), rng.uniform(-scale, scale), rng.uniform(-scale, scale),
                      rng.uniform(-scale, scale));
}

QMatrix random_qmatrix(SplitMix64& rng, std::size_t rows, std::size_t cols, double scale = 1.0) {
    QMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = random_quaternion(rng, scale);
    return m;
}

// Truncated geometric series sum p^n (G A^n), the oracle for the
// star-resolvent formula.
QMatrix geometric_series_oracle(const QMatrix& a, const QMatrix& g, const Quaternion& p, int degree) {
    QMatrix acc(g.rows(), g.cols());
    QMatrix ga = g;
    Quaternion ppow(1.0);
    for (int n = 0; n <= degree; ++n) {
        acc = acc + scalar_left(ppow, ga);
        ga = ga * a;
        ppow = ppow * p;
    }
    return acc;
}

}  // namespace

TEST_CASE("quaternion arithmetic") {
    CHECK(qabs_diff(Quaternion::unit_i() * Quaternion::unit_j(), Quaternion::unit_k()) == 0.0);
    CHECK(qabs_diff(Quaternion::unit_j() * Quaternion::unit_i(), -Quaternion::unit_k()) == 0.0);
    CHECK(qabs_diff(Quaternion::unit_i() * Quaternion::unit_i(), Quaternion(-1.0)) == 0.0);

    SplitMix64 rng(91);
    for (int t = 0; t < 25; ++t) {
        const Quaternion p = random_quaternion(rng);
        CHECK(qabs_diff(p * p.conj(), Quaternion(p.norm2())) < 1e-13);
        CHECK(qabs_diff(p.conj() * p, Quaternion(p.norm2())) < 1e-13);

        const Quaternion q = random_quaternion(rng);
        if (p.abs() > 0.1 && q.abs() > 0.1) {
            CHECK(qabs_diff((p * q).inv(), q.inv() * p.inv()) < 1e-12);
            CHECK(qabs_diff(p * p.inv(), Quaternion(1.0)) < 1e-13);
        }
    }
    CHECK_THROWS_AS(Quaternion(0.0).inv(), DivisionByZero);
}

TEST_CASE("complex embedding is a unital ring homomorphism") {
    CHECK(max_abs_diff(QMatrix::identity(1).embed(), CMatrix::identity(2)) == 0.0);

    QMatrix unit_i(1, 1);
    unit_i(0, 0) = Quaternion::unit_i();
    const CMatrix ei = unit_i.embed();
    CHECK(std::abs(ei(0, 0) - cx(0.0, 1.0)) == 0.0);
    CHECK(std::abs(ei(1, 1) - cx(0.0, -1.0)) == 0.0);

    SplitMix64 rng(97);
    for (int t = 0; t < 8; ++t) {
        const QMatrix m = random_qmatrix(rng, 3, 3);
        const QMatrix n = random_qmatrix(rng, 3, 3);
        CHECK(max_abs_diff((m * n).embed(), m.embed() * n.embed()) < 1e-12);
        CHECK(max_abs_diff(m.adjoint().embed(), m.embed().adjoint()) < 1e-14);
    }

    SECTION("Hermitian quaternion matrices embed to Hermitian matrices") {
        const QMatrix m = random_qmatrix(rng, 3, 3);
        const QMatrix h = m + m.adjoint();
        CHECK(max_abs_diff(h.embed(), h.embed().adjoint()) < 1e-13);
    }

    SECTION("round trip and symmetry rejection") {
        const QMatrix m = random_qmatrix(rng, 2, 3);
        CHECK(qmax_abs_diff(QMatrix::from_embed(m.embed()), m) == 0.0);
        CMatrix bad = m.embed();
        bad(2, 0) += cx(0.1);
        CHECK_THROWS_AS(QMatrix::from_embed(bad), NotInImage);
    }
}

TEST_CASE("star products on real-centered series") {
    SECTION("coefficient convolution example") {
        const QSeries f(0.0, {Quaternion(1.0), Quaternion::unit_i()});
        const QSeries g(0.0, {Quaternion(1.0), Quaternion::unit_j()});
        const QSeries h = star_product(f, g);
        REQUIRE(h.coeffs.size() == 3);
        CHECK(qabs_diff(h.coeffs[0], Quaternion(1.0)) == 0.0);
        CHECK(qabs_diff(h.coeffs[1], Quaternion::unit_i() + Quaternion::unit_j()) == 0.0);
        CHECK(qabs_diff(h.coeffs[2], Quaternion::unit_k()) == 0.0);
    }

    SECTION("unit and center guards") {
        SplitMix64 rng(7);
        const QSeries f(1.0, {random_quaternion(rng), random_quaternion(rng), random_quaternion(rng)});
        const QSeries one(1.0, {Quaternion(1.0)});
        const QSeries fg = star_product(f, one);
        REQUIRE(fg.coeffs.size() == f.coeffs.size());
        for (std::size_t i = 0; i < f.coeffs.size(); ++i) CHECK(qabs_diff(fg.coeffs[i], f.coeffs[i]) == 0.0);
        const QSeries wrong(0.0, {Quaternion(1.0)});
        CHECK_THROWS_AS(star_product(f, wrong), CenterMismatch);
    }

    SECTION("associativity, exact coefficients") {
        SplitMix64 rng(13);
        const QSeries f(0.0, {random_quaternion(rng), random_quaternion(rng)});
        const QSeries g(0.0, {random_quaternion(rng), random_quaternion(rng), random_quaternion(rng)});
        const QSeries h(0.0, {random_quaternion(rng), random_quaternion(rng)});
        const QSeries left = star_product(star_product(f, g), h);
        const QSeries right = star_product(f, star_product(g, h));
        REQUIRE(left.coeffs.size() == right.coeffs.size());
        for (std::size_t i = 0; i < left.coeffs.size(); ++i)
            CHECK(qabs_diff(left.coeffs[i], right.coeffs[i]) < 1e-13);
    }

    SECTION("pointwise star evaluation matches the coefficient product") {
        SplitMix64 rng(17);
        for (int t = 0; t < 20; ++t) {
            const QSeries f(0.0, {random_quaternion(rng), random_quaternion(rng), random_quaternion(rng)});
            const QSeries g(0.0, {random_quaternion(rng), random_quaternion(rng)});
            const Quaternion p = random_quaternion(rng, 0.7);
            const Quaternion via_identity = star_eval(f, g, p);
            const Quaternion via_series = series_eval(star_product(f, g), p);
            CHECK(qabs_diff(via_identity, via_series) < 1e-9);
        }
    }

    SECTION("intrinsic left factor collapses to the pointwise product") {
        SplitMix64 rng(19);
        const QSeries f(0.0, {Quaternion(0.3), Quaternion(-1.2), Quaternion(0.5)});
        REQUIRE(is_intrinsic(f));
        for (int t = 0; t < 20; ++t) {
            const QSeries g(0.0, {random_quaternion(rng), random_quaternion(rng), random_quaternion(rng)});
            const Quaternion p = random_quaternion(rng, 0.8);
            CHECK(qabs_diff(star_eval(f, g, p), series_eval(f, p) * series_eval(g, p)) < 1e-10);
        }
        const QSeries nonintrinsic(0.0, {Quaternion(1.0), Quaternion::unit_i()});
        CHECK_FALSE(is_intrinsic(nonintrinsic));
    }
}

TEST_CASE("intrinsic series preserve complex slices") {
    // (p - a)(p + a)^{-1} around the real center a:
    // sum_{n>=1} (-1)^{n-1} (p-a)^n / (2a)^n.
    const double alpha = 1.0;
    std::vector<Quaternion> coeffs(25, Quaternion(0.0));
    for (int n = 1; n <= 24; ++n)
        coeffs[std::size_t(n)] = Quaternion(((n % 2) ? 1.0 : -1.0) / std::pow(2.0 * alpha, n));
    const QSeries f(alpha, coeffs);
    CHECK(is_intrinsic(f));

    const std::vector<Quaternion> units{Quaternion::unit_i(), Quaternion::unit_j(), Quaternion::unit_k(),
                                        Quaternion(0, 1 / std::sqrt(2.0), 1 / std::sqrt(2.0), 0)};
    for (const Quaternion& unit : units) {
        const Quaternion p = Quaternion(alpha) + 0.3 * unit;  // inside convergence radius
        const Quaternion val = series_eval(f, p);
        const Quaternion exact = (p - Quaternion(alpha)) * (p + Quaternion(alpha)).inv();
        CHECK(qabs_diff(val, exact) < 1e-12);
        // value stays in the slice: imaginary part parallel to the unit
        const double dot = val.x1 * unit.x1 + val.x2 * unit.x2 + val.x3 * unit.x3;
        const Quaternion off(0.0, val.x1 - dot * unit.x1, val.x2 - dot * unit.x2, val.x3 - dot * unit.x3);
        CHECK(off.abs() < 1e-12);
    }
}

TEST_CASE("resolvent shift on series") {
    SplitMix64 rng(23);
    SECTION("constants map to zero; quadratic example shifts") {
        const QSeries c(0.5, {random_quaternion(rng)});
        CHECK(resolvent_r_alpha(c, 0.5).coeffs.empty());

        const Quaternion coeff = random_quaternion(rng);
        const QSeries f(1.0, {Quaternion(0.0), Quaternion(0.0), coeff});  // (p-1)^2 c
        const QSeries rf = resolvent_r_alpha(f, 1.0);
        REQUIRE(rf.coeffs.size() == 2);
        CHECK(qabs_diff(rf.coeffs[1], coeff) == 0.0);
        CHECK_THROWS_AS(resolvent_r_alpha(f, 0.0), CenterMismatch);
    }

    SECTION("(p - alpha) R_alpha f = f - f(alpha) pointwise") {
        const double alpha = 0.7;
        const QSeries f(alpha, {random_quaternion(rng), random_quaternion(rng), random_quaternion(rng),
                                random_quaternion(rng)});
        const QSeries rf = resolvent_r_alpha(f, alpha);
        for (int t = 0; t < 10; ++t) {
            const Quaternion p = Quaternion(alpha) + random_quaternion(rng, 0.5);
            const Quaternion lhs = (p - Quaternion(alpha)) * series_eval(rf, p);
            const Quaternion rhs = series_eval(f, p) - series_eval(f, Quaternion(alpha));
            CHECK(qabs_diff(lhs, rhs) < 1e-12);
        }
    }
}

TEST_CASE("star inverse resolvent") {
    SplitMix64 rng(29);

    SECTION("A = 0 returns G; real p collapses to the ordinary resolvent") {
        const QMatrix g = random_qmatrix(rng, 2, 3);
        const QMatrix zero(3, 3);
        CHECK(qmax_abs_diff(star_inverse_resolvent(zero, g, random_quaternion(rng)), g) < 1e-13);

        const QMatrix a = random_qmatrix(rng, 3, 3, 0.3);
        const double x = 0.4;
        const QMatrix lhs = star_inverse_resolvent(a, g, Quaternion(x));
        // G (I - xA)^{-1} through the embedding
        const CMatrix rhs_c = g.embed() * inverse(CMatrix::identity(6) - a.embed() * cx(x));
        CHECK(max_abs_diff(lhs.embed(), rhs_c) < 1e-12);
    }

    SECTION("agrees with the degree-32 geometric series at |p| ||A|| <= 0.5") {
        double worst = 0.0;
        for (int t = 0; t < 10; ++t) {
            QMatrix a = random_qmatrix(rng, 3, 3);
            const double scale = 0.45 / std::max(1e-9, std::sqrt(double(3)) * a.max_abs());
            for (std::size_t i = 0; i < 3; ++i)
                for (std::size_t j = 0; j < 3; ++j) a(i, j) = a(i, j) * scale;
            const QMatrix g = random_qmatrix(rng, 2, 3);
            Quaternion p = random_quaternion(rng);
            p = p * (1.0 / std::max(p.abs(), 1e-9));  // |p| = 1, |p| ||A|| <= 0.5
            worst = std::max(worst, qmax_abs_diff(star_inverse_resolvent(a, g, p),
                                                  geometric_series_oracle(a, g, p, 32)));
        }
        CHECK(worst < 1e-8);
    }

    SECTION("(I - pA) star (I - pA)^{-star} = I via the series oracle") {
        double worst = 0.0;
        for (int t = 0; t < 10; ++t) {
            QMatrix a = random_qmatrix(rng, 2, 2);
            const double scale = 0.4 / std::max(1e-9, std::sqrt(2.0) * a.max_abs());
            for (std::size_t i = 0; i < 2; ++i)
                for (std::size_t j = 0; j < 2; ++j) a(i, j) = a(i, j) * scale;
            const Quaternion p = random_quaternion(rng, 0.55);

            // left factor I - pA as a matrix series, resolvent as its geometric series
            QMatrixSeries left(0.0, {QMatrix::identity(2), QMatrix(2, 2) - a});
            std::vector<QMatrix> geo;
            QMatrix an = QMatrix::identity(2);
            for (int n = 0; n <= 32; ++n) {
                geo.push_back(an);
                an = an * a;
            }
            const QMatrixSeries inv_series(0.0, geo);
            const QMatrix prod = series_eval(star_product(left, inv_series), p);
            worst = std::max(worst, qmax_abs_diff(prod, QMatrix::identity(2)));
        }
        CHECK(worst < 1e-8);
    }

    SECTION("singular S-spectrum points are reported") {
        QMatrix a(1, 1);
        a(0, 0) = Quaternion(2.0);  // resolvent singular at p = 1/2
        const QMatrix g = QMatrix::identity(1);
        CHECK_THROWS_AS(star_inverse_resolvent(a, g, Quaternion(0.5)), SingularSResolvent);
    }
}
