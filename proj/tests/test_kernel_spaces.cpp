#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "krein/colligation.hpp"
#include "krein/kernels.hpp"
#include "krein/rng.hpp"

using namespace krein;

namespace {

RationalSection random_section(SplitMix64& rng, const KernelSpace& space, std::size_t terms,
                               std::size_t coeff_dim = 1, bool with_poly = false) {
    RationalSection f(space, coeff_dim);
    for (std::size_t i = 0; i < terms; ++i) {
        const cx mu = space.kind() == KernelSpace::Kind::Disk ? rng.in_disk() : rng.in_halfplane();
        f.add_term(mu, rng.vector(coeff_dim));
    }
    if (with_poly)
        for (std::size_t k = 0; k < 3; ++k) f.add_poly_coeff(k, rng.vector(coeff_dim, 0.5));
    return f;
}

cx domain_point(SplitMix64& rng, const KernelSpace& space) {
    return space.kind() == KernelSpace::Kind::Disk ? rng.in_disk() : rng.in_halfplane();
}

}  // namespace

TEST_CASE("hardy kernel closed-form values") {
    CHECK(std::abs(hardy_kernel(Setting::Disk, cx(0.0), cx(0.3, 0.2)) - cx(1.0)) < 1e-15);
    CHECK(std::abs(hardy_kernel(Setting::Disk, cx(0.5), cx(0.5)) - cx(4.0 / 3.0)) < 1e-15);
    CHECK(std::abs(hardy_kernel(Setting::HalfPlane, cx(1.0), cx(1.0)) - cx(1.0 / (4.0 * kPi))) < 1e-15);
    CHECK_THROWS_AS(hardy_kernel(Setting::Disk, cx(1.5), cx(0.0)), DomainViolation);
    CHECK_THROWS_AS(hardy_kernel(Setting::HalfPlane, cx(-0.5, 1.0), cx(1.0)), DomainViolation);

    SplitMix64 rng(11);
    for (int t = 0; t < 20; ++t) {
        const cx z = rng.in_disk(), w = rng.in_disk();
        CHECK(std::abs(hardy_kernel(Setting::Disk, z, w) - std::conj(hardy_kernel(Setting::Disk, w, z))) == 0.0);
    }
}

TEST_CASE("resolvent on polynomial parts is the difference quotient") {
    RationalSection f(KernelSpace::disk(), 1);
    f.add_poly_coeff(2, CMatrix{{cx(1.0)}});  // f(z) = z^2
    const RationalSection rf = resolvent_apply(f, cx(0.5));
    // (z^2 - alpha^2)/(z - alpha) = z + alpha
    SplitMix64 rng(3);
    for (int t = 0; t < 10; ++t) {
        const cx z = rng.in_disk();
        CHECK(std::abs(rf.eval(z)(0, 0) - (z + 0.5)) < 1e-14);
    }
}

TEST_CASE("kernel sections are resolvent eigenfunctions") {
    SplitMix64 rng(17);
    for (const Setting setting : {Setting::Disk, Setting::HalfPlane}) {
        const KernelSpace space = KernelSpace::of(setting);
        for (int t = 0; t < 25; ++t) {
            const cx mu = domain_point(rng, space);
            const cx alpha = domain_point(rng, space);
            const RationalSection f = RationalSection::scalar_section(space, mu);
            const RationalSection rf = resolvent_apply(f, alpha);
            for (int s = 0; s < 5; ++s) {
                const cx z = domain_point(rng, space);
                if (std::abs(z - alpha) < 1e-3) continue;
                const cx quotient = (f.eval(z)(0, 0) - f.eval(alpha)(0, 0)) / (z - alpha);
                CHECK(std::abs(rf.eval(z)(0, 0) - quotient) < 1e-10);
            }
            if (setting == Setting::HalfPlane) {
                // R_alpha k(., mu) = -(alpha + conj mu)^{-1} k(., mu)
                const cx lam = -1.0 / (alpha + std::conj(mu));
                const cx z = domain_point(rng, space);
                CHECK(std::abs(rf.eval(z)(0, 0) - lam * f.eval(z)(0, 0)) < 1e-12);
            }
        }
    }
}

TEST_CASE("resolvent identity residual on random sections") {
    SplitMix64 rng(29);
    for (const Setting setting : {Setting::Disk, Setting::HalfPlane}) {
        const KernelSpace space = KernelSpace::of(setting);
        double worst = 0.0;
        for (int draw = 0; draw < 30; ++draw) {
            const RationalSection f = random_section(rng, space, 2, 1, true);
            const cx alpha = domain_point(rng, space);
            const cx beta = domain_point(rng, space);
            const RationalSection lhs = resolvent_apply(f, alpha) - resolvent_apply(f, beta);
            const RationalSection rhs = resolvent_apply(resolvent_apply(f, beta), alpha).scaled(alpha - beta);
            for (int s = 0; s < 50; ++s) {
                const cx z = domain_point(rng, space);
                worst = std::max(worst, (lhs.eval(z) - rhs.eval(z)).max_abs());
            }
        }
        CHECK(worst < 1e-10);
    }
}

TEST_CASE("inner products from the reproducing property") {
    const KernelSpace hp = KernelSpace::halfplane();
    const RationalSection k1 = RationalSection::scalar_section(hp, cx(1.0));
    CHECK(std::abs(inner_product(k1, k1) - cx(1.0 / (4.0 * kPi))) < 1e-15);

    SplitMix64 rng(41);
    const RationalSection f = random_section(rng, hp, 3, 2);
    const RationalSection g = random_section(rng, hp, 2, 2);
    CHECK(std::abs(inner_product(f, g) - std::conj(inner_product(g, f))) < 1e-14);

    SECTION("Gram of random sections is PSD for the identity signature") {
        CMatrix gram(4, 4);
        std::vector<RationalSection> fs;
        for (int i = 0; i < 4; ++i) fs.push_back(random_section(rng, hp, 2));
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) gram(i, j) = inner_product(fs[j], fs[i]);
        CHECK(inertia(gram, 1e-12).n_minus == 0);
    }

    SECTION("polynomial parts are rejected") {
        const RationalSection p = random_section(rng, hp, 1, 1, true);
        CHECK_THROWS_AS(inner_product(p, p), UnsupportedFunction);
    }
}

TEST_CASE("structural identity residuals vanish on kernel sections") {
    SplitMix64 rng(53);

    SECTION("equadb2 on the half-plane, scalar and J-metric") {
        const KernelSpace hp = KernelSpace::halfplane();
        double worst = 0.0;
        for (int draw = 0; draw < 40; ++draw) {
            const RationalSection f = random_section(rng, hp, 3);
            const RationalSection g = random_section(rng, hp, 3);
            worst = std::max(worst, check_identity(StructureIdentity::Equadb2, f, g, rng.in_halfplane(),
                                                   rng.in_halfplane()));
        }
        CHECK(worst < 1e-12);

        const CMatrix j = CMatrix::diag_real({1.0, -1.0});
        double worst_j = 0.0;
        for (int draw = 0; draw < 20; ++draw) {
            const RationalSection f = random_section(rng, hp, 2, 2);
            const RationalSection g = random_section(rng, hp, 2, 2);
            worst_j = std::max(worst_j, check_identity(StructureIdentity::Equadb2, f, g, rng.in_halfplane(),
                                                       rng.in_halfplane(), j));
        }
        CHECK(worst_j < 1e-12);
    }

    SECTION("equadb1 on the disk; the constant function at the origin") {
        const KernelSpace d = KernelSpace::disk();
        const RationalSection one = RationalSection::scalar_section(d, cx(0.0));
        CHECK(check_identity(StructureIdentity::Equadb1, one, one, cx(0.0), cx(0.0)) < 1e-15);

        double worst = 0.0;
        for (int draw = 0; draw < 40; ++draw) {
            const RationalSection f = random_section(rng, d, 3);
            const RationalSection g = random_section(rng, d, 2);
            worst = std::max(worst,
                             check_identity(StructureIdentity::Equadb1, f, g, rng.in_disk(), rng.in_disk()));
        }
        CHECK(worst < 1e-12);
    }

    SECTION("adjfa with the disk pair reduces to equadb1") {
        const KernelSpace rho = KernelSpace::rho(ABPair::disk_pair());
        const KernelSpace d = KernelSpace::disk();
        for (int draw = 0; draw < 10; ++draw) {
            const cx mu = rng.in_disk(), nu = rng.in_disk();
            const cx alpha = rng.in_disk(), beta = rng.in_disk();
            const RationalSection fr = RationalSection::scalar_section(rho, mu);
            const RationalSection gr = RationalSection::scalar_section(rho, nu);
            const RationalSection fd = RationalSection::scalar_section(d, mu);
            const RationalSection gd = RationalSection::scalar_section(d, nu);
            const double r_adjfa = check_identity(StructureIdentity::Adjfa, fr, gr, alpha, beta);
            const double r_db1 = check_identity(StructureIdentity::Equadb1, fd, gd, alpha, beta);
            CHECK(std::abs(r_adjfa - r_db1) < 1e-13);
            CHECK(r_adjfa < 1e-12);
        }
    }

    SECTION("adjfa on the canonical half-plane pair") {
        const KernelSpace rho = KernelSpace::rho(ABPair::halfplane_pair());
        double worst = 0.0;
        for (int draw = 0; draw < 20; ++draw) {
            RationalSection f(rho, 1), g(rho, 1);
            for (int i = 0; i < 2; ++i) {
                f.add_term(rng.in_halfplane(0.1, 2.0, 1.5), rng.vector(1));
                g.add_term(rng.in_halfplane(0.1, 2.0, 1.5), rng.vector(1));
            }
            worst = std::max(worst, check_identity(StructureIdentity::Adjfa, f, g,
                                                   rng.in_halfplane(0.1, 2.0, 1.5),
                                                   rng.in_halfplane(0.1, 2.0, 1.5)));
        }
        CHECK(worst < 1e-12);
    }
}

TEST_CASE("negative squares of kernels") {
    SplitMix64 rng(67);

    SECTION("positive definite Hardy kernels have none") {
        for (const Setting setting : {Setting::Disk, Setting::HalfPlane}) {
            const KernelSpace space = KernelSpace::of(setting);
            PointChoice choice;
            for (int i = 0; i < 6; ++i) {
                choice.points.push_back(domain_point(rng, space));
                choice.vectors.push_back(rng.vector(1));
            }
            auto kernel = [&](cx z, cx w) { return CMatrix{{space.kernel(z, w)}}; };
            CHECK(negative_squares(kernel, choice) == 0);
        }
    }

    SECTION("inner-function kernel on the half-plane is positive") {
        const std::vector<cx> zeros{cx(0.7, 0.3), cx(1.4, -0.6)};
        PointChoice choice;
        for (int i = 0; i < 8; ++i) {
            choice.points.push_back(rng.in_halfplane());
            choice.vectors.push_back(rng.vector(1));
        }
        auto kernel = [&](cx z, cx w) { return CMatrix{{blaschke_kernel(zeros, z, w)}}; };
        CHECK(negative_squares(kernel, choice) == 0);
    }

    SECTION("kappa = 1 colligation attains one negative square, monotone in the point set") {
        SplitMix64 gen(68);
        const Colligation c = random_colligation(gen, 3, 1, 1, cx(1.0));
        auto kernel = [&](cx z, cx w) { return kernel_direct(c, Setting::HalfPlane, z, w); };
        PointChoice small, big;
        for (int i = 0; i < 8; ++i) {
            const cx z = gen.in_halfplane();
            big.points.push_back(z);
            big.vectors.push_back(gen.vector(1));
            if (i < 4) {
                small.points.push_back(z);
                small.vectors.push_back(big.vectors.back());
            }
        }
        const std::size_t k_small = negative_squares(kernel, small);
        const std::size_t k_big = negative_squares(kernel, big);
        CHECK(k_small <= k_big);
        CHECK(k_big == 1);
    }

    SECTION("non-Hermitian kernels are rejected") {
        PointChoice choice;
        choice.points = {cx(0.2), cx(0.3)};
        choice.vectors = {CMatrix{{cx(1.0)}}, CMatrix{{cx(1.0)}}};
        auto bad = [](cx z, cx w) { return CMatrix{{z + 2.0 * std::conj(w)}}; };
        CHECK_THROWS_AS(negative_squares(bad, choice), NonHermitianKernel);
    }
}
