#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "krein/abpair.hpp"
#include "krein/kernels.hpp"
#include "krein/rng.hpp"
#include "krein/unified.hpp"

using namespace krein;

namespace {

RationalFunction random_rational(SplitMix64& rng) {
    // polynomial of degree 2 over (1 + small z^2): analytic near 0
    Polynomial num{rng.complex_box(-1, 1, -1, 1), rng.complex_box(-1, 1, -1, 1),
                   rng.complex_box(-1, 1, -1, 1)};
    Polynomial den{cx(1.0), cx(0.0), rng.complex_box(-0.2, 0.2, -0.2, 0.2)};
    return RationalFunction(std::move(num), std::move(den));
}

ABPair random_pair(SplitMix64& rng) {
    Polynomial a{cx(1.0), rng.complex_box(-0.15, 0.15, -0.15, 0.15), rng.complex_box(-0.1, 0.1, -0.1, 0.1)};
    Polynomial b{cx(0.0), cx(1.0) + rng.complex_box(-0.15, 0.15, -0.15, 0.15),
                 rng.complex_box(-0.1, 0.1, -0.1, 0.1)};
    return ABPair(std::move(a), std::move(b), DomainSpec::rectangle(-3.0, 3.0, -3.0, 3.0));
}

cx omega_plus_point(SplitMix64& rng, const ABPair& ab, double radius = 0.6) {
    while (true) {
        const cx z = rng.in_disk(radius);
        if (ab.domain().contains(z) && ab.classify(z) == Region::OmegaPlus) return z;
    }
}

}  // namespace

TEST_CASE("rho, delta, sigma closed forms") {
    const ABPair disk = ABPair::disk_pair();
    SplitMix64 rng(71);
    for (int t = 0; t < 10; ++t) {
        const cx z = rng.in_disk(), w = rng.in_disk();
        CHECK(std::abs(disk.rho(z, w) - (cx(1.0) - z * std::conj(w))) < 1e-15);
        CHECK(std::abs(disk.sigma(z) - z) < 1e-15);
        CHECK(std::abs(disk.delta(z, z)) < 1e-15);
    }

    const ABPair hp = ABPair::halfplane_pair();
    for (int t = 0; t < 10; ++t) {
        const cx z = rng.in_halfplane(0.1, 2.0, 1.5), w = rng.in_halfplane(0.1, 2.0, 1.5);
        CHECK(std::abs(hp.rho(z, w) - kPi * (z + std::conj(w))) < 1e-12);
    }
}

TEST_CASE("region classification") {
    const ABPair disk = ABPair::disk_pair();
    CHECK(disk.classify(cx(0.0)) == Region::OmegaPlus);
    CHECK(disk.classify(cx(1.5, 0.9)) == Region::OmegaMinus);
    CHECK(disk.classify(std::polar(1.0, 0.41)) == Region::OmegaZero);

    const ABPair hp = ABPair::halfplane_pair();
    CHECK(hp.classify(cx(1.0)) == Region::OmegaPlus);
    CHECK(hp.classify(cx(-1.0, 0.4)) == Region::OmegaMinus);
    CHECK(hp.classify(cx(0.0, 0.7)) == Region::OmegaZero);

    SECTION("invalid pairs are rejected") {
        CHECK_THROWS_AS(ABPair(Polynomial::constant(1.0), Polynomial::constant(0.1),
                               DomainSpec::disk(cx(0.0), 2.0)),
                        DomainViolation);
    }
}

TEST_CASE("classification and rho are invariant under J0-unitary re-representation") {
    SplitMix64 rng(73);
    const Metric j0 = Metric::from_signature({1, -1});
    for (const ABPair& ab : {ABPair::disk_pair(), ABPair::halfplane_pair()}) {
        for (int t = 0; t < 20; ++t) {
            const CMatrix u = random_j_unitary(rng, j0, 0.4);
            const ABPair ab2 = ab.rerepresent(u);
            double worst = 0.0;
            for (int s = 0; s < 10; ++s) {
                const cx z = ab.domain().contains(cx(0.5)) ? rng.in_disk(1.8) : rng.complex_box(-2, 2, -2, 2);
                if (!ab.domain().contains(z)) continue;
                worst = std::max(worst, std::abs(ab.rho(z, z) - ab2.rho(z, z)));
                if (ab.classify(z) != Region::OmegaZero) CHECK(ab.classify(z) == ab2.classify(z));
            }
            CHECK(worst < 1e-10);
        }
    }
}

TEST_CASE("generalized resolvents") {
    SplitMix64 rng(79);

    SECTION("pairing identity a(al) R(b,a,al) + b(al) R(a,b,al) = -I") {
        std::vector<ABPair> pairs{ABPair::disk_pair(), ABPair::halfplane_pair()};
        for (int extra = 0; extra < 3; ++extra) pairs.push_back(random_pair(rng));
        double worst = 0.0;
        for (const ABPair& ab : pairs) {
            for (int draw = 0; draw < 5; ++draw) {
                const RationalFunction f = random_rational(rng);
                const cx alpha = omega_plus_point(rng, ab);
                const cx a_al = ab.a().eval(alpha), b_al = ab.b().eval(alpha);
                const RationalFunction rba = r_ab_apply(ab, ResolventRole::BA, f, alpha);
                const RationalFunction rab = r_ab_apply(ab, ResolventRole::AB, f, alpha);
                for (int s = 0; s < 50; ++s) {
                    const cx z = omega_plus_point(rng, ab);
                    const cx lhs = a_al * rba.eval(z) + b_al * rab.eval(z) + f.eval(z);
                    worst = std::max(worst, std::abs(lhs));
                }
            }
        }
        CHECK(worst < 1e-10);
    }

    SECTION("disk pair gives the classical resolvent") {
        const ABPair disk = ABPair::disk_pair();
        const RationalFunction f = random_rational(rng);
        const cx alpha = rng.in_disk(0.5);
        const RationalFunction lhs = r_ab_apply(disk, ResolventRole::AB, f, alpha);
        const RationalFunction rhs = resolvent(f, alpha);
        for (int s = 0; s < 20; ++s) {
            const cx z = rng.in_disk();
            CHECK(std::abs(lhs.eval(z) - rhs.eval(z)) < 1e-12);
        }
    }

    SECTION("transport law through sigma") {
        for (const ABPair& ab : {ABPair::halfplane_pair(), random_pair(rng)}) {
            const RationalFunction bigf = random_rational(rng);
            const cx alpha = omega_plus_point(rng, ab);
            auto f = [&](cx z) { return bigf.eval(ab.sigma(z)) / ab.a().eval(z); };
            const RationalFunction rf = resolvent(bigf, ab.sigma(alpha));
            double worst = 0.0;
            for (int s = 0; s < 25; ++s) {
                const cx z = omega_plus_point(rng, ab);
                const cx den = ab.a().eval(alpha) * ab.b().eval(z) - ab.b().eval(alpha) * ab.a().eval(z);
                if (std::abs(den) < 1e-6) continue;
                const cx lhs = (ab.a().eval(z) * f(z) - ab.a().eval(alpha) * f(alpha)) / den;
                const cx rhs = rf.eval(ab.sigma(z)) / (ab.a().eval(alpha) * ab.a().eval(z));
                worst = std::max(worst, std::abs(lhs - rhs));
            }
            CHECK(worst < 1e-10);
        }
    }
}

TEST_CASE("transport to the disk") {
    SplitMix64 rng(83);

    SECTION("f = 1/a pulls back to the constant 1") {
        const ABPair hp = ABPair::halfplane_pair();
        auto f = [&](cx z) { return 1.0 / hp.a().eval(z); };
        const TransportedFunction tf = transport_to_disk(hp, f, cx(1.0));
        for (int s = 0; s < 10; ++s) {
            const cx u = rng.in_disk(0.6);
            CHECK(std::abs(tf.eval(u) - cx(1.0)) < 1e-10);
        }
    }

    SECTION("disk pair transports to the function itself") {
        const ABPair disk = ABPair::disk_pair();
        const RationalFunction f = random_rational(rng);
        const TransportedFunction tf = transport_to_disk(disk, [&](cx z) { return f.eval(z); }, cx(0.0));
        for (int s = 0; s < 10; ++s) {
            const cx u = rng.in_disk(0.8);
            CHECK(std::abs(tf.eval(u) - f.eval(u)) < 1e-10);
        }
    }

    SECTION("rho kernel sections pull back to disk kernel sections") {
        const ABPair hp = ABPair::halfplane_pair();
        const cx mu = rng.in_halfplane(0.3, 2.0, 1.0);
        const cx coeff = rng.complex_box(-1, 1, -1, 1);
        auto f = [&](cx z) { return coeff / hp.rho(z, mu); };
        const TransportedFunction tf = transport_to_disk(hp, f, cx(1.0));
        const cx smu = hp.sigma(mu);
        const cx scale = coeff / std::conj(hp.a().eval(mu));
        for (int s = 0; s < 10; ++s) {
            const cx u = rng.in_disk(0.6);
            const cx expected = scale / (cx(1.0) - u * std::conj(smu));
            CHECK(std::abs(tf.eval(u) - expected) < 1e-9);
        }
    }

    SECTION("round trip f -> F -> f") {
        for (const ABPair& ab : {ABPair::halfplane_pair(), random_pair(rng)}) {
            const RationalFunction f = random_rational(rng);
            const cx base = omega_plus_point(rng, ab, 0.4);
            const TransportedFunction tf = transport_to_disk(ab, [&](cx z) { return f.eval(z); }, base);
            double worst = 0.0;
            for (int s = 0; s < 15; ++s) {
                const cx z = omega_plus_point(rng, ab, 0.5);
                worst = std::max(worst, std::abs(tf.eval(ab.sigma(z)) / ab.a().eval(z) - f.eval(z)));
            }
            CHECK(worst < 1e-9);
        }
    }
}

TEST_CASE("unified realization evaluation and kernels") {
    SplitMix64 rng(89);

    SECTION("disk pair at base 0 reduces to the disk realization") {
        const Colligation c = random_colligation(rng, 3, 1, 2, cx(0.0));
        const ABPair disk = ABPair::disk_pair();
        for (int s = 0; s < 10; ++s) {
            const cx z = rng.in_disk();
            CHECK(max_abs_diff(eval_unified(c, disk, z), eval_disk(c, z)) < 1e-10);
            const cx w = rng.in_disk();
            CHECK(max_abs_diff(kernel_unified(c, disk, z, w), kernel_direct(c, Setting::Disk, z, w)) < 1e-10);
        }
    }

    SECTION("base point value is H and both forms agree on random data") {
        std::vector<ABPair> pairs{ABPair::disk_pair(), ABPair::halfplane_pair()};
        for (int extra = 0; extra < 2; ++extra) pairs.push_back(random_pair(rng));
        for (const ABPair& ab : pairs) {
            const cx alpha = ab.domain().contains(cx(1.0)) && ab.classify(cx(1.0)) == Region::OmegaPlus
                                 ? cx(1.0)
                                 : omega_plus_point(rng, ab, 0.3);
            const Colligation c = random_colligation(rng, 3, 1, 2, alpha);
            CHECK(max_abs_diff(eval_unified(c, ab, alpha), c.h()) < 1e-10);

            double worst_eval = 0.0, worst_kernel = 0.0;
            for (int s = 0; s < 20; ++s) {
                const cx z = omega_plus_point(rng, ab);
                const cx w = omega_plus_point(rng, ab);
                worst_eval = std::max(worst_eval,
                                      max_abs_diff(eval_unified_sigma(c, ab, z), eval_unified_resolvent(c, ab, z)));
                worst_kernel = std::max(worst_kernel, max_abs_diff(kernel_unified_direct(c, ab, z, w),
                                                                   kernel_unified_resolvent(c, ab, z, w)));
            }
            CHECK(worst_eval < 1e-9);
            CHECK(worst_kernel < 1e-9);
        }
    }

    SECTION("step identities hold as operator identities") {
        const ABPair hp = ABPair::halfplane_pair();
        const Colligation c = random_colligation(rng, 4, 2, 1, cx(1.1, 0.2));
        double worst = 0.0;
        for (int s = 0; s < 20; ++s) {
            const cx z = omega_plus_point(rng, hp);
            worst = std::max(worst, step_identity_first(c, hp, z));
            worst = std::max(worst, step_identity_second(c, hp, z));
        }
        CHECK(worst < 1e-9);
    }

    SECTION("inequality slack transports with factor |a(alpha)|^2") {
        const ABPair hp = ABPair::halfplane_pair();
        const Colligation c = random_colligation(rng, 3, 1, 1, cx(0.9, 0.1));
        const UnifiedOperators u = unified_operators(c, hp);
        const CMatrix jp = c.space_p().gram();
        const CMatrix jc = c.space_c().gram();

        const CMatrix slack_ab =
            (u.r_ab.adjoint() * jp * u.r_ab - u.r_ba.adjoint() * jp * u.r_ba + u.c_alpha.adjoint() * jc * u.c_alpha) *
            cx(-1.0);

        const cx a_al = u.a_alpha;
        const cx sigma_al = hp.sigma(c.alpha());
        const CMatrix r_u = u.r_ab * a_al;
        const CMatrix e_u = u.c_alpha * a_al;
        const CMatrix one_plus = CMatrix::identity(3) + r_u * sigma_al;
        const CMatrix slack_radisk =
            (r_u.adjoint() * jp * r_u - one_plus.adjoint() * jp * one_plus + e_u.adjoint() * jc * e_u) * cx(-1.0);

        CHECK(max_abs_diff(slack_radisk, slack_ab * cx(std::norm(a_al))) < 1e-10);
        const Inertia i1 = inertia((slack_ab + slack_ab.adjoint()) * cx(0.5), 1e-9);
        const Inertia i2 = inertia((slack_radisk + slack_radisk.adjoint()) * cx(0.5), 1e-9);
        CHECK(i1.n_minus == i2.n_minus);
    }
}
