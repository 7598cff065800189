#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include "krein/abpair.hpp"
#include "krein/cmatrix.hpp"
#include "krein/colligation.hpp"
#include "krein/kernels.hpp"
#include "krein/qschur.hpp"
#include "krein/rng.hpp"
#include "krein/unified.hpp"

namespace krein {

// One line of a report: the residual of a named identity check against
// its pinned tolerance, tagged with the anchor label of the identity.
struct CheckResult {
    std::string name;
    std::string anchor;
    double residual = 0.0;
    double tol = 0.0;
    bool pass = false;
};

inline CheckResult make_check(std::string name, std::string anchor, double residual, double tol) {
    CheckResult r{std::move(name), std::move(anchor), residual, tol, residual < tol};
    return r;
}

struct SuiteConfig {
    std::uint64_t seed = 20260810;
    double tol = 1e-10;  // numerical-rank / inertia cut passed into operations
    int threads = 1;     // cap for point-grid parallelism
    int resoid_draws = 100;
    int span_draws = 40;
    int kernel_colligations = 20;
    int kernel_pairs = 20;
    int kappa_draws = 100;
    int j0_draws = 20;
    int q_draws = 100;
};

// Index-parallel map with order-stable collection: every index computes
// independently from its own derived seed and lands by position, so the
// result bytes do not depend on the thread count.
template <typename Fn>
std::vector<double> parallel_residuals(std::size_t n, int threads, Fn&& fn) {
    std::vector<double> out(n, 0.0);
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t nthreads = std::min<std::size_t>({std::size_t(std::max(threads, 1)), hw, n == 0 ? 1 : n});
    if (nthreads <= 1) {
        for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
        return out;
    }
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < nthreads; ++t)
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < n; i += nthreads) out[i] = fn(i);
        });
    for (auto& th : pool) th.join();
    return out;
}

inline double max_of(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, x);
    return m;
}

namespace suite_detail {

inline RationalSection random_section(SplitMix64& rng, const KernelSpace& space, std::size_t terms,
                                      std::size_t coeff_dim = 1, bool with_poly = false) {
    RationalSection f(space, coeff_dim);
    for (std::size_t i = 0; i < terms; ++i)
        f.add_term(space.kind() == KernelSpace::Kind::Disk ? rng.in_disk() : rng.in_halfplane(),
                   rng.vector(coeff_dim));
    if (with_poly)
        for (std::size_t k = 0; k < 3; ++k) f.add_poly_coeff(k, rng.vector(coeff_dim, 0.5));
    return f;
}

inline cx domain_point(SplitMix64& rng, const KernelSpace& space) {
    return space.kind() == KernelSpace::Kind::Disk ? rng.in_disk() : rng.in_halfplane();
}

inline ABPair random_pair(SplitMix64& rng) {
    Polynomial a{cx(1.0), rng.complex_box(-0.15, 0.15, -0.15, 0.15), rng.complex_box(-0.1, 0.1, -0.1, 0.1)};
    Polynomial b{cx(0.0), cx(1.0) + rng.complex_box(-0.15, 0.15, -0.15, 0.15),
                 rng.complex_box(-0.1, 0.1, -0.1, 0.1)};
    return ABPair(std::move(a), std::move(b), DomainSpec::rectangle(-3.0, 3.0, -3.0, 3.0));
}

inline cx omega_plus_point(SplitMix64& rng, const ABPair& ab, double radius = 0.6) {
    while (true) {
        const cx z = rng.in_disk(radius);
        if (ab.domain().contains(z) && ab.classify(z) == Region::OmegaPlus) return z;
    }
}

inline Quaternion random_halfspace_point(SplitMix64& rng) {
    return Quaternion(rng.uniform(0.2, 2.5), rng.uniform(-1.2, 1.2), rng.uniform(-1.2, 1.2),
                      rng.uniform(-1.2, 1.2));
}

inline RationalFunction random_rational(SplitMix64& rng) {
    Polynomial num{rng.complex_box(-1, 1, -1, 1), rng.complex_box(-1, 1, -1, 1),
                   rng.complex_box(-1, 1, -1, 1)};
    Polynomial den{cx(1.0), cx(0.0), rng.complex_box(-0.2, 0.2, -0.2, 0.2)};
    return RationalFunction(std::move(num), std::move(den));
}

}  // namespace suite_detail

// ---------------------------------------------------------------------
// Complex-setting batteries.
// ---------------------------------------------------------------------

inline void run_resolvent_identity_checks(const SuiteConfig& cfg, std::vector<CheckResult>& out) {
    using namespace suite_detail;
    for (const Setting setting : {Setting::Disk, Setting::HalfPlane}) {
        const KernelSpace space = KernelSpace::of(setting);
        const auto res = parallel_residuals(std::size_t(cfg.resoid_draws), cfg.threads, [&](std::size_t i) {
            SplitMix64 rng(cfg.seed * 1000003ULL + 11ULL * i + (setting == Setting::Disk ? 0 : 1));
            const RationalSection f = random_section(rng, space, 2, 1, true);
            const cx alpha = domain_point(rng, space), beta = domain_point(rng, space);
            const RationalSection lhs = resolvent_apply(f, alpha) - resolvent_apply(f, beta);
            const RationalSection rhs = resolvent_apply(resolvent_apply(f, beta), alpha).scaled(alpha - beta);
            double worst = 0.0;
            for (int s = 0; s < 50; ++s) {
                const cx z = domain_point(rng, space);
                worst = std::max(worst, (lhs.eval(z) - rhs.eval(z)).max_abs());
            }
            return worst;
        });
        const std::string nm = setting == Setting::Disk ? "resoid.disk" : "resoid.halfplane";
        out.push_back(make_check(nm, "resoid", max_of(res), 1e-10));
    }
}

inline void run_hardy_identity_checks(const SuiteConfig& cfg, std::vector<CheckResult>& out) {
    using namespace suite_detail;
    {
        const KernelSpace d = KernelSpace::disk();
        const auto res = parallel_residuals(std::size_t(cfg.span_draws), cfg.threads, [&](std::size_t i) {
            SplitMix64 rng(cfg.seed ^ 0xA1F0ULL ^ (i * 2654435761ULL));
            const RationalSection f = random_section(rng, d, 1 + i % 6);
            const RationalSection g = random_section(rng, d, 1 + (i + 3) % 6);
            return check_identity(StructureIdentity::Equadb1, f, g, rng.in_disk(), rng.in_disk());
        });
        out.push_back(make_check("equadb1.spans", "equadb1", max_of(res), 1e-10));
    }
    {
        const KernelSpace hp = KernelSpace::halfplane();
        const auto res = parallel_residuals(std::size_t(cfg.span_draws), cfg.threads, [&](std::size_t i) {
            SplitMix64 rng(cfg.seed ^ 0xB2E1ULL ^ (i * 2654435761ULL));
            const RationalSection f = random_section(rng, hp, 1 + i % 6);
            const RationalSection g = random_section(rng, hp, 1 + (i + 2) % 6);
            return check_identity(StructureIdentity::Equadb2, f, g, rng.in_halfplane(), rng.in_halfplane());
        });
        out.push_back(make_check("equadb2.spans", "equadb2", max_of(res), 1e-10));

        const CMatrix j = CMatrix::diag_real({1.0, -1.0});
        const auto resj = parallel_residuals(20, cfg.threads, [&](std::size_t i) {
            SplitMix64 rng(cfg.seed ^ 0xC3D2ULL ^ (i * 40503ULL));
            const RationalSection f = random_section(rng, hp, 2, 2);
            const RationalSection g = random_section(rng, hp, 2, 2);
            return check_identity(StructureIdentity::Equadb2, f, g, rng.in_halfplane(), rng.in_halfplane(), j);
        });
        out.push_back(make_check("equadb2.signature_metric", "equadb2", max_of(resj), 1e-10));
    }
}

inline void run_adjfa_checks(const SuiteConfig& cfg, std::vector<CheckResult>& out) {
    using namespace suite_detail;
    auto battery = [&](const ABPair& ab, std::uint64_t salt) {
        const KernelSpace space = KernelSpace::rho(ab);
        const auto res = parallel_residuals(20, cfg.threads, [&](std::size_t i) {
            SplitMix64 rng(cfg.seed ^ salt ^ (i * 760930ULL + 7ULL));
            RationalSection f(space, 1), g(space, 1);
            for (int k = 0; k < 2; ++k) {
                f.add_term(omega_plus_point(rng, ab, 0.55), rng.vector(1));
                g.add_term(omega_plus_point(rng, ab, 0.55), rng.vector(1));
            }
            return check_identity(StructureIdentity::Adjfa, f, g, omega_plus_point(rng, ab, 0.5),
                                  omega_plus_point(rng, ab, 0.5));
        });
        return max_of(res);
    };
    out.push_back(make_check("adjfa.disk_pair", "adjfa", battery(ABPair::disk_pair(), 0x11ULL), 1e-10));
    out.push_back(
        make_check("adjfa.halfplane_pair", "adjfa", battery(ABPair::halfplane_pair(), 0x22ULL), 1e-10));
    double worst_random = 0.0;
    SplitMix64 pair_rng(cfg.seed ^ 0x77AA55ULL);
    for (int k = 0; k < 3; ++k) worst_random = std::max(worst_random, battery(random_pair(pair_rng), 0x33ULL + k));
    out.push_back(make_check("adjfa.random_pairs", "adjfa", worst_random, 1e-10));
}

inline void run_kernel_equality_checks(const SuiteConfig& cfg, std::vector<CheckResult>& out) {
    using namespace suite_detail;
    for (const Setting setting : {Setting::Disk, Setting::HalfPlane}) {
        const auto res =
            parallel_residuals(std::size_t(cfg.kernel_colligations), cfg.threads, [&](std::size_t i) {
                SplitMix64 rng(cfg.seed ^ 0xD00DULL ^ (i * 104729ULL) ^ (setting == Setting::Disk ? 0 : 9));
                const std::size_t dim_p = 2 + i % 7;  // up to 8
                const std::size_t ind_p = std::min<std::size_t>(i % 3, dim_p);
                const Colligation c = random_colligation(rng, dim_p, ind_p, 1 + i % 2, cx(0.9, 0.1));
                double worst = 0.0;
                for (int s = 0; s < cfg.kernel_pairs; ++s) {
                    const cx z = setting == Setting::Disk ? rng.in_disk() : rng.in_halfplane();
                    const cx w = setting == Setting::Disk ? rng.in_disk() : rng.in_halfplane();
                    worst = std::max(worst, max_abs_diff(kernel_direct(c, setting, z, w),
                                                         kernel_colligation(c, setting, z, w)));
                }
                return worst;
            });
        const std::string nm =
            setting == Setting::Disk ? "kernel_equality.disk" : "kernel_equality.halfplane";
        out.push_back(make_check(nm, "macau", max_of(res), 1e-9));
    }

    // unified setting, canonical pairs plus a seeded random pair
    SplitMix64 pair_rng(cfg.seed ^ 0x5EEDULL);
    const std::vector<std::pair<std::string, ABPair>> pairs = {
        {"kernel_equality.unified.disk_pair", ABPair::disk_pair()},
        {"kernel_equality.unified.halfplane_pair", ABPair::halfplane_pair()},
        {"kernel_equality.unified.random_pair", random_pair(pair_rng)},
    };
    for (const auto& [nm, ab] : pairs) {
        const auto res =
            parallel_residuals(std::size_t(cfg.kernel_colligations), cfg.threads, [&](std::size_t i) {
                SplitMix64 rng(cfg.seed ^ 0xFADEULL ^ (i * 65537ULL));
                const cx alpha = omega_plus_point(rng, ab, 0.4);
                const Colligation c = random_colligation(rng, 2 + i % 5, i % 3, 1 + i % 2, alpha);
                double worst = 0.0;
                for (int s = 0; s < cfg.kernel_pairs; ++s) {
                    const cx z = omega_plus_point(rng, ab);
                    const cx w = omega_plus_point(rng, ab);
                    worst = std::max(worst, max_abs_diff(kernel_unified_direct(c, ab, z, w),
                                                         kernel_unified_resolvent(c, ab, z, w)));
                }
                return worst;
            });
        out.push_back(make_check(nm, "kernab", max_of(res), 1e-9));
    }

    // the two printed forms of the unified transfer function
    {
        const ABPair hp = ABPair::halfplane_pair();
        const auto res = parallel_residuals(12, cfg.threads, [&](std::size_t i) {
            SplitMix64 rng(cfg.seed ^ 0xABBAULL ^ (i * 7919ULL));
            const Colligation c = random_colligation(rng, 3 + i % 3, i % 3, 1, cx(1.0, 0.2));
            double worst = 0.0;
            for (int s = 0; s < 12; ++s) {
                const cx z = omega_plus_point(rng, hp);
                worst = std::max(worst, max_abs_diff(eval_unified_sigma(c, hp, z),
                                                     eval_unified_resolvent(c, hp, z)));
            }
            return worst;
        });
        out.push_back(make_check("eval_unified.two_forms", "Sab", max_of(res), 1e-9));
    }

    // operator identities behind the resolvent pencil
    {
        const ABPair hp = ABPair::halfplane_pair();
        SplitMix64 rng(cfg.seed ^ 0xBEEFULL);
        const Colligation c = random_colligation(rng, 4, 2, 1, cx(1.1, 0.2));
        double worst1 = 0.0, worst2 = 0.0;
        for (int s = 0; s < 25; ++s) {
            const cx z = omega_plus_point(rng, hp);
            worst1 = std::max(worst1, step_identity_first(c, hp, z));
            worst2 = std::max(worst2, step_identity_second(c, hp, z));
        }
        out.push_back(make_check("unified.step_identity.pencil", "late123456", worst1, 1e-9));
        out.push_back(make_check("unified.step_identity.pairing", "late123456789", worst2, 1e-9));
    }
}

inline void run_construction_checks(const SuiteConfig& cfg, std::vector<CheckResult>& out) {
    // n-factor Blaschke model spaces, n = 1..4: kernel match on a
    // 10 x 10 grid plus the slack inertia of the structural inequality.
    const std::vector<std::vector<cx>> zero_sets = {
        {cx(1.0, 0.0)},
        {cx(0.6, 0.4), cx(1.5, -0.8)},
        {cx(0.5, 0.0), cx(1.1, 0.9), cx(2.0, -0.5)},
        {cx(0.4, 0.3), cx(0.9, -0.7), cx(1.6, 1.1), cx(2.2, 0.0)},
    };
    double worst_kernel = 0.0;
    std::size_t slack_defects = 0;
    for (const auto& zeros : zero_sets) {
        const FiniteModelSpace m = blaschke_model_space(zeros, cx(1.0));
        const CMatrix slack = model_inequality_slack(m);
        const Inertia in = inertia(slack, cfg.tol * std::max(1.0, slack.max_abs()));
        slack_defects += in.n_plus + in.n_minus;
        const Construction built = construct_from_space(m, cfg.tol);
        for (int gi = 0; gi < 10; ++gi)
            for (int gj = 0; gj < 10; ++gj) {
                const cx z(0.2 + 0.25 * gi, -1.1 + 0.25 * gj);
                const cx w(0.25 + 0.22 * gj, -1.0 + 0.21 * gi);
                worst_kernel =
                    std::max(worst_kernel, std::abs(kernel_direct(built.colligation, Setting::HalfPlane, z, w)(0, 0) -
                                                    blaschke_kernel(zeros, z, w)));
            }
    }
    out.push_back(make_check("construct.blaschke.kernel_match", "michelle1", worst_kernel, 1e-8));
    out.push_back(make_check("construct.blaschke.slack_inertia", "bastille", double(slack_defects), 0.5));

    // round trip through the model space of an indefinite colligation
    {
        SplitMix64 rng(cfg.seed ^ 0xC0FFEEULL);
        const Colligation source = random_colligation(rng, 3, 1, 1, cx(0.9, 0.0));
        const Construction rebuilt = construct_from_space(model_space_of(source), 1e-9);
        double worst = 0.0;
        for (int s = 0; s < 20; ++s) {
            const cx z = rng.in_halfplane(), w = rng.in_halfplane();
            worst = std::max(worst, max_abs_diff(kernel_direct(rebuilt.colligation, Setting::HalfPlane, z, w),
                                                 kernel_direct(source, Setting::HalfPlane, z, w)));
        }
        out.push_back(make_check("construct.roundtrip.indefinite", "michelle1", worst, 1e-8));
        const double index_diff =
            double(rebuilt.metric_c1.ind_minus()) - double(source.space_c().ind_minus());
        out.push_back(make_check("construct.index_bookkeeping", "ineqfund", std::abs(index_diff), 0.5));
    }

    // base-point consistency of the two kernel routes
    {
        SplitMix64 rng(cfg.seed ^ 0xFEEDULL);
        const Colligation c = random_colligation(rng, 3, 1, 2, cx(1.2, 0.1));
        const double k = 2.0 * c.alpha().real();
        const CMatrix calpha = c.g() * cx(1.0 / std::sqrt(kTwoPi * k));
        const MetricMap ca(calpha, c.space_p(), c.space_c());
        const double r1 = max_abs_diff(point_eval_map(c, Setting::HalfPlane, c.alpha()), calpha);
        const double r2 = max_abs_diff(kernel_colligation(c, Setting::HalfPlane, c.alpha(), c.alpha()),
                                       calpha * indef_adjoint(ca).mat);
        out.push_back(make_check("pointeval.base_consistency", "pointeval", std::max(r1, r2), 1e-12));
    }
}

inline void run_negative_squares_checks(const SuiteConfig& cfg, std::vector<CheckResult>& out) {
    std::size_t bound_violations = 0, non_attained = 0, non_monotone = 0;
    for (int draw = 0; draw < cfg.kappa_draws; ++draw) {
        SplitMix64 rng(cfg.seed ^ 0x99AA77ULL ^ (std::uint64_t(draw) * 48271ULL));
        const std::size_t dim_p = 2 + draw % 5;
        const std::size_t ind_p = std::min<std::size_t>(draw % 3, dim_p);
        const Colligation c = random_colligation(rng, dim_p, ind_p, 1, cx(1.0));
        PointChoice full;
        for (std::size_t i = 0; i < dim_p + 12; ++i) {
            full.points.push_back(rng.in_halfplane());
            full.vectors.push_back(rng.vector(1));
        }
        auto kappa_at = [&](std::size_t npts) {
            PointChoice choice;
            choice.points.assign(full.points.begin(), full.points.begin() + npts);
            choice.vectors.assign(full.vectors.begin(), full.vectors.begin() + npts);
            return negative_squares_of_s(c, Setting::HalfPlane, choice, cfg.tol);
        };
        const std::size_t k1 = kappa_at(dim_p);
        const std::size_t k2 = kappa_at(dim_p + 8);
        const std::size_t k3 = kappa_at(dim_p + 12);
        if (k1 > ind_p || k2 > ind_p || k3 > ind_p) ++bound_violations;
        if (k1 > k2 || k2 > k3) ++non_monotone;  // nested sets can only add negative directions
        if (!(k2 == ind_p && k3 == ind_p)) ++non_attained;
    }
    out.push_back(
        make_check("negative_squares.bound", "michelle12345678", double(bound_violations), 0.5));
    out.push_back(
        make_check("negative_squares.attainment", "michelle12345678", double(non_attained), 5.5));
    out.push_back(make_check("negative_squares.stability", "michelle12345678", double(non_monotone), 0.5));
}

inline void run_unified_invariance_checks(const SuiteConfig& cfg, std::vector<CheckResult>& out) {
    using namespace suite_detail;
    const Metric j0 = Metric::from_signature({1, -1});
    double worst_rho = 0.0;
    std::size_t classify_mismatches = 0;
    for (const ABPair& ab : {ABPair::disk_pair(), ABPair::halfplane_pair()}) {
        SplitMix64 rng(cfg.seed ^ 0x3C3C3CULL);
        for (int t = 0; t < cfg.j0_draws; ++t) {
            const CMatrix u = random_j_unitary(rng, j0, 0.4);
            const ABPair ab2 = ab.rerepresent(u);
            for (int s = 0; s < 15; ++s) {
                const cx z = rng.complex_box(-1.8, 1.8, -1.8, 1.8);
                if (!ab.domain().contains(z)) continue;
                worst_rho = std::max(worst_rho, std::abs(ab.rho(z, z) - ab2.rho(z, z)));
                if (ab.classify(z) != Region::OmegaZero && ab.classify(z) != ab2.classify(z))
                    ++classify_mismatches;
            }
        }
    }
    out.push_back(make_check("j0.invariance.rho", "rho", worst_rho, 1e-10));
    out.push_back(make_check("j0.invariance.classify", "rho", double(classify_mismatches), 0.5));

    const auto res = parallel_residuals(std::size_t(cfg.resoid_draws), cfg.threads, [&](std::size_t i) {
        SplitMix64 rng(cfg.seed ^ 0x484848ULL ^ (i * 6700417ULL));
        const ABPair ab = (i % 3 == 2) ? random_pair(rng)
                                       : (i % 3 ? ABPair::halfplane_pair() : ABPair::disk_pair());
        const RationalFunction f = random_rational(rng);
        const cx alpha = omega_plus_point(rng, ab);
        const cx a_al = ab.a().eval(alpha), b_al = ab.b().eval(alpha);
        const RationalFunction rba = r_ab_apply(ab, ResolventRole::BA, f, alpha);
        const RationalFunction rab = r_ab_apply(ab, ResolventRole::AB, f, alpha);
        double worst = 0.0;
        for (int s = 0; s < 50; ++s) {
            const cx z = omega_plus_point(rng, ab);
            worst = std::max(worst, std::abs(a_al * rba.eval(z) + b_al * rab.eval(z) + f.eval(z)));
        }
        return worst;
    });
    out.push_back(make_check("rarb1.complex", "rarb1", max_of(res), 1e-10));

    // structural-inequality equality for isometric inclusions
    const FiniteModelSpace m = blaschke_model_space({cx(0.7, 0.2), cx(1.3, -0.4)}, cx(1.0));
    out.push_back(make_check("malpensa.equality.blaschke", "malpensa190715",
                             model_inequality_slack(m).max_abs(), 1e-10));
}

// ---------------------------------------------------------------------
// Quaternionic batteries.
// ---------------------------------------------------------------------

inline void run_quaternion_checks(const SuiteConfig& cfg, std::vector<CheckResult>& out) {
    using namespace suite_detail;

    {  // both printed factorizations of the half-space kernel
        const auto res = parallel_residuals(std::size_t(cfg.q_draws), cfg.threads, [&](std::size_t i) {
            SplitMix64 rng(cfg.seed ^ 0x71717ULL ^ (i * 2147483647ULL));
            const Quaternion p = random_halfspace_point(rng), q = random_halfspace_point(rng);
            const Quaternion qc = q.conj();
            const Quaternion den1 = Quaternion(p.norm2()) + 2.0 * p.re() * qc + qc * qc;
            const Quaternion den2 = Quaternion(q.norm2()) + 2.0 * q.re() * p + p * p;
            const Quaternion k1 = (p.conj() + qc) * den1.inv();
            const Quaternion k2 = den2.inv() * (p + q);
            return qabs_diff(k1, k2);
        });
        out.push_back(make_check("qkernel.two_factorizations", "kernel", max_of(res), 1e-12));
    }

    {  // value at a real base point and the resolvent eigenrelation
        double worst_val = 0.0, worst_eig = 0.0;
        SplitMix64 rng(cfg.seed ^ 0x929292ULL);
        for (int t = 0; t < 50; ++t) {
            const double alpha = rng.uniform(0.3, 2.0);
            const Quaternion mu = random_halfspace_point(rng);
            worst_val = std::max(worst_val, qabs_diff(k_halfspace(Quaternion(alpha), mu),
                                                      (Quaternion(alpha) + mu.conj()).inv()));
            const Quaternion p = random_halfspace_point(rng);
            if ((p - Quaternion(alpha)).abs() < 1e-2) continue;
            const Quaternion lhs =
                (p - Quaternion(alpha)).inv() * (k_halfspace(p, mu) - k_halfspace(Quaternion(alpha), mu));
            const Quaternion rhs = -(k_halfspace(p, mu) * (Quaternion(alpha) + mu.conj()).inv());
            worst_eig = std::max(worst_eig, qabs_diff(lhs, rhs));
        }
        out.push_back(make_check("qkernel.value_at_real_point", "27q", worst_val, 1e-12));
        out.push_back(make_check("qresolvent.eigenrelation", "27q", worst_eig, 1e-10));
    }

    {  // structural identity on kernel sections
        const auto res = parallel_residuals(std::size_t(cfg.q_draws), cfg.threads, [&](std::size_t i) {
            SplitMix64 rng(cfg.seed ^ 0x27272727ULL ^ (i * 514229ULL));
            return check_lemma27q(rng.uniform(0.2, 2.0), rng.uniform(0.2, 2.0), random_halfspace_point(rng),
                                  random_halfspace_point(rng));
        });
        out.push_back(make_check("lemma27q.sections", "27q", max_of(res), 1e-10));
    }

    {  // scalar Stein identity from the kernel
        const auto res = parallel_residuals(50, cfg.threads, [&](std::size_t i) {
            SplitMix64 rng(cfg.seed ^ 0x57E1ULL ^ (i * 1299709ULL));
            return k_stein_identity_residual(random_halfspace_point(rng), random_halfspace_point(rng));
        });
        out.push_back(make_check("stein.scalar_kernel_identity", "michelle12345678910", max_of(res), 1e-12));
    }

    {  // Stein residuals for both printed readings on random colligations
        double worst_unstarred = 0.0, worst_starred = 0.0;
        for (int draw = 0; draw < 6; ++draw) {
            SplitMix64 rng(cfg.seed ^ 0x66666ULL ^ (std::uint64_t(draw) * 39916801ULL));
            const QColligation c = random_q_colligation(rng, 2 + draw % 2, draw % 2, 1 + draw % 2, 1.0);
            for (int t = 0; t < 5; ++t) {
                const SteinResiduals r =
                    verify_stein(c, random_halfspace_point(rng), random_halfspace_point(rng));
                worst_unstarred = std::max(worst_unstarred, r.unstarred);
                worst_starred = std::max(worst_starred, r.starred);
            }
        }
        out.push_back(make_check("stein.unstarred_reading", "sarah123456789012", worst_unstarred, 1e-8));
        // informational: the adjoint reading does not hold off the reals
        CheckResult starred = make_check("stein.starred_reading.informational", "michelle12345678910",
                                         worst_starred, std::numeric_limits<double>::infinity());
        out.push_back(starred);
    }

    {  // star resolvent against the truncated geometric series
        const auto res = parallel_residuals(10, cfg.threads, [&](std::size_t i) {
            SplitMix64 rng(cfg.seed ^ 0x5AA5ULL ^ (i * 28657ULL));
            QMatrix a(3, 3);
            for (std::size_t r = 0; r < 3; ++r)
                for (std::size_t c2 = 0; c2 < 3; ++c2)
                    a(r, c2) = Quaternion(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1),
                                          rng.uniform(-1, 1));
            const double scale = 0.45 / std::max(1e-9, std::sqrt(3.0) * a.max_abs());
            for (std::size_t r = 0; r < 3; ++r)
                for (std::size_t c2 = 0; c2 < 3; ++c2) a(r, c2) = a(r, c2) * scale;
            QMatrix g(2, 3);
            for (std::size_t r = 0; r < 2; ++r)
                for (std::size_t c2 = 0; c2 < 3; ++c2)
                    g(r, c2) = Quaternion(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1),
                                          rng.uniform(-1, 1));
            Quaternion p(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1));
            p = p * (1.0 / std::max(p.abs(), 1e-9));
            QMatrix acc(2, 3), ga = g;
            Quaternion ppow(1.0);
            for (int n = 0; n <= 32; ++n) {
                acc = acc + scalar_left(ppow, ga);
                ga = ga * a;
                ppow = ppow * p;
            }
            return qmax_abs_diff(star_inverse_resolvent(a, g, p), acc);
        });
        out.push_back(make_check("star_resolvent.series_oracle", "formula060813", max_of(res), 1e-8));
    }

    {  // real-axis reduction of every quaternionic operation
        SplitMix64 rng(cfg.seed ^ 0xEA7ULL);
        double worst = 0.0;

        for (int t = 0; t < 25; ++t) {  // kernel scalar
            const double a = rng.uniform(0.2, 2.0), b = rng.uniform(0.2, 2.0);
            worst = std::max(worst, std::abs(k_halfspace(Quaternion(a), Quaternion(b)).part1() -
                                             kTwoPi * hardy_kernel(Setting::HalfPlane, cx(a), cx(b))));
        }
        out.push_back(make_check("realaxis.k_halfspace", "michelle112345", worst, 1e-10));

        const QColligation qc = random_q_colligation(rng, 3, 1, 2, 0.8, 0.5, /*real_entries=*/true);
        const Colligation cc(qc.t().real_part(), qc.f().real_part(), qc.g().real_part(),
                             qc.h().real_part(), qc.space_p(), qc.space_d(), qc.space_c(),
                             cx(qc.alpha(), 0.0));
        double worst_eval = 0.0, worst_kernel = 0.0, worst_unified = 0.0;
        const ABPair hp = ABPair::halfplane_pair();
        for (int t = 0; t < 20; ++t) {
            const double x = rng.uniform(0.15, 2.5), s = rng.uniform(0.15, 2.5);
            worst_eval = std::max(worst_eval, max_abs_diff(eval_q(qc, Quaternion(x)).real_part(),
                                                           eval_halfplane(cc, cx(x))));
            worst_kernel = std::max(
                worst_kernel, max_abs_diff(kernel_q(qc, Quaternion(x), Quaternion(s)).real_part(),
                                           kernel_direct(cc, Setting::HalfPlane, cx(x), cx(s)) * cx(kTwoPi)));
            worst_unified = std::max(worst_unified,
                                     max_abs_diff(eval_q_unified(qc, hp, Quaternion(x)).real_part(),
                                                  eval_unified(cc, hp, cx(x))));
        }
        out.push_back(make_check("realaxis.eval_q", "michelle112345", worst_eval, 1e-10));
        out.push_back(make_check("realaxis.kernel_q", "michelle112345", worst_kernel, 1e-10));
        out.push_back(make_check("realaxis.eval_q_unified", "michelle112345", worst_unified, 1e-9));

        double worst_l27 = 0.0;
        const KernelSpace hps = KernelSpace::halfplane();
        for (int t = 0; t < 15; ++t) {
            const double alpha = rng.uniform(0.3, 1.5), beta = rng.uniform(0.3, 1.5);
            const double mu = rng.uniform(0.3, 2.0), nu = rng.uniform(0.3, 2.0);
            const double rq = check_lemma27q(alpha, beta, Quaternion(mu), Quaternion(nu));
            const double rc =
                check_identity(StructureIdentity::Equadb2, RationalSection::scalar_section(hps, cx(mu)),
                               RationalSection::scalar_section(hps, cx(nu)), cx(alpha), cx(beta));
            worst_l27 = std::max(worst_l27, std::abs(rq - rc));
        }
        out.push_back(make_check("realaxis.lemma27q", "michelle112345", worst_l27, 1e-10));

        double worst_rab = 0.0;
        for (int t = 0; t < 15; ++t) {
            const double alpha = rng.uniform(0.6, 1.4);
            const RationalFunction f = random_rational(rng);
            auto fq = [&](Quaternion p) { return Quaternion::from_complex(f.eval(cx(p.re(), 0.0))); };
            const double x = rng.uniform(0.3, 2.0);
            const Quaternion got = r_ab_apply_q(hp, ResolventRole::AB, fq, alpha, Quaternion(x));
            const cx want = r_ab_apply(hp, ResolventRole::AB, f, cx(alpha)).eval(cx(x));
            worst_rab = std::max(worst_rab, std::abs(got.part1() - want) + std::abs(got.part2()));
        }
        out.push_back(make_check("realaxis.r_ab_apply", "michelle112345", worst_rab, 1e-10));
    }

    {  // quaternionic resolvent pairing identity
        const auto res = parallel_residuals(std::size_t(cfg.q_draws), cfg.threads, [&](std::size_t i) {
            SplitMix64 rng(cfg.seed ^ 0x4B4B4BULL ^ (i * 433494437ULL));
            const bool half = (i % 2 == 0);
            const ABPair ab = half ? ABPair::halfplane_pair() : ABPair::disk_pair();
            const double alpha = half ? rng.uniform(0.5, 1.5) : rng.uniform(-0.4, 0.4);
            const QSeries series(alpha, {Quaternion(rng.uniform(-1, 1), rng.uniform(-1, 1),
                                                    rng.uniform(-1, 1), rng.uniform(-1, 1)),
                                         Quaternion(rng.uniform(-1, 1)), Quaternion(rng.uniform(-1, 1))});
            auto f = [&](Quaternion p) { return series_eval(series, p); };
            const Quaternion p = Quaternion(alpha) + Quaternion(rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3),
                                                                rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3));
            const double a_al = ab.a().eval(cx(alpha)).real();
            const double b_al = ab.b().eval(cx(alpha)).real();
            return (a_al * r_ab_apply_q(ab, ResolventRole::BA, f, alpha, p) +
                    b_al * r_ab_apply_q(ab, ResolventRole::AB, f, alpha, p) + f(p))
                .abs();
        });
        out.push_back(make_check("rarb1q.sampled", "rarb1q", max_of(res), 1e-10));
    }

    {  // intrinsic collapse and Blaschke involution
        SplitMix64 rng(cfg.seed ^ 0x1B1B1BULL);
        double worst_intr = 0.0;
        for (int t = 0; t < 20; ++t) {
            const QSeries f(0.0, {Quaternion(rng.uniform(-1, 1)), Quaternion(rng.uniform(-1, 1)),
                                  Quaternion(rng.uniform(-1, 1))});
            const QSeries g(0.0, {Quaternion(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1),
                                             rng.uniform(-1, 1)),
                                  Quaternion(rng.uniform(-1, 1), rng.uniform(-1, 1), 0, 0)});
            const Quaternion p(rng.uniform(-0.7, 0.7), rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5),
                               rng.uniform(-0.5, 0.5));
            worst_intr =
                std::max(worst_intr, qabs_diff(star_eval(f, g, p), series_eval(f, p) * series_eval(g, p)));
        }
        out.push_back(make_check("intrinsic.left_collapse", "rk:intrinsic", worst_intr, 1e-10));

        double worst_blaschke = 0.0;
        for (int t = 0; t < 50; ++t) {
            const Quaternion p(rng.uniform(-0.6, 0.6), rng.uniform(-0.4, 0.4), rng.uniform(-0.4, 0.4),
                               rng.uniform(-0.4, 0.4));
            const double u = rng.uniform(-0.8, 0.8);
            worst_blaschke = std::max(worst_blaschke, qabs_diff(blaschke_q(u, blaschke_q(-u, p)), p));
        }
        out.push_back(make_check("blaschke_q.involution", "P32q", worst_blaschke, 1e-12));
    }

    {  // kernel Hermitian symmetry and the negative-squares bound
        SplitMix64 rng(cfg.seed ^ 0x15151515ULL);
        const QColligation c = random_q_colligation(rng, 2, 1, 2, 1.1);
        double worst_sym = 0.0;
        for (int t = 0; t < 10; ++t) {
            const Quaternion p = random_halfspace_point(rng), q = random_halfspace_point(rng);
            worst_sym = std::max(worst_sym, qmax_abs_diff(kernel_q(c, p, q),
                                                          q_metric_adjoint(kernel_q(c, q, p), c.space_c(),
                                                                           c.space_c())));
        }
        out.push_back(make_check("qkernel.hermitian_symmetry", "kernel", worst_sym, 1e-10));

        std::size_t violations = 0;
        for (int draw = 0; draw < 8; ++draw) {
            const std::size_t dim_p = 2 + draw % 2, ind_p = draw % 2;
            const QColligation cq = random_q_colligation(rng, dim_p, ind_p, 1, 1.0);
            std::vector<Quaternion> pts;
            std::vector<QMatrix> vecs;
            for (std::size_t i = 0; i < dim_p + 3; ++i) {
                pts.push_back(random_halfspace_point(rng));
                QMatrix v(1, 1);
                v(0, 0) = Quaternion(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1),
                                     rng.uniform(-1, 1));
                vecs.push_back(v);
            }
            auto kernel = [&](Quaternion p, Quaternion q) { return kernel_q(cq, p, q); };
            if (negative_squares_q(kernel, pts, vecs, cq.space_c(), cfg.tol) > ind_p) ++violations;
        }
        out.push_back(make_check("qkappa.bound", "s-adrs-123", double(violations), 0.5));
    }

    {  // unified evaluation against the direct half-space formula
        SplitMix64 rng(cfg.seed ^ 0x31313131ULL);
        const QColligation c = random_q_colligation(rng, 3, 1, 2, 1.0);
        const ABPair hp = ABPair::halfplane_pair();
        double worst = 0.0;
        for (int t = 0; t < 15; ++t) {
            const Quaternion p = random_halfspace_point(rng);
            worst = std::max(worst, qmax_abs_diff(eval_q_unified(c, hp, p), eval_q(c, p)));
        }
        out.push_back(make_check("eval_q_unified.halfplane_pair", "monique1q", worst, 1e-9));
    }
}

inline std::vector<CheckResult> run_identity_suite(const SuiteConfig& cfg, bool include_quaternion = true) {
    std::vector<CheckResult> out;
    run_resolvent_identity_checks(cfg, out);
    run_hardy_identity_checks(cfg, out);
    run_adjfa_checks(cfg, out);
    run_kernel_equality_checks(cfg, out);
    run_construction_checks(cfg, out);
    run_negative_squares_checks(cfg, out);
    run_unified_invariance_checks(cfg, out);
    if (include_quaternion) run_quaternion_checks(cfg, out);
    return out;
}

inline std::vector<CheckResult> run_quaternion_suite(const SuiteConfig& cfg) {
    std::vector<CheckResult> out;
    run_quaternion_checks(cfg, out);
    return out;
}

}  // namespace krein
