// Batch driver: loads colligations, model spaces and (a,b) pairs from
// JSON fixtures, runs the identity suites and the model-space
// construction, and emits machine-readable reports. Reports are
// byte-deterministic for a fixed (input, seed, tol) triple.

#include <CLI11.hpp>

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "krein/json_io.hpp"
#include "krein/suite.hpp"

namespace {

using namespace krein;

constexpr int kExitOk = 0;
constexpr int kExitIdentityFailure = 1;
constexpr int kExitInputError = 2;

struct JobOptions {
    std::string input;
    std::string output;
    std::string dump_gram;
    std::uint64_t seed = 20260810;
    double tol = 1e-10;
};

int thread_cap_from_env() {
    const char* env = std::getenv("KREIN_KERNELS_THREADS");
    if (!env) return 1;
    const long v = std::strtol(env, nullptr, 10);
    if (v < 1) return 1;
    return int(std::min<long>(v, 64));
}

void add_common_flags(CLI::App* cmd, JobOptions& opt, bool with_dump = false) {
    cmd->add_option("--input", opt.input, "input JSON file");
    cmd->add_option("--seed", opt.seed, "PRNG seed (SplitMix64)");
    cmd->add_option("--tol", opt.tol, "numerical rank / inertia tolerance");
    cmd->add_option("--output", opt.output, "report path (stdout if omitted)");
    if (with_dump) cmd->add_option("--dump-gram", opt.dump_gram, "write the Gram matrix as CSV");
}

void write_checks(JsonWriter& w, const std::vector<CheckResult>& checks) {
    w.key("checks").begin_array();
    for (std::size_t i = 0; i < checks.size(); ++i) {
        if (i) w.comma();
        w.begin_object();
        w.key("name").value(checks[i].name).comma();
        w.key("paper_anchor").value(checks[i].anchor).comma();
        w.key("residual").value(checks[i].residual).comma();
        w.key("pass").value(checks[i].pass);
        w.end_object();
    }
    w.end_array();
}

void write_summary(JsonWriter& w, const std::vector<CheckResult>& checks) {
    std::uint64_t passed = 0;
    for (const auto& c : checks)
        if (c.pass) ++passed;
    w.key("summary").begin_object();
    w.key("total").value(std::uint64_t(checks.size())).comma();
    w.key("passed").value(passed).comma();
    w.key("failed").value(std::uint64_t(checks.size()) - passed);
    w.end_object();
}

int emit_report(const JobOptions& opt, const std::string& body) {
    if (opt.output.empty()) {
        std::cout << body << "\n";
        return kExitOk;
    }
    std::ofstream out(opt.output, std::ios::binary);
    if (!out) {
        std::cerr << "cannot open output path: " << opt.output << "\n";
        return kExitInputError;
    }
    out << body << "\n";
    return kExitOk;
}

int finish(const JobOptions& opt, const std::string& command, const std::vector<CheckResult>& checks,
           const std::function<void(JsonWriter&)>& payload = nullptr) {
    JsonWriter w;
    w.begin_object();
    w.key("command").value(command).comma();
    w.key("seed").value(opt.seed).comma();
    w.key("tol").value(opt.tol).comma();
    write_checks(w, checks);
    w.comma();
    if (payload) {
        payload(w);
        w.comma();
    }
    write_summary(w, checks);
    w.end_object();
    const int io = emit_report(opt, w.str());
    if (io != kExitOk) return io;
    for (const auto& c : checks)
        if (!c.pass) return kExitIdentityFailure;
    return kExitOk;
}

SuiteConfig config_from(const JobOptions& opt, const njson* input) {
    SuiteConfig cfg;
    cfg.seed = opt.seed;
    cfg.tol = opt.tol;
    cfg.threads = thread_cap_from_env();
    if (input) {
        auto get = [&](const char* key, int& slot) {
            if (input->contains(key)) slot = (*input)[key].get<int>();
        };
        get("resoid_draws", cfg.resoid_draws);
        get("span_draws", cfg.span_draws);
        get("kernel_colligations", cfg.kernel_colligations);
        get("kernel_pairs", cfg.kernel_pairs);
        get("kappa_draws", cfg.kappa_draws);
        get("j0_draws", cfg.j0_draws);
        get("q_draws", cfg.q_draws);
    }
    return cfg;
}

int cmd_verify_identities(const JobOptions& opt) {
    std::optional<njson> input;
    if (!opt.input.empty()) input = load_json_file(opt.input);
    bool include_quaternion = true;
    if (input && input->contains("include_quaternion"))
        include_quaternion = (*input)["include_quaternion"].get<bool>();
    const SuiteConfig cfg = config_from(opt, input ? &*input : nullptr);
    return finish(opt, "verify-identities", run_identity_suite(cfg, include_quaternion));
}

int cmd_quaternion_suite(const JobOptions& opt) {
    std::optional<njson> input;
    if (!opt.input.empty()) input = load_json_file(opt.input);
    const SuiteConfig cfg = config_from(opt, input ? &*input : nullptr);
    return finish(opt, "quaternion-suite", run_quaternion_suite(cfg));
}

int cmd_random_colligation(const JobOptions& opt) {
    std::size_t dim_p = 4, ind_p = 1, dim_c = 2;
    cx alpha(1.0, 0.0);
    std::string setting_name = "halfplane";
    if (!opt.input.empty()) {
        const njson j = load_json_file(opt.input);
        if (j.contains("dim_p")) dim_p = j["dim_p"].get<std::size_t>();
        if (j.contains("ind_p")) ind_p = j["ind_p"].get<std::size_t>();
        if (j.contains("dim_c")) dim_c = j["dim_c"].get<std::size_t>();
        if (j.contains("alpha")) alpha = parse_complex(j["alpha"]);
        if (j.contains("setting")) setting_name = j["setting"].get<std::string>();
    }
    if (setting_name != "disk" && setting_name != "halfplane")
        throw ParseError("setting must be 'disk' or 'halfplane'");
    if (ind_p > dim_p) throw ParseError("ind_p cannot exceed dim_p");
    if (dim_p > 62 || dim_c > 62) throw ParseError("dimensions above 62 are not supported");
    const Setting setting = setting_name == "disk" ? Setting::Disk : Setting::HalfPlane;

    SplitMix64 rng(opt.seed);
    const Colligation c = random_colligation(rng, dim_p, ind_p, dim_c, alpha);

    std::vector<CheckResult> checks;
    const CMatrix defect = c.block_map().mat * indef_adjoint(c.block_map()).mat -
                           CMatrix::identity(c.space_p().dim() + c.space_c().dim());
    checks.push_back(make_check("colligation.coisometry", "s-adrs111", defect.max_abs(), 1e-10));
    double worst = 0.0;
    for (int s = 0; s < 20; ++s) {
        const cx z = setting == Setting::Disk ? rng.in_disk() : rng.in_halfplane();
        const cx w = setting == Setting::Disk ? rng.in_disk() : rng.in_halfplane();
        worst = std::max(worst,
                         max_abs_diff(kernel_direct(c, setting, z, w), kernel_colligation(c, setting, z, w)));
    }
    checks.push_back(make_check("colligation.kernel_equality", "macau", worst, 1e-9));

    return finish(opt, "random-colligation", checks,
                  [&](JsonWriter& w) { w.key("colligation"); write_colligation(w, c); });
}

int cmd_kernel_report(const JobOptions& opt) {
    std::optional<Colligation> col;
    std::string setting_name = "halfplane";
    std::vector<cx> points;
    if (!opt.input.empty()) {
        const njson j = load_json_file(opt.input);
        if (!j.contains("colligation")) throw ParseError("kernel-report input misses 'colligation'");
        col = parse_colligation(j["colligation"], std::max(opt.tol, 1e-8));
        if (j.contains("setting")) setting_name = j["setting"].get<std::string>();
        if (j.contains("points")) points = parse_points(j["points"]);
    }
    SplitMix64 rng(opt.seed);
    if (!col) col = random_colligation(rng, 3, 1, 1, cx(1.0, 0.0));
    if (setting_name != "disk" && setting_name != "halfplane")
        throw ParseError("setting must be 'disk' or 'halfplane'");
    const Setting setting = setting_name == "disk" ? Setting::Disk : Setting::HalfPlane;
    if (points.empty())
        for (int i = 0; i < 8; ++i)
            points.push_back(setting == Setting::Disk ? rng.in_disk() : rng.in_halfplane());
    for (cx z : points)
        if (!KernelSpace::of(setting).in_domain(z)) throw ParseError("kernel point outside the domain");

    PointChoice choice;
    for (cx z : points) {
        choice.points.push_back(z);
        choice.vectors.push_back(rng.vector(col->space_c().dim()));
    }

    std::vector<CheckResult> checks;
    double worst_eq = 0.0, worst_sym = 0.0;
    for (cx z : choice.points)
        for (cx w : choice.points) {
            const CMatrix direct = kernel_direct(*col, setting, z, w);
            worst_eq = std::max(worst_eq, max_abs_diff(direct, kernel_colligation(*col, setting, z, w)));
            const MetricMap back(kernel_direct(*col, setting, w, z), col->space_c(), col->space_c());
            worst_sym = std::max(worst_sym, max_abs_diff(direct, indef_adjoint(back).mat));
        }
    checks.push_back(make_check("kernel.direct_vs_colligation", "macau", worst_eq, 1e-9));
    checks.push_back(make_check("kernel.hermitian_symmetry", "michelle12345678", worst_sym, 1e-10));

    const std::size_t kappa = negative_squares_of_s(*col, setting, choice, opt.tol);
    checks.push_back(make_check("kernel.negative_squares_bound", "michelle12345678",
                                kappa > col->space_p().ind_minus() ? 1.0 : 0.0, 0.5));

    if (!opt.dump_gram.empty()) {
        std::ofstream csv(opt.dump_gram, std::ios::binary);
        if (!csv) throw ParseError("cannot open --dump-gram path: " + opt.dump_gram);
        csv << "l,k,re,im\n";
        for (std::size_t l = 0; l < choice.points.size(); ++l)
            for (std::size_t k = 0; k < choice.points.size(); ++k) {
                const CMatrix kv = kernel_direct(*col, setting, choice.points[l], choice.points[k]);
                const cx g = value_form(kv * choice.vectors[k], choice.vectors[l], col->space_c().gram());
                csv << l << ',' << k << ',' << format_double(g.real()) << ',' << format_double(g.imag())
                    << "\n";
            }
    }

    return finish(opt, "kernel-report", checks, [&](JsonWriter& w) {
        w.key("negative_squares").value(std::uint64_t(kappa)).comma();
        w.key("state_index").value(std::uint64_t(col->space_p().ind_minus()));
    });
}

int cmd_construct_schur(const JobOptions& opt) {
    FiniteModelSpace m;
    std::vector<cx> reference_zeros;
    if (!opt.input.empty()) {
        const njson j = load_json_file(opt.input);
        if (!j.contains("model_space")) throw ParseError("construct-schur input misses 'model_space'");
        m = parse_model_space(j["model_space"]);
        if (j.contains("reference_zeros")) reference_zeros = parse_points(j["reference_zeros"]);
    } else {
        // bundled example: two-factor Blaschke model space
        reference_zeros = {cx(0.6, 0.4), cx(1.5, -0.8)};
        m = blaschke_model_space(reference_zeros, cx(1.0, 0.0));
    }

    std::vector<CheckResult> checks;
    const Construction built = construct_from_space(m, opt.tol);

    const CMatrix defect =
        built.colligation.block_map().mat * indef_adjoint(built.colligation.block_map()).mat -
        CMatrix::identity(built.colligation.space_p().dim() + built.colligation.space_c().dim());
    checks.push_back(make_check("construct.coisometry", "s-adrs111", defect.max_abs(), 1e-9));
    checks.push_back(
        make_check("construct.slack_negative_part", "bastille", double(built.slack_inertia.n_minus), 0.5));
    checks.push_back(make_check(
        "construct.index_bookkeeping", "ineqfund",
        std::abs(double(built.metric_c1.ind_minus()) - double(m.coeff.ind_minus())), 0.5));

    // kernel match on a 10 x 10 grid against the model-space kernel
    double worst_model = 0.0, worst_reference = 0.0;
    for (int gi = 0; gi < 10; ++gi)
        for (int gj = 0; gj < 10; ++gj) {
            const cx z(0.2 + 0.25 * gi, -1.1 + 0.25 * gj);
            const cx w(0.25 + 0.22 * gj, -1.0 + 0.21 * gi);
            const CMatrix built_k = kernel_direct(built.colligation, Setting::HalfPlane, z, w);
            worst_model = std::max(worst_model, max_abs_diff(built_k, model_space_kernel(m, z, w)));
            if (!reference_zeros.empty())
                worst_reference = std::max(worst_reference,
                                           std::abs(built_k(0, 0) - blaschke_kernel(reference_zeros, z, w)));
        }
    checks.push_back(make_check("construct.kernel_match_model", "macau", worst_model, 1e-8));
    if (!reference_zeros.empty())
        checks.push_back(make_check("construct.kernel_match_reference", "michelle1", worst_reference, 1e-8));

    if (!opt.dump_gram.empty()) {
        std::ofstream csv(opt.dump_gram, std::ios::binary);
        if (!csv) throw ParseError("cannot open --dump-gram path: " + opt.dump_gram);
        csv << "i,j,re,im\n";
        for (std::size_t i = 0; i < m.gram.rows(); ++i)
            for (std::size_t j2 = 0; j2 < m.gram.cols(); ++j2)
                csv << i << ',' << j2 << ',' << format_double(m.gram(i, j2).real()) << ','
                    << format_double(m.gram(i, j2).imag()) << "\n";
    }

    return finish(opt, "construct-schur", checks, [&](JsonWriter& w) {
        w.key("k").value(built.k).comma();
        w.key("defect_dimension").value(std::uint64_t(built.metric_c1.dim())).comma();
        w.key("defect_index").value(std::uint64_t(built.metric_c1.ind_minus())).comma();
        w.key("colligation");
        write_colligation(w, built.colligation);
    });
}

int cmd_classify_region(const JobOptions& opt) {
    std::optional<ABPair> ab;
    std::vector<cx> points;
    if (!opt.input.empty()) {
        const njson j = load_json_file(opt.input);
        if (!j.contains("ab_pair")) throw ParseError("classify-region input misses 'ab_pair'");
        ab = parse_ab_pair(j["ab_pair"]);
        if (j.contains("points")) points = parse_points(j["points"]);
    }
    if (!ab) ab = ABPair::halfplane_pair();
    SplitMix64 rng(opt.seed);
    if (points.empty())
        for (int i = 0; i < 16; ++i) points.push_back(rng.complex_box(-2.0, 2.0, -2.0, 2.0));

    std::vector<CheckResult> checks;
    const Metric j0 = Metric::from_signature({1, -1});
    double worst_rho = 0.0;
    std::size_t mismatches = 0;
    for (int t = 0; t < 20; ++t) {
        const ABPair ab2 = ab->rerepresent(random_j_unitary(rng, j0, 0.4));
        for (cx z : points) {
            if (!ab->domain().contains(z)) continue;
            worst_rho = std::max(worst_rho, std::abs(ab->rho(z, z) - ab2.rho(z, z)));
            if (ab->classify(z) != Region::OmegaZero && ab->classify(z) != ab2.classify(z)) ++mismatches;
        }
    }
    checks.push_back(make_check("classify.rho_invariance", "rho", worst_rho, 1e-10));
    checks.push_back(make_check("classify.region_invariance", "rho", double(mismatches), 0.5));

    return finish(opt, "classify-region", checks, [&](JsonWriter& w) {
        w.key("classification").begin_array();
        bool first = true;
        for (cx z : points) {
            if (!ab->domain().contains(z)) continue;
            if (!first) w.comma();
            first = false;
            const Region r = ab->classify(z);
            w.begin_object();
            w.key("point").value(z).comma();
            w.key("region")
                .value(std::string(r == Region::OmegaPlus
                                       ? "omega_plus"
                                       : (r == Region::OmegaMinus ? "omega_minus" : "omega_zero")));
            w.comma().key("rho").value(ab->rho(z, z));
            w.end_object();
        }
        w.end_array();
    });
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-scale structure theory of indefinite kernel spaces: identity suites, "
                 "realizations and reports"};
    app.require_subcommand(1);

    JobOptions opt;
    int (*handler)(const JobOptions&) = nullptr;

    auto* verify = app.add_subcommand("verify-identities", "run the bundled identity suite");
    add_common_flags(verify, opt);
    verify->callback([&] { handler = cmd_verify_identities; });

    auto* qsuite = app.add_subcommand("quaternion-suite", "run the quaternionic battery");
    add_common_flags(qsuite, opt);
    qsuite->callback([&] { handler = cmd_quaternion_suite; });

    auto* randc = app.add_subcommand("random-colligation", "generate and check a coisometric colligation");
    add_common_flags(randc, opt);
    randc->callback([&] { handler = cmd_random_colligation; });

    auto* krep = app.add_subcommand("kernel-report", "kernel values, equality and negative squares");
    add_common_flags(krep, opt, /*with_dump=*/true);
    krep->callback([&] { handler = cmd_kernel_report; });

    auto* construct = app.add_subcommand("construct-schur", "model space to coisometric colligation");
    add_common_flags(construct, opt, /*with_dump=*/true);
    construct->callback([&] { handler = cmd_construct_schur; });

    auto* classify = app.add_subcommand("classify-region", "region split and invariance of an (a,b) pair");
    add_common_flags(classify, opt);
    classify->callback([&] { handler = cmd_classify_region; });

    CLI11_PARSE(app, argc, argv);

    try {
        return handler(opt);
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
}
