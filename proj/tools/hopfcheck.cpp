// hopfcheck: verification front end for the ellipsoidal-join Hopf maps.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "hopf/errors.hpp"
#include "hopf/harness.hpp"

namespace {

enum Exit { kPass = 0, kVerdictFail = 1, kConfigError = 2, kNumericFailure = 3 };

// Flags are collected as text and applied after the config file so that they win.
struct FlagSet {
    std::map<std::string, std::string> values;
    bool shared = false, per_branch = false, analytic = false;
    std::string config_file;

    void add(CLI::App* app, const std::string& name, const std::string& help) {
        app->add_option_function<std::string>(
            "--" + name, [this, name](const std::string& v) { values[name] = v; }, help);
    }
};

void add_common(CLI::App* app, FlagSet& f) {
    app->add_option("--config", f.config_file, "key = value configuration file (flags override it)");
    f.add(app, "a", "semi-axes a1,a2,a3,a4");
    f.add(app, "k", "winding integers k1,k2,k3,k4");
    f.add(app, "c", "integration constant(s) c[,c...]");
    f.add(app, "branches", "subset of q5,b2,b3,b4");
    f.add(app, "grid", "grid points per branch (>= 16)");
    f.add(app, "eps", "distance of the grid ends from the singular loci");
    f.add(app, "tol-quad", "quadrature tolerance");
    f.add(app, "tol-ode", "harmonicity residual tolerance");
    f.add(app, "tol-first-order", "first-order relation tolerance");
    f.add(app, "tol-id", "identity tolerance");
    f.add(app, "out", "output path");
    f.add(app, "seed", "random seed for identity sweeps");
    app->add_flag("--shared-c", f.shared, "every branch uses every c (default)");
    app->add_flag("--per-branch-c", f.per_branch, "branch i uses the i-th c");
    app->add_flag("--analytic", f.analytic, "use the constant-h antiderivative");
}

hopf::RunConfig build_config(hopf::Mode mode, const FlagSet& f) {
    hopf::RunConfig cfg;
    if (!f.config_file.empty()) hopf::apply_config_file(cfg, f.config_file);
    cfg.mode = mode;
    for (const auto& [key, value] : f.values) hopf::apply_setting(cfg, key, value);
    if (f.shared && f.per_branch) throw hopf::InvalidArgument("--shared-c and --per-branch-c are exclusive");
    if (f.shared) cfg.shared_c = true;
    if (f.per_branch) cfg.shared_c = false;
    if (f.analytic) cfg.analytic = true;
    cfg.validate();
    return cfg;
}

void emit(const hopf::Json& body, const std::string& out) {
    const std::string text = body.dump(2) + "\n";
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(out, std::ios::binary);
    if (!file) throw std::runtime_error("cannot write " + out);
    file << text;
}

int run(int argc, char** argv) {
    CLI::App app{"Numerical certification of equivariant harmonic morphisms from ellipsoidal joins to S^2"};
    app.require_subcommand(1);

    FlagSet verify_f, solve_f, sweep_f, q3_f, fibers_f;
    auto* verify = app.add_subcommand("verify", "closed-form profiles with residual, identity and boundary checks");
    add_common(verify, verify_f);
    verify_f.add(verify, "identity-samples", "random samples for the coefficient identities");
    verify_f.add(verify, "variety-samples", "random points for the variety check");

    auto* solve = app.add_subcommand("solve", "write profile JSON and CSV per branch and c");
    add_common(solve, solve_f);

    auto* sweep = app.add_subcommand("sweep", "shoot over a lattice of initial slopes");
    add_common(sweep, sweep_f);
    sweep_f.add(sweep, "slopes", "multipliers of the reference slope");
    sweep_f.add(sweep, "step-tol", "local error tolerance of the integrator");

    auto* q3 = app.add_subcommand("q3", "residual of the three-dimensional equation over a profile CSV");
    add_common(q3, q3_f);
    q3_f.add(q3, "ab", "semi-axes a,b");
    q3_f.add(q3, "kl", "winding integers k,l");
    q3_f.add(q3, "profile", "CSV with columns s, alpha[, alpha_prime[, alpha_second]]");

    auto* fibers = app.add_subcommand("fibers", "sample the fiber over a point of S^2");
    add_common(fibers, fibers_f);
    fibers_f.add(fibers, "gamma", "longitude of the target point");
    fibers_f.add(fibers, "t", "colatitude of the target point, in [0, pi]");
    fibers_f.add(fibers, "samples", "samples per torus angle");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kPass : kConfigError;
    }

    try {
        if (verify->parsed()) {
            const auto cfg = build_config(hopf::Mode::Verify, verify_f);
            const auto report = hopf::cmd_verify(cfg);
            emit(report.body, cfg.out);
            return report.passed() ? kPass : kVerdictFail;
        }
        if (solve->parsed()) {
            const auto cfg = build_config(hopf::Mode::Solve, solve_f);
            for (const auto& p : hopf::cmd_solve(cfg)) std::cout << p.string() << '\n';
            return kPass;
        }
        if (sweep->parsed()) {
            const auto cfg = build_config(hopf::Mode::Sweep, sweep_f);
            emit(hopf::cmd_sweep(cfg).body, cfg.out);
            return kPass;
        }
        if (q3->parsed()) {
            auto cfg = build_config(hopf::Mode::Q3, q3_f);
            const std::string out = cfg.out;
            const auto report = hopf::cmd_q3(cfg);
            emit(report.body, out.empty() ? out : out + ".json");
            return report.passed() ? kPass : kVerdictFail;
        }
        if (fibers->parsed()) {
            const auto cfg = build_config(hopf::Mode::Fibers, fibers_f);
            const auto report = hopf::cmd_fibers(cfg);
            emit(report.body, cfg.out.empty() ? "" : (std::filesystem::path(cfg.out) / "fibers.json").string());
            return report.passed() ? kPass : kVerdictFail;
        }
    } catch (const hopf::InvalidArgument& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kConfigError;
    } catch (const hopf::NotMorphismRegime& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kConfigError;
    } catch (const hopf::NoPreimage& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kConfigError;
    } catch (const hopf::Error& e) {
        std::cerr << "numeric failure: " << e.what() << '\n';
        return kNumericFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfigError;
    }
    return kConfigError;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
