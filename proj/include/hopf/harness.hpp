#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hopf/geometry.hpp"
#include "hopf/quadrature.hpp"
#include "hopf/serialize.hpp"
#include "hopf/shooting.hpp"

namespace hopf {

enum class Mode { Verify, Solve, Sweep, Q3, Fibers };
std::string_view to_string(Mode m);
Mode mode_from_string(std::string_view name);

struct Tolerances {
    double quad = kDefaultQuadTol;
    double ode = 1e-7;
    double first_order = 1e-9;
    double identity = 1e-12;
};

struct RunConfig {
    Mode mode = Mode::Verify;
    std::array<double, 4> a{1.0, 1.0, 1.0, 1.0};
    std::array<int, 4> k{1, 1, 1, 1};
    std::vector<double> c{1.0};
    int grid_n = 2048;
    double eps_interior = 1e-3;
    Tolerances tol;
    std::vector<Branch> branches{kAllBranches.begin(), kAllBranches.end()};
    // Shared: every branch runs every c. Per-branch: branch i uses c[i].
    bool shared_c = true;
    bool analytic = false;
    std::string out;

    int identity_samples = 10000;
    int variety_samples = 1000;
    std::uint64_t seed = 20240917;

    std::vector<double> slopes{0.5, 0.9, 1.0, 1.1, 2.0};
    double step_tol = kDefaultStepTol;

    std::array<double, 2> ab{1.0, 1.0};
    std::array<int, 2> kl{1, 1};
    std::string profile_csv;

    double gamma = 0.0;
    double t = 0.5 * kPi;
    int fiber_samples = 8;

    /// Throws InvalidArgument on any violated invariant.
    void validate() const;
    /// (branch, c) work items in report order.
    std::vector<std::pair<Branch, double>> work_items() const;
};

/// Sets one configuration key (the long flag name without dashes) from text.
void apply_setting(RunConfig& config, std::string_view key, std::string_view value);
/// Applies "key = value" lines; '#' starts a comment.
void apply_config_file(RunConfig& config, const std::filesystem::path& path);
Json config_echo(const RunConfig& config);

/// grid_n points from lo+eps to hi-eps inclusive.
std::vector<double> interior_grid(const Interval& interval, int n, double eps);

/// A finished report. Verdicts are recomputed from the body, never stored separately.
struct Report {
    Json body;
    /// True unless some verdict in body["verdicts"] is false.
    bool passed() const;
};

/// Re-derives every verdict from the serialized arrays and the echoed tolerances.
Json recompute_verdicts(const Json& report);

Report cmd_verify(const RunConfig& config);
/// Writes <branch>_c<c>.json and .csv for every work item; returns the paths written.
std::vector<std::filesystem::path> cmd_solve(const RunConfig& config);
Report cmd_sweep(const RunConfig& config);
Report cmd_q3(const RunConfig& config);
/// Writes fiber_<branch>.csv into config.out (if set) and reports the checks.
Report cmd_fibers(const RunConfig& config);

/// Inverse of embed: the join coordinate of a point on the variety.
JoinCoordinate recover_join(const EllipsoidParams& params, const AmbientPoint& p);

/// Writes a CSV with a header row; values in shortest round-trip form.
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns);

}  // namespace hopf
