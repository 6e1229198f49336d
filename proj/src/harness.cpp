#include "hopf/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <future>
#include <limits>
#include <memory>
#include <random>
#include <sstream>

#include "hopf/errors.hpp"
#include "hopf/interpolation.hpp"
#include "hopf/morphism.hpp"
#include "hopf/ode.hpp"
#include "hopf/profile.hpp"
#include "hopf/winding.hpp"

namespace hopf {

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    for (char& ch : out) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    return out;
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

template <class T>
T parse_number(std::string_view key, std::string_view text) {
    text = trim(text);
    T value{};
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size() || text.empty())
        throw InvalidArgument("invalid value '" + std::string(text) + "' for " + std::string(key));
    if constexpr (std::is_floating_point_v<T>)
        if (!std::isfinite(value)) throw InvalidArgument("non-finite value for " + std::string(key));
    return value;
}

template <class T>
std::vector<T> parse_list(std::string_view key, std::string_view text) {
    std::vector<T> out;
    if (trim(text).empty()) return out;
    for (auto part : split(text, ',')) out.push_back(parse_number<T>(key, part));
    return out;
}

template <class T, std::size_t N>
std::array<T, N> parse_fixed(std::string_view key, std::string_view text) {
    const auto v = parse_list<T>(key, text);
    if (v.size() != N)
        throw InvalidArgument(std::string(key) + " needs exactly " + std::to_string(N) + " comma-separated values");
    std::array<T, N> out{};
    std::copy(v.begin(), v.end(), out.begin());
    return out;
}

bool parse_bool(std::string_view key, std::string_view text) {
    const std::string v = lower(trim(text));
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw InvalidArgument("invalid boolean '" + v + "' for " + std::string(key));
}

// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
double unit_uniform(std::mt19937_64& gen) { return static_cast<double>(gen() >> 11) * 0x1p-53; }

double max_abs(double acc, double x) { return std::isfinite(x) ? std::max(acc, std::abs(x)) : acc; }

Json decimal_array(const std::vector<double>& v) {
    Json out = Json::array();
    for (double x : v) {
        if (std::isfinite(x)) out.push_back(x);
        else out.push_back(nullptr);
    }
    return out;
}

std::string annotate(const Error& e, Branch b, double s) {
    return std::string(e.what()) + " [branch " + std::string(to_string(b)) + ", s = " + format_shortest(s) + "]";
}

// Re-throws numeric failures with the branch and s they occurred at.
template <class F>
auto at_point(Branch b, double s, F&& f) {
    try {
        return f();
    } catch (const ToleranceNotMet& e) {
        throw ToleranceNotMet(annotate(e, b, s));
    } catch (const StepUnderflow& e) {
        throw StepUnderflow(annotate(e, b, s));
    } catch (const SingularLocus& e) {
        throw SingularLocus(annotate(e, b, s));
    } catch (const OutOfInterval& e) {
        throw OutOfInterval(annotate(e, b, s));
    }
}

double signed_wrap(double x) {
    const double w = wrap_angle(x);
    return w > kPi ? w - kTwoPi : w;
}

Json hex_value(double x) { return format_hex(x); }
double read_hex(const Json& j) { return j.is_string() ? parse_hex(j.get<std::string>()) : j.get<double>(); }

// ---- verify ----------------------------------------------------------------

Json boundary_json(const BoundaryCertificate& cert) {
    auto end_json = [](const EndCertificate& end) {
        Json probes = Json::array();
        for (const auto& p : end.probes) {
            Json probe;
            probe["eps"] = p.eps;
            probe["s"] = p.s;
            probe["alpha"] = p.alpha;
            probe["distance"] = p.distance;
            probe["evaluated"] = p.evaluated;
            probe["hex"] = {{"alpha", hex_value(p.alpha)}, {"distance", hex_value(p.distance)}};
            probes.push_back(std::move(probe));
        }
        Json j;
        j["endpoint"] = end.endpoint;
        j["limit"] = end.limit;
        j["probes"] = std::move(probes);
        j["monotone"] = end.monotone;
        j["in_window"] = end.in_window;
        j["final_distance"] = end.final_distance;
        return j;
    };
    Json j;
    j["lower"] = end_json(cert.lower);
    j["upper"] = end_json(cert.upper);
    j["passed"] = cert.passed();
    return j;
}

struct SeriesInput {
    Branch branch;
    double c;
};

Json verify_series(const RunConfig& config, const EllipsoidParams& params, const WindingNumbers& k,
                   std::shared_ptr<const QuadratureTable> table, SeriesInput item) {
    const Interval interval{item.branch};
    const bool constant = params.has_constant_h();
    const Profile closed = Profile::closed_form(table, item.c);
    const Profile profile = (config.analytic && constant) ? Profile::constant_h(params, item.branch, item.c) : closed;
    const MapSpec spec(params, k, profile);

    const auto grid = interior_grid(interval, config.grid_n, config.eps_interior);
    std::vector<double> alpha, alpha_prime, harm, prime, dil;
    double constant_sup = 0.0;
    std::optional<Profile> analytic;
    if (constant) analytic = Profile::constant_h(params, item.branch, item.c);

    for (double s : grid) {
        at_point(item.branch, s, [&] {
            const ProfileJet j = profile.jet(s);
            alpha.push_back(j.alpha);
            alpha_prime.push_back(j.alpha_prime);
            harm.push_back(harmonicity_residual(params, k, profile, s));
            double p = std::numeric_limits<double>::quiet_NaN();
            try {
                p = prime_integral_residual(params, profile, s);
            } catch (const PoleValue&) {
            }
            prime.push_back(p);
            dil.push_back(dilation_squared(spec, s, j.alpha));
            if (analytic) constant_sup = std::max(constant_sup, std::abs(closed.alpha(s) - analytic->alpha(s)));
            return 0;
        });
    }

    const double alpha_base = profile.alpha(interval.base());
    Json j;
    j["branch"] = std::string(to_string(item.branch));
    j["c"] = item.c;
    j["form"] = std::string(to_string(profile.form()));
    j["alpha_at_base"] = alpha_base;
    j["columns"] = {{"s", decimal_array(grid)},
                    {"alpha", decimal_array(alpha)},
                    {"alpha_prime", decimal_array(alpha_prime)},
                    {"harmonicity", decimal_array(harm)},
                    {"prime_integral", decimal_array(prime)},
                    {"dilation2", decimal_array(dil)}};
    j["hex"] = {{"c", hex_value(item.c)},
                {"alpha_at_base", hex_value(alpha_base)},
                {"s", hex_array(grid)},
                {"alpha", hex_array(alpha)},
                {"alpha_prime", hex_array(alpha_prime)},
                {"harmonicity", hex_array(harm)},
                {"prime_integral", hex_array(prime)},
                {"dilation2", hex_array(dil)}};
    double mh = 0.0, mp = 0.0;
    for (double x : harm) mh = max_abs(mh, x);
    for (double x : prime) mp = max_abs(mp, x);
    j["summary"] = {{"max_harmonicity", mh},
                    {"max_prime_integral", mp},
                    {"min_alpha_prime", alpha_prime.empty() ? 0.0 : *std::min_element(alpha_prime.begin(), alpha_prime.end())}};
    if (analytic) j["constant_h"] = {{"A", analytic->A()}, {"sup", constant_sup}, {"sup_hex", hex_value(constant_sup)}};
    j["boundary"] = at_point(item.branch, interval.lo(), [&] { return boundary_json(boundary_certificate(profile)); });
    return j;
}

Json identity_sweep(const RunConfig& config, const EllipsoidParams& params, const WindingNumbers& k) {
    std::mt19937_64 gen(config.seed);
    double d_pair = 0.0, g_pair = 0.0, norm = 0.0, variety = 0.0;
    int n = 0;
    if (!config.branches.empty()) {
        for (; n < config.identity_samples; ++n) {
            const Interval iv{config.branches[static_cast<std::size_t>(gen() % config.branches.size())]};
            const double s = iv.lo() + config.eps_interior +
                             unit_uniform(gen) * (iv.hi() - iv.lo() - 2.0 * config.eps_interior);
            const double alpha = unit_uniform(gen) * 2.0 * kTwoPi;

            const double dg = coeff_D_general(params, s), ds = coeff_D_simplified(params, s);
            d_pair = std::max(d_pair, std::abs(dg - ds) / std::max({1.0, std::abs(dg), std::abs(ds)}));
            const double gg = coeff_G_general(params, k, s, alpha), gs = coeff_G_simplified(params, k, s, alpha);
            g_pair = std::max(g_pair, std::abs(gg - gs) / std::max({1.0, std::abs(gg), std::abs(gs)}));

            const auto r = angular_rates(params, k, s);
            double y2 = 0.0;
            for (double x : r) y2 += x * x;
            const double sin4 = std::sin(4.0 * s);
            norm = std::max(norm, std::abs(y2 * sin4 * sin4 - 16.0) / 16.0);
        }
    }
    const double scale = std::max(1.0, params.sum_of_squares());
    for (int i = 0; i < config.variety_samples; ++i) {
        std::array<double, 4> theta{};
        for (double& t : theta) t = unit_uniform(gen) * kTwoPi;
        const JoinCoordinate w(theta, unit_uniform(gen) * kPi);
        const AmbientPoint p = embed(params, w);
        for (double r : variety_residuals(params, p)) variety = std::max(variety, std::abs(r) / scale);
        variety = std::max(variety, std::abs(ellipsoid_residual(params, p)) / scale);
    }
    Json j;
    j["samples"] = n;
    j["variety_samples"] = config.variety_samples;
    j["d_pair"] = d_pair;
    j["g_pair"] = g_pair;
    j["horizontal_norm"] = norm;
    j["variety"] = variety;
    j["hex"] = {{"d_pair", hex_value(d_pair)},
                {"g_pair", hex_value(g_pair)},
                {"horizontal_norm", hex_value(norm)},
                {"variety", hex_value(variety)}};
    return j;
}

// ---- sweep -----------------------------------------------------------------

struct EndSummary {
    double s, alpha, expected, distance;
};

Json end_json(const EndSummary& e) {
    Json j;
    j["s"] = e.s;
    j["alpha"] = e.alpha;
    j["expected_limit"] = e.expected;
    j["nearest_limit"] = std::round(e.alpha / kPi) * kPi;
    j["distance"] = e.distance;
    j["alpha_hex"] = hex_value(e.alpha);
    return j;
}

// Relative mismatch between |dφ(y/|y|)|² and |dφ(e5)|²; valid for any a, k.
double relative_conformality(const EllipsoidParams& params, const WindingNumbers& k, double s, double alpha,
                             double alpha_prime) {
    const auto r = angular_rates(params, k, s);
    double y2 = 0.0;
    for (double x : r) y2 += x * x;
    const double sa = std::sin(alpha);
    const double horizontal = sa * sa * y2;
    const double v = alpha_prime / h(params, s);
    const double total = horizontal + v * v;
    return total > 0.0 ? std::abs(horizontal - v * v) / total : 0.0;
}

constexpr double kConformalTol = 1e-6;
constexpr double kApproachTol = 0.1;
constexpr double kClosedFormTol = 1e-6;

Json sweep_branch(const RunConfig& config, const EllipsoidParams& params, const WindingNumbers& k, Branch branch,
                  double c, bool regime) {
    const Interval iv{branch};
    const double base = iv.base();
    const double alpha0 = alpha_from_exponent(iv, std::log(c));
    const auto r = angular_rates(params, k, base);
    double y2 = 0.0;
    for (double x : r) y2 += x * x;
    const double reference = h(params, base) * std::sqrt(y2) * std::abs(std::sin(alpha0));

    std::shared_ptr<const QuadratureTable> table;
    if (regime) table = std::make_shared<const QuadratureTable>(params, iv, config.tol.quad);

    Json cells = Json::array();
    for (double m : config.slopes) {
        Json cell;
        cell["multiplier"] = m;
        cell["slope"] = m * reference;
        try {
            const Trajectory t = integrate_span(params, k, base, alpha0, m * reference, iv.lo() + config.eps_interior,
                                                iv.hi() - config.eps_interior, config.step_tol);
            bool in_window = true;
            for (double a : t.alpha)
                if (!(a > iv.alpha_lo() && a < iv.alpha_hi())) in_window = false;
            const EndSummary lo{t.s.front(), t.alpha.front(), iv.alpha_lo(), std::abs(t.alpha.front() - iv.alpha_lo())};
            const EndSummary hi{t.s.back(), t.alpha.back(), iv.alpha_hi(), std::abs(t.alpha.back() - iv.alpha_hi())};
            double conformal = 0.0;
            for (std::size_t i = 0; i < t.s.size(); ++i)
                if (std::abs(t.s[i] - base) <= 0.25 * kQuarterPi)
                    conformal = std::max(conformal,
                                         relative_conformality(params, k, t.s[i], t.alpha[i], t.alpha_prime[i]));

            cell["status"] = "ok";
            cell["steps"] = t.s.size();
            cell["monotone"] = t.monotone();
            cell["in_window"] = in_window;
            cell["lower"] = end_json(lo);
            cell["upper"] = end_json(hi);
            cell["approaches_limits"] = in_window && lo.distance < kApproachTol && hi.distance < kApproachTol;
            cell["conformality"] = conformal;
            cell["conformal"] = conformal < kConformalTol;
            if (table) {
                const Profile closed = Profile::closed_form(table, c);
                double sup = 0.0;
                for (std::size_t i = 0; i < t.s.size(); ++i)
                    sup = std::max(sup, std::abs(t.alpha[i] - closed.alpha(t.s[i])));
                cell["closed_form_sup"] = sup;
                cell["reproduces_closed_form"] = sup < kClosedFormTol;
            }
        } catch (const StepUnderflow& e) {
            cell["status"] = "step_underflow";
            cell["message"] = e.what();
            cell["conformal"] = false;
        }
        cells.push_back(std::move(cell));
    }

    Json j;
    j["branch"] = std::string(to_string(branch));
    j["c"] = c;
    j["base_s"] = base;
    j["alpha0"] = alpha0;
    j["reference_slope"] = reference;
    j["cells"] = std::move(cells);
    return j;
}

// ---- fibers ----------------------------------------------------------------

// Profile value and target phase on `branch` for the geometric point (γ, t).
std::pair<double, double> unfold(Branch branch, double gamma, double t) {
    switch (branch) {
        case Branch::Q5: return {t, gamma};
        case Branch::B2: return {kTwoPi - t, gamma + kPi};
        case Branch::B3: return {kTwoPi + t, gamma};
        case Branch::B4: return {2.0 * kTwoPi - t, gamma + kPi};
    }
    return {t, gamma};
}

double invert_profile(const Profile& profile, double target) {
    auto [lo, hi] = profile.domain();
    const double a_lo = profile.alpha(lo), a_hi = profile.alpha(hi);
    if (!(target > a_lo && target < a_hi))
        throw NoPreimage("no s in the " + std::string(to_string(profile.branch())) + " interval has alpha(s) = " +
                         format_shortest(target));
    for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (profile.alpha(mid) < target ? lo : hi) = mid;
    }
    return std::abs(profile.alpha(lo) - target) <= std::abs(profile.alpha(hi) - target) ? lo : hi;
}

}  // namespace

// ---- configuration ---------------------------------------------------------

std::string_view to_string(Mode m) {
    switch (m) {
        case Mode::Verify: return "verify";
        case Mode::Solve: return "solve";
        case Mode::Sweep: return "sweep";
        case Mode::Q3: return "q3";
        case Mode::Fibers: return "fibers";
    }
    return "?";
}

Mode mode_from_string(std::string_view name) {
    const std::string n = lower(trim(name));
    for (Mode m : {Mode::Verify, Mode::Solve, Mode::Sweep, Mode::Q3, Mode::Fibers})
        if (n == to_string(m)) return m;
    throw InvalidArgument("unknown mode '" + n + "'");
}

void apply_setting(RunConfig& cfg, std::string_view raw_key, std::string_view value) {
    const std::string key = lower(trim(raw_key));
    if (key == "mode") cfg.mode = mode_from_string(value);
    else if (key == "a") cfg.a = parse_fixed<double, 4>(key, value);
    else if (key == "k") cfg.k = parse_fixed<int, 4>(key, value);
    else if (key == "c") cfg.c = parse_list<double>(key, value);
    else if (key == "grid") cfg.grid_n = parse_number<int>(key, value);
    else if (key == "eps") cfg.eps_interior = parse_number<double>(key, value);
    else if (key == "tol-quad") cfg.tol.quad = parse_number<double>(key, value);
    else if (key == "tol-ode") cfg.tol.ode = parse_number<double>(key, value);
    else if (key == "tol-first-order") cfg.tol.first_order = parse_number<double>(key, value);
    else if (key == "tol-id") cfg.tol.identity = parse_number<double>(key, value);
    else if (key == "branches") {
        cfg.branches.clear();
        if (!trim(value).empty())
            for (auto part : split(value, ',')) cfg.branches.push_back(branch_from_string(part));
    } else if (key == "shared-c") cfg.shared_c = parse_bool(key, value);
    else if (key == "per-branch-c") cfg.shared_c = !parse_bool(key, value);
    else if (key == "analytic") cfg.analytic = parse_bool(key, value);
    else if (key == "out") cfg.out = std::string(trim(value));
    else if (key == "identity-samples") cfg.identity_samples = parse_number<int>(key, value);
    else if (key == "variety-samples") cfg.variety_samples = parse_number<int>(key, value);
    else if (key == "seed") cfg.seed = parse_number<std::uint64_t>(key, value);
    else if (key == "slopes") cfg.slopes = parse_list<double>(key, value);
    else if (key == "step-tol") cfg.step_tol = parse_number<double>(key, value);
    else if (key == "ab") cfg.ab = parse_fixed<double, 2>(key, value);
    else if (key == "kl") cfg.kl = parse_fixed<int, 2>(key, value);
    else if (key == "profile") cfg.profile_csv = std::string(trim(value));
    else if (key == "gamma") cfg.gamma = parse_number<double>(key, value);
    else if (key == "t") cfg.t = parse_number<double>(key, value);
    else if (key == "samples") cfg.fiber_samples = parse_number<int>(key, value);
    else throw InvalidArgument("unknown configuration key '" + key + "'");
}

void apply_config_file(RunConfig& cfg, const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open config file " + path.string());
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view view = line;
        if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
        view = trim(view);
        if (view.empty()) continue;
        const auto eq = view.find('=');
        if (eq == std::string_view::npos)
            throw InvalidArgument(path.string() + ":" + std::to_string(lineno) + ": expected key = value");
        apply_setting(cfg, view.substr(0, eq), view.substr(eq + 1));
    }
}

void RunConfig::validate() const {
    (void)EllipsoidParams(a);
    (void)WindingNumbers(k);
    if (grid_n < 16) throw InvalidArgument("grid must have at least 16 points");
    if (!(eps_interior > 0.0 && eps_interior < kPi / 16.0)) throw InvalidArgument("eps must lie in (0, pi/16)");
    for (double x : {tol.quad, tol.ode, tol.first_order, tol.identity, step_tol})
        if (!(x > 0.0)) throw InvalidArgument("tolerances must be positive");
    for (double x : c)
        if (!(x > 0.0)) throw InvalidArgument("integration constants c must be positive");
    if (c.empty() && !branches.empty() && mode != Mode::Q3) throw InvalidArgument("at least one c is required");
    if (!shared_c && c.size() != branches.size())
        throw InvalidArgument("per-branch c needs one value per requested branch");
    for (std::size_t i = 0; i < branches.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (branches[i] == branches[j]) throw InvalidArgument("branch listed twice");
    if (identity_samples < 0 || variety_samples < 0) throw InvalidArgument("sample counts must be non-negative");
    if (fiber_samples < 1) throw InvalidArgument("fiber samples must be positive");
    if (!(t >= 0.0 && t <= kPi)) throw InvalidArgument("colatitude t must lie in [0, pi]");
    if (!(ab[0] > 0.0 && ab[1] > 0.0)) throw InvalidArgument("Q3 semi-axes must be positive");
    if (mode == Mode::Q3 && profile_csv.empty()) throw InvalidArgument("q3 needs a profile CSV");
}

std::vector<std::pair<Branch, double>> RunConfig::work_items() const {
    std::vector<std::pair<Branch, double>> items;
    for (std::size_t i = 0; i < branches.size(); ++i) {
        if (shared_c)
            for (double cv : c) items.emplace_back(branches[i], cv);
        else
            items.emplace_back(branches[i], c[i]);
    }
    return items;
}

Json config_echo(const RunConfig& cfg) {
    Json j;
    j["mode"] = std::string(to_string(cfg.mode));
    j["a"] = cfg.a;
    j["k"] = cfg.k;
    j["c"] = cfg.c;
    j["grid"] = cfg.grid_n;
    j["eps"] = cfg.eps_interior;
    j["tolerances"] = {{"quad", cfg.tol.quad},
                       {"ode", cfg.tol.ode},
                       {"first_order", cfg.tol.first_order},
                       {"identity", cfg.tol.identity}};
    Json branches = Json::array();
    for (Branch b : cfg.branches) branches.push_back(std::string(to_string(b)));
    j["branches"] = std::move(branches);
    j["shared_c"] = cfg.shared_c;
    j["analytic"] = cfg.analytic;
    j["seed"] = cfg.seed;
    switch (cfg.mode) {
        case Mode::Verify:
            j["identity_samples"] = cfg.identity_samples;
            j["variety_samples"] = cfg.variety_samples;
            break;
        case Mode::Sweep:
            j["slopes"] = cfg.slopes;
            j["step_tol"] = cfg.step_tol;
            break;
        case Mode::Q3:
            j["ab"] = cfg.ab;
            j["kl"] = cfg.kl;
            j["profile"] = cfg.profile_csv;
            break;
        case Mode::Fibers:
            j["gamma"] = cfg.gamma;
            j["t"] = cfg.t;
            j["samples"] = cfg.fiber_samples;
            break;
        case Mode::Solve: break;
    }
    return j;
}

std::vector<double> interior_grid(const Interval& interval, int n, double eps) {
    if (n < 2) throw InvalidArgument("grid needs at least two points");
    const double lo = interval.lo() + eps, hi = interval.hi() - eps;
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = lo + (hi - lo) * (static_cast<double>(i) / (n - 1));
    out.back() = hi;
    return out;
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
    out << '\n';
    const std::size_t rows = columns.empty() ? 0 : columns.front().size();
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << format_shortest(columns[c][r]);
        out << '\n';
    }
    if (!out) throw std::runtime_error("error writing " + path.string());
}

// ---- reports ---------------------------------------------------------------

bool Report::passed() const {
    if (!body.contains("verdicts")) return true;
    for (const auto& [name, v] : body["verdicts"].items())
        if (!v.get<bool>()) return false;
    return true;
}

Json recompute_verdicts(const Json& report) {
    const Json& tol = report.at("config").at("tolerances");
    const double tol_ode = tol.at("ode").get<double>();
    const double tol_first = tol.at("first_order").get<double>();
    const double tol_id = tol.at("identity").get<double>();
    const double tol_quad = tol.at("quad").get<double>();

    bool harmonic = true, prime = true, monotone = true, window = true, boundary = true, constant = true,
         constant_present = false, base_ok = true;
    for (const auto& series : report.at("branches")) {
        const Interval iv{branch_from_string(series.at("branch").get<std::string>())};
        const Json& hx = series.at("hex");
        const auto alpha = parse_hex_array(hx.at("alpha"));
        const auto alpha_prime = parse_hex_array(hx.at("alpha_prime"));
        for (double x : parse_hex_array(hx.at("harmonicity")))
            if (!(std::abs(x) < tol_ode)) harmonic = false;
        for (double x : parse_hex_array(hx.at("prime_integral")))
            if (std::isfinite(x) && !(std::abs(x) < tol_first)) prime = false;
        for (std::size_t i = 0; i < alpha.size(); ++i) {
            if (!(alpha_prime[i] > 0.0)) monotone = false;
            if (i > 0 && !(alpha[i] > alpha[i - 1])) monotone = false;
            if (!(alpha[i] > iv.alpha_lo() && alpha[i] < iv.alpha_hi())) window = false;
        }
        const double c = read_hex(hx.at("c"));
        const double base_alpha = read_hex(hx.at("alpha_at_base"));
        if (!(std::abs(std::abs(std::tan(0.5 * base_alpha)) - c) <= tol_id * std::max(1.0, c))) base_ok = false;

        for (const char* side : {"lower", "upper"}) {
            const Json& ej = series.at("boundary").at(side);
            EndCertificate end;
            end.limit = ej.at("limit").get<double>();
            for (const auto& p : ej.at("probes")) {
                BoundaryProbe probe;
                probe.eps = p.at("eps").get<double>();
                probe.s = p.at("s").get<double>();
                probe.alpha = read_hex(p.at("hex").at("alpha"));
                probe.distance = read_hex(p.at("hex").at("distance"));
                probe.evaluated = p.at("evaluated").get<bool>();
                end.probes.push_back(probe);
            }
            recompute_certificate_flags(end, iv.alpha_lo(), iv.alpha_hi());
            if (!(end.monotone && end.in_window)) boundary = false;
        }
        if (series.contains("constant_h")) {
            constant_present = true;
            if (!(read_hex(series.at("constant_h").at("sup_hex")) < 10.0 * tol_quad)) constant = false;
        }
    }

    const Json& id = report.at("identities").at("hex");
    Json v;
    v["harmonicity"] = harmonic;
    v["prime_integral"] = prime;
    v["monotone"] = monotone;
    v["branch_window"] = window;
    v["boundary"] = boundary;
    v["integration_constant"] = base_ok;
    v["simplification_D"] = read_hex(id.at("d_pair")) < tol_id;
    v["simplification_G"] = read_hex(id.at("g_pair")) < tol_id;
    v["horizontal_norm"] = read_hex(id.at("horizontal_norm")) < tol_id;
    v["variety"] = read_hex(id.at("variety")) < tol_id;
    if (constant_present) v["constant_h"] = constant;
    return v;
}

Report cmd_verify(const RunConfig& config) {
    config.validate();
    const EllipsoidParams params(config.a);
    const WindingNumbers k(config.k);
    if (!is_morphism_regime(params, k))
        throw NotMorphismRegime(
            "verify requires a_i = |k_i| for every i; only then is the map a harmonic morphism "
            "(a = " + config_echo(config)["a"].dump() + ", k = " + config_echo(config)["k"].dump() + ")");

    // Tables are built up front, one per branch, then shared read-only by the workers.
    std::vector<std::shared_ptr<const QuadratureTable>> tables(kAllBranches.size());
    for (Branch b : config.branches)
        tables[static_cast<std::size_t>(b)] = std::make_shared<const QuadratureTable>(params, Interval{b}, config.tol.quad);

    const auto items = config.work_items();
    std::vector<std::future<Json>> futures;
    futures.reserve(items.size());
    for (const auto& [branch, c] : items)
        futures.push_back(std::async(std::launch::async, verify_series, std::cref(config), std::cref(params),
                                     std::cref(k), tables[static_cast<std::size_t>(branch)], SeriesInput{branch, c}));
    Json identities = identity_sweep(config, params, k);

    Json series = Json::array();
    for (auto& f : futures) series.push_back(f.get());

    Report report;
    report.body["mode"] = "verify";
    report.body["config"] = config_echo(config);
    report.body["morphism_regime"] = true;
    report.body["constant_h"] = params.has_constant_h();
    report.body["identities"] = std::move(identities);
    report.body["branches"] = std::move(series);
    report.body["verdicts"] = recompute_verdicts(report.body);
    report.body["passed"] = report.passed();
    return report;
}

std::vector<std::filesystem::path> cmd_solve(const RunConfig& config) {
    config.validate();
    const EllipsoidParams params(config.a);
    if (config.analytic && !params.has_constant_h())
        throw InvalidArgument("--analytic needs a1 = a3 and a2 = a4 (constant h)");
    const std::filesystem::path dir = config.out.empty() ? std::filesystem::path(".") : std::filesystem::path(config.out);
    std::filesystem::create_directories(dir);

    std::vector<std::shared_ptr<const QuadratureTable>> tables(kAllBranches.size());
    if (!config.analytic)
        for (Branch b : config.branches)
            tables[static_cast<std::size_t>(b)] =
                std::make_shared<const QuadratureTable>(params, Interval{b}, config.tol.quad);

    auto solve_one = [&](Branch branch, double c) {
        const Interval iv{branch};
        const Profile profile = config.analytic ? Profile::constant_h(params, branch, c)
                                                : Profile::closed_form(tables[static_cast<std::size_t>(branch)], c);
        const auto grid = interior_grid(iv, config.grid_n, config.eps_interior);
        std::vector<double> alpha, alpha_prime;
        for (double s : grid) {
            const ProfileJet j = at_point(branch, s, [&] { return profile.jet(s); });
            alpha.push_back(j.alpha);
            alpha_prime.push_back(j.alpha_prime);
        }
        const std::string stem = lower(to_string(branch)) + "_c" + format_shortest(c);
        const auto csv = dir / (stem + ".csv");
        const auto json_path = dir / (stem + ".json");
        write_csv(csv, {"s", "alpha", "alpha_prime"}, {grid, alpha, alpha_prime});
        Json j;
        j["config"] = config_echo(config);
        j["profile"] = to_json(profile);
        j["columns"] = {{"s", hex_array(grid)}, {"alpha", hex_array(alpha)}, {"alpha_prime", hex_array(alpha_prime)}};
        std::ofstream out(json_path);
        if (!out) throw std::runtime_error("cannot write " + json_path.string());
        out << j.dump(2) << '\n';
        return std::vector<std::filesystem::path>{json_path, csv};
    };

    const auto items = config.work_items();
    std::vector<std::future<std::vector<std::filesystem::path>>> futures;
    for (const auto& [branch, c] : items) futures.push_back(std::async(std::launch::async, solve_one, branch, c));
    std::vector<std::filesystem::path> written;
    for (auto& f : futures) {
        auto paths = f.get();
        written.insert(written.end(), paths.begin(), paths.end());
    }
    return written;
}

Report cmd_sweep(const RunConfig& config) {
    config.validate();
    const EllipsoidParams params(config.a);
    const WindingNumbers k(config.k);
    const bool regime = is_morphism_regime(params, k);

    std::vector<std::future<Json>> futures;
    for (std::size_t i = 0; i < config.branches.size(); ++i) {
        const double c = config.shared_c ? config.c.front() : config.c[i];
        futures.push_back(std::async(std::launch::async, sweep_branch, std::cref(config), std::cref(params),
                                     std::cref(k), config.branches[i], c, regime));
    }
    Json branches = Json::array();
    for (auto& f : futures) branches.push_back(f.get());

    Report report;
    report.body["mode"] = "sweep";
    report.body["config"] = config_echo(config);
    report.body["morphism_regime"] = regime;
    report.body["branches"] = std::move(branches);
    return report;
}

Report cmd_q3(const RunConfig& config) {
    config.validate();
    std::ifstream in(config.profile_csv);
    if (!in) throw InvalidArgument("cannot open profile CSV " + config.profile_csv);
    std::vector<std::vector<double>> cols;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        const auto fields = split(line, ',');
        if (first) {
            first = false;
            double probe = 0.0;
            const auto res = std::from_chars(fields[0].data(), fields[0].data() + fields[0].size(), probe);
            if (res.ec != std::errc()) continue;  // header row
        }
        if (cols.empty()) cols.resize(std::min<std::size_t>(fields.size(), 4));
        if (fields.size() < cols.size() || cols.size() < 2)
            throw InvalidArgument("profile CSV rows need columns s, alpha[, alpha_prime[, alpha_second]]");
        for (std::size_t c = 0; c < cols.size(); ++c) cols[c].push_back(parse_number<double>("profile CSV", fields[c]));
    }
    if (cols.empty() || cols[0].size() < 3) throw InvalidArgument("profile CSV needs at least three rows");

    const auto& s = cols[0];
    const auto& alpha = cols[1];
    std::optional<CubicSpline> spline;
    if (cols.size() < 4) spline.emplace(s, alpha);
    const auto [a, b] = config.ab;
    const auto [kk, l] = config.kl;
    std::vector<double> residual;
    double worst = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const Jet j = spline ? (*spline)(s[i]) : Jet{alpha[i], 0.0, 0.0};
        const double d1 = cols.size() >= 3 ? cols[2][i] : j.d1;
        const double d2 = cols.size() >= 4 ? cols[3][i] : j.d2;
        residual.push_back(q3_residual(a, b, kk, l, alpha[i], d1, d2, s[i]));
        worst = max_abs(worst, residual.back());
    }
    if (!config.out.empty()) write_csv(config.out + ".csv", {"s", "residual"}, {s, residual});

    Report report;
    report.body["mode"] = "q3";
    report.body["config"] = config_echo(config);
    report.body["ratio_regime"] = q3_ratio_regime(a, b, kk, l);
    report.body["rows"] = s.size();
    report.body["derivatives"] = cols.size() >= 4 ? "supplied" : "spline";
    report.body["max_residual"] = worst;
    report.body["max_residual_hex"] = format_hex(worst);
    report.body["verdicts"] = {{"residual", worst < config.tol.ode}};
    return report;
}

JoinCoordinate recover_join(const EllipsoidParams& params, const AmbientPoint& p) {
    std::array<double, 4> q{};
    for (std::size_t i = 0; i < 4; ++i) q[i] = p.modulus_squared(i) / (params[i] * params[i]);
    // q3 - q1 = cos 2s and q2 - q4 = sin 2s.
    double s = 0.5 * std::atan2(q[1] - q[3], q[2] - q[0]);
    if (s < 0.0) s += kPi;
    const double tau[4] = {std::sin(s), std::sin(s + kQuarterPi), std::cos(s), std::cos(s + kQuarterPi)};
    std::array<double, 4> theta{};
    for (std::size_t i = 0; i < 4; ++i) theta[i] = p.phase(i) + (tau[i] < 0.0 ? kPi : 0.0);
    return JoinCoordinate(theta, s);
}

Report cmd_fibers(const RunConfig& config) {
    config.validate();
    const EllipsoidParams params(config.a);
    const WindingNumbers k(config.k);
    const int n = config.fiber_samples;

    std::size_t pivot = 4;
    for (std::size_t i = 0; i < 4; ++i)
        if (k[i] != 0 && (pivot == 4 || std::abs(k[i]) < std::abs(k[pivot]))) pivot = i;

    Json branches = Json::array();
    bool all_ok = true;
    for (std::size_t bi = 0; bi < config.branches.size(); ++bi) {
        const Branch branch = config.branches[bi];
        const double c = config.shared_c ? config.c.front() : config.c[bi];
        const Profile profile = Profile::closed_form(params, branch, c, config.tol.quad);
        const MapSpec spec(params, k, profile);
        const auto [target_alpha, phase] = unfold(branch, config.gamma, config.t);
        const double s_star = invert_profile(profile, target_alpha);

        std::vector<std::vector<double>> columns(8);
        double map_error = 0.0, variety = 0.0;
        const double scale = std::max(1.0, params.sum_of_squares());
        for (int i0 = 0; i0 < n; ++i0)
            for (int i1 = 0; i1 < n; ++i1)
                for (int i2 = 0; i2 < n; ++i2) {
                    const int idx[3] = {i0, i1, i2};
                    std::array<double, 4> theta{};
                    double partial = 0.0;
                    for (std::size_t i = 0, f = 0; i < 4; ++i) {
                        if (i == pivot) continue;
                        theta[i] = kTwoPi * idx[f++] / n;
                        partial += k[i] * theta[i];
                    }
                    theta[pivot] = (phase - partial) / k[pivot];
                    const AmbientPoint p = embed(params, JoinCoordinate(theta, s_star));
                    for (std::size_t col = 0; col < 8; ++col) columns[col].push_back(p.x[col]);

                    for (double r : variety_residuals(params, p)) variety = std::max(variety, std::abs(r) / scale);
                    variety = std::max(variety, std::abs(ellipsoid_residual(params, p)) / scale);

                    const SpherePoint image = evaluate(spec, recover_join(params, p)).fold();
                    double err = std::abs(image.t() - config.t);
                    // γ is meaningless at the poles of the target.
                    if (std::sin(config.t) > 1e-12) err = std::max(err, std::abs(signed_wrap(image.gamma() - config.gamma)));
                    map_error = std::max(map_error, err);
                }

        const std::string name = "fiber_" + lower(to_string(branch)) + ".csv";
        if (!config.out.empty()) {
            std::filesystem::create_directories(config.out);
            write_csv(std::filesystem::path(config.out) / name, {"x1", "y1", "x2", "y2", "x3", "y3", "x4", "y4"},
                      columns);
        }
        const bool ok = map_error < 1e-9 && variety < 1e-12;
        all_ok = all_ok && ok;
        Json j;
        j["branch"] = std::string(to_string(branch));
        j["c"] = c;
        j["s"] = s_star;
        j["s_hex"] = format_hex(s_star);
        j["alpha"] = target_alpha;
        j["phase"] = wrap_angle(phase);
        j["pivot"] = pivot + 1;
        j["points"] = n * n * n;
        j["max_map_error"] = map_error;
        j["max_variety"] = variety;
        j["passed"] = ok;
        if (!config.out.empty()) j["file"] = name;
        branches.push_back(std::move(j));
    }

    Report report;
    report.body["mode"] = "fibers";
    report.body["config"] = config_echo(config);
    report.body["branches"] = std::move(branches);
    report.body["verdicts"] = {{"fibers", all_ok}};
    return report;
}

}  // namespace hopf
