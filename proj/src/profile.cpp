#include "hopf/profile.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hopf/errors.hpp"

namespace hopf {

std::string_view to_string(ProfileForm f) {
    switch (f) {
        case ProfileForm::ClosedForm: return "closed_form";
        case ProfileForm::ConstantH: return "constant_h";
        case ProfileForm::Grid: return "grid";
    }
    return "?";
}

namespace {

double checked_log_c(double c) {
    if (!(c > 0.0) || !std::isfinite(c)) throw InvalidArgument("integration constant c must be finite and positive");
    return std::log(c);
}

// Distances of α to the lower/upper ends of the branch window given the
// exponent L: (2 atan(e^{σL}), 2 atan(e^{-σL})).
std::pair<double, double> gaps_from_exponent(const Interval& interval, double L) {
    const double x = interval.sign() * L;
    return {2.0 * std::atan(std::exp(x)), 2.0 * std::atan(std::exp(-x))};
}

}  // namespace

double alpha_from_exponent(const Interval& interval, double L) {
    const auto [gap_lo, gap_hi] = gaps_from_exponent(interval, L);
    return gap_lo <= gap_hi ? interval.alpha_lo() + gap_lo : interval.alpha_hi() - gap_hi;
}

Profile::Profile(Interval interval, std::variant<Analytic, Sampled> data)
    : interval_(interval), data_(std::make_shared<const std::variant<Analytic, Sampled>>(std::move(data))) {}

Profile Profile::closed_form(const EllipsoidParams& params, Branch branch, double c, double tol) {
    return closed_form(std::make_shared<const QuadratureTable>(params, Interval{branch}, tol), c);
}

Profile Profile::closed_form(std::shared_ptr<const QuadratureTable> table, double c) {
    return closed_form_from_log_c(std::move(table), checked_log_c(c));
}

Profile Profile::closed_form_from_log_c(std::shared_ptr<const QuadratureTable> table, double log_c) {
    if (!table) throw InvalidArgument("closed-form profile needs a quadrature table");
    if (!std::isfinite(log_c)) throw InvalidArgument("log c must be finite");
    const Interval interval = table->branch();
    return Profile(interval, Analytic{log_c, std::move(table), 0.0});
}

Profile Profile::constant_h(const EllipsoidParams& params, Branch branch, double c) {
    if (!params.has_constant_h())
        throw InvalidArgument("constant-h profile needs a1 == a3 and a2 == a4");
    return constant_h_from_log_c(branch, std::hypot(params[0], params[1]), checked_log_c(c));
}

Profile Profile::constant_h_from_log_c(Branch branch, double A, double log_c) {
    if (!(A > 0.0) || !std::isfinite(A)) throw InvalidArgument("constant h value must be positive");
    if (!std::isfinite(log_c)) throw InvalidArgument("log c must be finite");
    return Profile(Interval{branch}, Analytic{log_c, nullptr, A});
}

namespace {

void validate_grid(const Interval& interval, const std::vector<double>& nodes, const std::vector<double>& values) {
    if (nodes.size() < 2 || nodes.size() != values.size())
        throw InvalidArgument("grid profile needs matching node/value arrays with at least two entries");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (!std::isfinite(nodes[i]) || !std::isfinite(values[i])) throw InvalidArgument("grid data must be finite");
        if (!interval.contains(nodes[i]))
            throw OutOfInterval("grid node " + num(nodes[i]) + " outside branch " +
                                std::string(to_string(interval.label)));
        if (i > 0 && !(nodes[i] > nodes[i - 1])) throw InvalidArgument("grid nodes must be strictly increasing");
        if (i > 0 && !(values[i] > values[i - 1]))
            throw NonMonotoneProfile("grid profile values must be strictly increasing (at s = " +
                                     num(nodes[i]) + ")");
    }
}

}  // namespace

Profile Profile::grid(Branch branch, std::vector<double> nodes, std::vector<double> values) {
    const Interval interval{branch};
    validate_grid(interval, nodes, values);
    Sampled data{std::move(nodes), std::move(values), {}, {}, std::nullopt, std::nullopt};
    data.spline.emplace(data.nodes, data.values);
    return Profile(interval, std::move(data));
}

Profile Profile::grid(Branch branch, std::vector<double> nodes, std::vector<double> values, std::vector<double> slopes,
                      std::vector<double> curvatures) {
    const Interval interval{branch};
    validate_grid(interval, nodes, values);
    Sampled data{std::move(nodes), std::move(values), std::move(slopes), std::move(curvatures), std::nullopt,
                 std::nullopt};
    data.hermite.emplace(data.nodes, data.values, data.slopes, data.curvatures);
    return Profile(interval, std::move(data));
}

ProfileForm Profile::form() const {
    if (const auto* a = std::get_if<Analytic>(data_.get())) return a->table ? ProfileForm::ClosedForm : ProfileForm::ConstantH;
    return ProfileForm::Grid;
}

double Profile::c() const { return std::exp(log_c()); }

double Profile::log_c() const {
    if (const auto* a = std::get_if<Analytic>(data_.get())) return a->log_c;
    throw InvalidArgument("grid profiles carry no integration constant");
}

double Profile::A() const {
    const auto* a = std::get_if<Analytic>(data_.get());
    if (!a || a->table) throw InvalidArgument("only constant-h profiles carry A");
    return a->A;
}

const QuadratureTable* Profile::table() const {
    if (const auto* a = std::get_if<Analytic>(data_.get())) return a->table.get();
    return nullptr;
}

std::span<const double> Profile::nodes() const {
    if (const auto* g = std::get_if<Sampled>(data_.get())) return g->nodes;
    return {};
}
std::span<const double> Profile::values() const {
    if (const auto* g = std::get_if<Sampled>(data_.get())) return g->values;
    return {};
}
std::span<const double> Profile::slopes() const {
    if (const auto* g = std::get_if<Sampled>(data_.get())) return g->slopes;
    return {};
}
std::span<const double> Profile::curvatures() const {
    if (const auto* g = std::get_if<Sampled>(data_.get())) return g->curvatures;
    return {};
}
bool Profile::has_derivative_data() const {
    const auto* g = std::get_if<Sampled>(data_.get());
    return g && g->hermite.has_value();
}

std::pair<double, double> Profile::domain() const {
    if (const auto* g = std::get_if<Sampled>(data_.get())) return {g->nodes.front(), g->nodes.back()};
    return {interval_.lo() + kSingularGuard, interval_.hi() - kSingularGuard};
}

bool Profile::defined_at(double s) const {
    const auto [lo, hi] = domain();
    return s >= lo && s <= hi;
}

void Profile::require_defined(double s) const {
    if (defined_at(s)) return;
    if (form() != ProfileForm::Grid && s >= interval_.lo() && s <= interval_.hi())
        throw SingularLocus("s = " + num(s) + " is within the singular guard of branch " +
                            std::string(to_string(interval_.label)));
    const auto [lo, hi] = domain();
    throw OutOfInterval("s = " + num(s) + " outside profile domain [" + num(lo) + ", " +
                        num(hi) + "] on branch " + std::string(to_string(interval_.label)));
}

Jet Profile::exponent_jet(const Analytic& a, double s) const {
    const double sin4 = std::sin(4.0 * s);
    const double cos4 = std::cos(4.0 * s);
    Jet L;
    if (a.table) {
        const EllipsoidParams& params = a.table->params();
        const double hs = h(params, s);
        L.value = a.log_c + a.table->integral(s);
        L.d1 = 4.0 * hs / sin4;
        L.d2 = 4.0 * h_prime(params, s) / sin4 - 16.0 * hs * cos4 / (sin4 * sin4);
    } else {
        const double I = (s == interval_.base()) ? 0.0 : a.A * std::log(std::abs(std::tan(2.0 * s)));
        L.value = a.log_c + I;
        L.d1 = 4.0 * a.A / sin4;
        L.d2 = -16.0 * a.A * cos4 / (sin4 * sin4);
    }
    return L;
}

double Profile::alpha(double s) const { return jet(s).alpha; }

ProfileJet Profile::jet(double s) const {
    require_defined(s);
    ProfileJet out;
    if (const auto* a = std::get_if<Analytic>(data_.get())) {
        const Jet L = exponent_jet(*a, s);
        out.alpha = alpha_from_exponent(interval_, L.value);
        // sin(2 atan e^L) = sech L, cos(2 atan e^L) = -tanh L; the offset is a multiple of 2π.
        out.sin_alpha = sign() / std::cosh(L.value);
        out.cos_alpha = -std::tanh(L.value);
        out.alpha_prime = out.sin_alpha * L.d1;
        out.alpha_second = out.sin_alpha * (L.d2 + L.d1 * L.d1 * out.cos_alpha);
        return out;
    }
    const auto& g = std::get<Sampled>(*data_);
    const Jet j = g.hermite ? (*g.hermite)(s) : (*g.spline)(s);
    out.alpha = j.value;
    out.alpha_prime = j.d1;
    out.alpha_second = j.d2;
    out.sin_alpha = std::sin(j.value);
    out.cos_alpha = std::cos(j.value);
    return out;
}

std::pair<double, double> Profile::window_gaps(double s) const {
    require_defined(s);
    if (const auto* a = std::get_if<Analytic>(data_.get())) return gaps_from_exponent(interval_, exponent_jet(*a, s).value);
    const double value = alpha(s);
    return {value - interval_.alpha_lo(), interval_.alpha_hi() - value};
}

double closed_form_alpha(Branch branch, double c, const EllipsoidParams& params, double s, double tol) {
    const Interval interval{branch};
    const double I = quadrature_I(params, interval, interval.base(), s, tol);
    return alpha_from_exponent(interval, checked_log_c(c) + I);
}

void recompute_certificate_flags(EndCertificate& end, double alpha_lo, double alpha_hi) {
    end.monotone = !end.probes.empty();
    end.in_window = !end.probes.empty();
    for (std::size_t i = 0; i < end.probes.size(); ++i) {
        const BoundaryProbe& p = end.probes[i];
        if (!p.evaluated) {
            end.monotone = end.in_window = false;
            continue;
        }
        // distance is the gap to this end of the window; the window has width π.
        if (!(p.distance > 0.0 && p.distance < alpha_hi - alpha_lo)) end.in_window = false;
        if (i > 0 && !(p.distance < end.probes[i - 1].distance)) end.monotone = false;
    }
    end.final_distance = end.probes.empty() ? 0.0 : end.probes.back().distance;
}

BoundaryCertificate boundary_certificate(const Profile& profile, std::span<const double> eps_list) {
    std::vector<double> eps(eps_list.begin(), eps_list.end());
    std::sort(eps.begin(), eps.end(), std::greater<>());

    const Interval& interval = profile.interval();
    BoundaryCertificate cert;
    cert.branch = interval.label;
    cert.lower.endpoint = interval.lo();
    cert.lower.limit = interval.alpha_lo();
    cert.upper.endpoint = interval.hi();
    cert.upper.limit = interval.alpha_hi();

    for (double e : eps) {
        BoundaryProbe lo{e, interval.lo() + e, 0.0, 0.0, false};
        BoundaryProbe hi{e, interval.hi() - e, 0.0, 0.0, false};
        if (profile.defined_at(lo.s)) {
            lo.alpha = profile.alpha(lo.s);
            lo.distance = profile.window_gaps(lo.s).first;
            lo.evaluated = true;
        }
        if (profile.defined_at(hi.s)) {
            hi.alpha = profile.alpha(hi.s);
            hi.distance = profile.window_gaps(hi.s).second;
            hi.evaluated = true;
        }
        cert.lower.probes.push_back(lo);
        cert.upper.probes.push_back(hi);
    }
    recompute_certificate_flags(cert.lower, interval.alpha_lo(), interval.alpha_hi());
    recompute_certificate_flags(cert.upper, interval.alpha_lo(), interval.alpha_hi());
    return cert;
}

}  // namespace hopf
