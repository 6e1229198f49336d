#include "hopf/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hopf/errors.hpp"

namespace hopf {

EllipsoidParams::EllipsoidParams(double a1, double a2, double a3, double a4)
    : EllipsoidParams(std::array<double, 4>{a1, a2, a3, a4}) {}

EllipsoidParams::EllipsoidParams(const std::array<double, 4>& a) : a_(a) {
    for (double v : a_) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw InvalidArgument("semi-axes must be finite and strictly positive, got " + num(v));
    }
}

double EllipsoidParams::sum_of_squares() const {
    double sum = 0.0;
    for (double v : a_) sum += v * v;
    return sum;
}

double wrap_angle(double theta) {
    double r = std::fmod(theta, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r >= kTwoPi) r = 0.0;
    return r;
}

JoinCoordinate::JoinCoordinate(const std::array<double, 4>& theta, double s) : s_(s) {
    if (!(s >= 0.0 && s <= kPi)) throw InvalidArgument("s must lie in [0, pi], got " + num(s));
    for (std::size_t i = 0; i < 4; ++i) {
        if (!std::isfinite(theta[i])) throw InvalidArgument("non-finite angle");
        theta_[i] = wrap_angle(theta[i]);
    }
}

JoinCoordinate JoinCoordinate::displaced(const std::array<double, 5>& delta) const {
    return JoinCoordinate({theta_[0] + delta[0], theta_[1] + delta[1], theta_[2] + delta[2], theta_[3] + delta[3]},
                          s_ + delta[4]);
}

double AmbientPoint::phase(std::size_t i) const { return wrap_angle(std::atan2(x[2 * i + 1], x[2 * i])); }

std::string_view to_string(Branch b) {
    switch (b) {
        case Branch::Q5: return "Q5";
        case Branch::B2: return "B2";
        case Branch::B3: return "B3";
        case Branch::B4: return "B4";
    }
    return "?";
}

Branch branch_from_string(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    if (lower == "q5") return Branch::Q5;
    if (lower == "b2") return Branch::B2;
    if (lower == "b3") return Branch::B3;
    if (lower == "b4") return Branch::B4;
    throw InvalidArgument("unknown branch '" + std::string(name) + "' (expected q5, b2, b3 or b4)");
}

double Interval::offset() const {
    static constexpr std::array<double, 4> offsets{0.0, kTwoPi, kTwoPi, 2.0 * kTwoPi};
    return offsets[static_cast<std::size_t>(index())];
}

double distance_to_singular_locus(double s) {
    double best = std::abs(s);
    for (int j = 1; j <= 4; ++j) best = std::min(best, std::abs(s - j * kQuarterPi));
    return best;
}

void require_interior(double s) {
    if (!(s >= 0.0 && s <= kPi)) throw InvalidArgument("s must lie in [0, pi], got " + num(s));
    if (distance_to_singular_locus(s) < kSingularGuard)
        throw SingularLocus("s = " + num(s) + " lies on a singular locus");
}

Branch branch_of(double s) {
    require_interior(s);
    const int j = std::clamp(static_cast<int>(std::floor(s / kQuarterPi)), 0, 3);
    return static_cast<Branch>(j);
}

AmbientPoint embed(const EllipsoidParams& params, const JoinCoordinate& w) {
    const double s = w.s();
    const std::array<double, 4> radius{params[0] * std::sin(s), params[1] * std::sin(s + kQuarterPi),
                                       params[2] * std::cos(s), params[3] * std::cos(s + kQuarterPi)};
    AmbientPoint p;
    for (std::size_t i = 0; i < 4; ++i) {
        p.x[2 * i] = radius[i] * std::cos(w.theta(i));
        p.x[2 * i + 1] = radius[i] * std::sin(w.theta(i));
    }
    return p;
}

namespace {

// h^2 in half-angle form; exactly a1^2 + a2^2 when a1 = a3, a2 = a4.
double h_squared(const EllipsoidParams& a, double s) {
    const double a1 = a[0] * a[0], a2 = a[1] * a[1], a3 = a[2] * a[2], a4 = a[3] * a[3];
    return 0.5 * (a1 + a2 + a3 + a4) + 0.5 * (a1 - a3) * std::cos(2.0 * s) - 0.5 * (a2 - a4) * std::sin(2.0 * s);
}

}  // namespace

double h(const EllipsoidParams& params, double s) { return std::sqrt(h_squared(params, s)); }

double h_prime(const EllipsoidParams& params, double s) {
    const double a1 = params[0] * params[0], a2 = params[1] * params[1];
    const double a3 = params[2] * params[2], a4 = params[3] * params[3];
    const double dh2 = (a3 - a1) * std::sin(2.0 * s) + (a4 - a2) * std::cos(2.0 * s);
    return dh2 / (2.0 * h(params, s));
}

std::array<double, 5> metric_diagonal(const EllipsoidParams& params, double s) {
    require_interior(s);
    const double r1 = params[0] * std::sin(s);
    const double r2 = params[1] * std::sin(s + kQuarterPi);
    const double r3 = params[2] * std::cos(s);
    const double r4 = params[3] * std::cos(s + kQuarterPi);
    return {r1 * r1, r2 * r2, r3 * r3, r4 * r4, h_squared(params, s)};
}

std::array<double, 5> frame_scalings(const EllipsoidParams& params, double s) {
    require_interior(s);
    return {1.0 / std::abs(params[0] * std::sin(s)), 1.0 / std::abs(params[1] * std::sin(s + kQuarterPi)),
            1.0 / std::abs(params[2] * std::cos(s)), 1.0 / std::abs(params[3] * std::cos(s + kQuarterPi)),
            1.0 / h(params, s)};
}

std::array<double, 3> variety_residuals(const EllipsoidParams& params, const AmbientPoint& p) {
    std::array<double, 4> q{};
    for (std::size_t i = 0; i < 4; ++i) q[i] = p.modulus_squared(i) / (params[i] * params[i]);
    const double d13 = q[2] - q[0];
    const double d24 = q[3] - q[1];
    return {q[0] + q[2] - 1.0, q[1] + q[3] - 1.0, d13 * d13 + d24 * d24 - 1.0};
}

double ellipsoid_residual(const EllipsoidParams& params, const AmbientPoint& p) {
    double sum = 0.0;
    for (std::size_t i = 0; i < 4; ++i) sum += p.modulus_squared(i) / (params[i] * params[i]);
    return sum - 2.0;
}

}  // namespace hopf
