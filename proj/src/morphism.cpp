#include "hopf/morphism.hpp"

#include <cmath>
#include <string>

#include "hopf/errors.hpp"

namespace hopf {

SpherePoint::SpherePoint(double gamma, double t) : gamma_(wrap_angle(gamma)), t_(t) {
    if (!std::isfinite(gamma) || !std::isfinite(t)) throw InvalidArgument("sphere point must be finite");
    if (t < 0.0 || t > 2.0 * kTwoPi) throw InvalidArgument("colatitude must lie in [0, 4pi], got " + num(t));
}

SpherePoint SpherePoint::fold() const {
    const double r = std::fmod(t_, kTwoPi);
    if (r > kPi) return SpherePoint(gamma_ + kPi, kTwoPi - r);
    return SpherePoint(gamma_, r);
}

std::array<double, 3> SpherePoint::embedded() const {
    const double st = std::sin(t_);
    return {st * std::cos(gamma_), st * std::sin(gamma_), std::cos(t_)};
}

double TangentVector::dot(const TangentVector& o) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < 5; ++i) sum += v[i] * o.v[i];
    return sum;
}

double TangentVector::norm() const { return std::sqrt(dot(*this)); }

MapSpec::MapSpec(EllipsoidParams params, WindingNumbers k, Profile profile)
    : params_(params), k_(k), profile_(std::move(profile)), morphism_regime_(is_morphism_regime(params_, k_)) {}

std::array<double, 4> angular_rates(const EllipsoidParams& params, const WindingNumbers& k, double s) {
    require_interior(s);
    const double tau[4] = {std::sin(s), std::sin(s + kQuarterPi), std::cos(s), std::cos(s + kQuarterPi)};
    std::array<double, 4> r{};
    for (std::size_t i = 0; i < 4; ++i) r[i] = k[i] / (params[i] * std::abs(tau[i]));
    return r;
}

SpherePoint evaluate(const MapSpec& spec, const JoinCoordinate& w) {
    const double alpha = spec.profile().alpha(w.s());
    double phase = 0.0;
    for (std::size_t i = 0; i < 4; ++i) phase += spec.k()[i] * w.theta(i);
    return SpherePoint(phase, alpha);
}

// The coordinate components do not depend on α; only their lengths under the sphere metric do.
std::array<SphereTangent, 5> differential_frame(const MapSpec& spec, double s, double /*alpha*/, double alpha_prime) {
    const auto r = angular_rates(spec.params(), spec.k(), s);
    std::array<SphereTangent, 5> out{};
    for (std::size_t i = 0; i < 4; ++i) out[i] = {r[i], 0.0};
    out[4] = {0.0, alpha_prime / h(spec.params(), s)};
    return out;
}

SphereTangent push_forward(const std::array<SphereTangent, 5>& images, const TangentVector& v) {
    SphereTangent out;
    for (std::size_t i = 0; i < 5; ++i) {
        out.dgamma += v.v[i] * images[i].dgamma;
        out.dt += v.v[i] * images[i].dt;
    }
    return out;
}

double sphere_inner(const SphereTangent& x, const SphereTangent& y, double t) {
    const double st = std::sin(t);
    return st * st * x.dgamma * y.dgamma + x.dt * y.dt;
}

double sphere_norm_squared(const SphereTangent& x, double t) { return sphere_inner(x, x, t); }

std::array<TangentVector, 3> kernel_basis(const MapSpec& spec, double s) {
    const auto r = angular_rates(spec.params(), spec.k(), s);
    std::size_t pivot = 0;
    for (std::size_t i = 1; i < 4; ++i)
        if (std::abs(r[i]) > std::abs(r[pivot])) pivot = i;

    // Exchange vectors r_p e_j - r_j e_p span the null space of the row r.
    std::array<TangentVector, 3> basis{};
    std::size_t n = 0;
    for (std::size_t j = 0; j < 4; ++j) {
        if (j == pivot) continue;
        TangentVector v;
        v.v[j] = r[pivot];
        v.v[pivot] = -r[j];
        basis[n++] = v;
    }
    // Modified Gram-Schmidt.
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            const double proj = basis[i].dot(basis[j]);
            for (std::size_t c = 0; c < 5; ++c) basis[i].v[c] -= proj * basis[j].v[c];
        }
        const double len = basis[i].norm();
        for (double& c : basis[i].v) c /= len;
    }
    return basis;
}

HorizontalBasis horizontal_basis(const MapSpec& spec, double s) {
    require_morphism_regime(spec.params(), spec.k());
    const auto r = angular_rates(spec.params(), spec.k(), s);
    TangentVector y;
    for (std::size_t i = 0; i < 4; ++i) y.v[i] = r[i];

    const double sin4 = std::sin(4.0 * s);
    const double expected = 16.0 / (sin4 * sin4);
    const double norm2 = y.dot(y);
    if (std::abs(norm2 - expected) > 1e-12 * expected)
        throw ToleranceNotMet("horizontal norm identity failed at s = " + num(s));

    // Equal to |sin 4s|/4 by the identity above, without its conditioning near the loci.
    const double scale = 1.0 / std::sqrt(norm2);
    for (double& c : y.v) c *= scale;
    TangentVector e5;
    e5.v[4] = 1.0;
    return {y, e5};
}

double dilation_squared(const MapSpec& spec, double s, double alpha) {
    require_morphism_regime(spec.params(), spec.k());
    require_interior(s);
    const double ratio = std::sin(alpha) / std::sin(4.0 * s);
    return 16.0 * ratio * ratio;
}

double conformality_residual(const MapSpec& spec, double s, double alpha, double alpha_prime) {
    const double horizontal = dilation_squared(spec, s, alpha);
    const double vertical = alpha_prime / h(spec.params(), s);
    return horizontal - vertical * vertical;
}

double energy_density(const MapSpec& spec, double s, double alpha, double alpha_prime) {
    const auto r = angular_rates(spec.params(), spec.k(), s);
    double rates = 0.0;
    for (double x : r) rates += x * x;
    const double sa = std::sin(alpha);
    const double vertical = alpha_prime / h(spec.params(), s);
    return sa * sa * rates + vertical * vertical;
}

}  // namespace hopf
