#include "hopf/ode.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hopf/errors.hpp"

namespace hopf {

double sin_cos_product(double alpha) {
    constexpr double half_pi = 0.5 * kPi;
    const double n = std::nearbyint(alpha / half_pi);
    const double r = std::fma(-n, half_pi, alpha);
    // sin(2(r + nπ/2)) = (-1)^n sin 2r
    const double s2r = 0.5 * std::sin(2.0 * r);
    return std::fmod(std::abs(n), 2.0) == 0.0 ? s2r : -s2r;
}

namespace {

struct Trig {
    double s1, s2, c1, c2;  // sin s, sin(s+π/4), cos s, cos(s+π/4)
};

Trig trig_at(double s) {
    return {std::sin(s), std::sin(s + kQuarterPi), std::cos(s), std::cos(s + kQuarterPi)};
}

}  // namespace

double coeff_D_general(const EllipsoidParams& params, double s) {
    require_interior(s);
    const Trig t = trig_at(s);
    return t.c1 / t.s1 + t.c2 / t.s2 - t.s1 / t.c1 - t.s2 / t.c2 - h_prime(params, s) / h(params, s);
}

double coeff_D_simplified(const EllipsoidParams& params, double s) {
    require_interior(s);
    return 4.0 * std::cos(4.0 * s) / std::sin(4.0 * s) - h_prime(params, s) / h(params, s);
}

double G_factor_general(const EllipsoidParams& params, const WindingNumbers& k, double s) {
    require_interior(s);
    const Trig t = trig_at(s);
    const double tau[4] = {t.s1, t.s2, t.c1, t.c2};
    double bracket = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        const double ratio = k[i] / (params[i] * tau[i]);
        bracket += ratio * ratio;
    }
    const double hs = h(params, s);
    return hs * hs * bracket;
}

double G_factor_simplified(const EllipsoidParams& params, const WindingNumbers& k, double s) {
    require_morphism_regime(params, k);
    require_interior(s);
    const double hs = h(params, s);
    const double sin4 = std::sin(4.0 * s);
    return 16.0 * hs * hs / (sin4 * sin4);
}

double coeff_G_general(const EllipsoidParams& params, const WindingNumbers& k, double s, double alpha) {
    return G_factor_general(params, k, s) * sin_cos_product(alpha);
}

double coeff_G_simplified(const EllipsoidParams& params, const WindingNumbers& k, double s, double alpha) {
    return G_factor_simplified(params, k, s) * sin_cos_product(alpha);
}

ODECoefficients ode_coefficients(const EllipsoidParams& params, const WindingNumbers& k, double s) {
    return {coeff_D_general(params, s), G_factor_general(params, k, s)};
}

double harmonicity_residual(const EllipsoidParams& params, const WindingNumbers& k, double s, double alpha,
                            double alpha_prime, double alpha_second) {
    const ODECoefficients c = ode_coefficients(params, k, s);
    return alpha_second + c.D * alpha_prime - c.G_factor * sin_cos_product(alpha);
}

double harmonicity_residual(const EllipsoidParams& params, const WindingNumbers& k, const Profile& profile, double s) {
    const ProfileJet j = profile.jet(s);
    const ODECoefficients c = ode_coefficients(params, k, s);
    return j.alpha_second + c.D * j.alpha_prime - c.G_factor * j.sin_alpha * j.cos_alpha;
}

namespace {

double prime_integral_from(const EllipsoidParams& params, double s, double sin_alpha, double alpha_prime) {
    require_interior(s);
    if (std::abs(sin_alpha) < kPoleGuard)
        throw PoleValue("sin(alpha) = " + num(sin_alpha) + " below the pole guard at s = " +
                        num(s));
    return alpha_prime / sin_alpha - 4.0 * h(params, s) / std::sin(4.0 * s);
}

}  // namespace

double prime_integral_residual(const EllipsoidParams& params, double s, double alpha, double alpha_prime) {
    return prime_integral_from(params, s, std::sin(alpha), alpha_prime);
}

double prime_integral_residual(const EllipsoidParams& params, const Profile& profile, double s) {
    const ProfileJet j = profile.jet(s);
    return prime_integral_from(params, s, j.sin_alpha, j.alpha_prime);
}

namespace {

void require_q3_interior(double a, double b, double s) {
    if (!(a > 0.0) || !(b > 0.0)) throw InvalidArgument("Q3 semi-axes must be positive");
    if (!(s >= 0.0 && s <= 0.5 * kPi)) throw InvalidArgument("Q3 residual needs s in (0, pi/2)");
    if (s < kSingularGuard || 0.5 * kPi - s < kSingularGuard)
        throw SingularLocus("s = " + num(s) + " lies on a singular locus of Q3");
}

}  // namespace

double q3_h(double a, double b, double s) {
    const double c = std::cos(s), sn = std::sin(s);
    return std::sqrt(a * a * c * c + b * b * sn * sn);
}

double q3_h_prime(double a, double b, double s) {
    return (b * b - a * a) * std::sin(s) * std::cos(s) / q3_h(a, b, s);
}

double q3_bracket(double a, double b, int k, int l, double s) {
    const double sn = std::sin(s), c = std::cos(s);
    const double x = k / (a * sn), y = l / (b * c);
    return x * x + y * y;
}

bool q3_ratio_regime(double a, double b, int k, int l) {
    const double lhs = std::abs(k) * b, rhs = std::abs(l) * a;
    return std::abs(lhs - rhs) <= 1e-12 * std::max({1.0, lhs, rhs});
}

double q3_bracket_collapsed(double a, double b, int k, int l, double s) {
    if (!q3_ratio_regime(a, b, k, l)) throw NotMorphismRegime("Q3 bracket collapse needs |k|/a == |l|/b");
    const double sc = std::sin(s) * std::cos(s);
    const double ratio = k / a;
    return ratio * ratio / (sc * sc);
}

double q3_residual(double a, double b, int k, int l, double alpha, double alpha_prime, double alpha_second, double s) {
    require_q3_interior(a, b, s);
    const double hs = q3_h(a, b, s);
    const double drift = std::cos(s) / std::sin(s) - std::sin(s) / std::cos(s) - q3_h_prime(a, b, s) / hs;
    return alpha_second + drift * alpha_prime - hs * hs * q3_bracket(a, b, k, l, s) * sin_cos_product(alpha);
}

}  // namespace hopf
