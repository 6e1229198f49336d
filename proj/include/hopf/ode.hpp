#pragma once

#include "hopf/geometry.hpp"
#include "hopf/profile.hpp"
#include "hopf/winding.hpp"

namespace hopf {

/// Coefficients of the harmonicity equation α'' + D α' - G_factor · sin α cos α = 0.
struct ODECoefficients {
    double D = 0.0;
    double G_factor = 0.0;
};

/// Threshold on |sin α| below which the first-order relation is not evaluated.
inline constexpr double kPoleGuard = 1e-12;

/// sin α · cos α, with α reduced against the double nearest π/2 so that the
/// representable equator and pole angles give exactly zero.
double sin_cos_product(double alpha);

/// cot s + cot(s+π/4) - tan s - tan(s+π/4) - h'/h.
double coeff_D_general(const EllipsoidParams& params, double s);
/// 4 cot 4s - h'/h.
double coeff_D_simplified(const EllipsoidParams& params, double s);

/// h² Σ k_i²/(a_i² τ_i²), τ = (sin s, sin(s+π/4), cos s, cos(s+π/4)).
double G_factor_general(const EllipsoidParams& params, const WindingNumbers& k, double s);
/// 16 h² / sin²(4s); needs the morphism regime.
double G_factor_simplified(const EllipsoidParams& params, const WindingNumbers& k, double s);

double coeff_G_general(const EllipsoidParams& params, const WindingNumbers& k, double s, double alpha);
double coeff_G_simplified(const EllipsoidParams& params, const WindingNumbers& k, double s, double alpha);

/// General-form coefficients (valid for any a, k).
ODECoefficients ode_coefficients(const EllipsoidParams& params, const WindingNumbers& k, double s);

/// α'' + D α' - G with the general coefficients; under a_i = |k_i| this is
/// the simplified equation with D = 4 cot 4s - h'/h and G = 16h²/sin²(4s) · sin α cos α.
double harmonicity_residual(const EllipsoidParams& params, const WindingNumbers& k, double s, double alpha,
                            double alpha_prime, double alpha_second);
double harmonicity_residual(const EllipsoidParams& params, const WindingNumbers& k, const Profile& profile, double s);

/// α'/sin α - 4h/sin 4s. Throws PoleValue when |sin α| < kPoleGuard.
double prime_integral_residual(const EllipsoidParams& params, double s, double alpha, double alpha_prime);
double prime_integral_residual(const EllipsoidParams& params, const Profile& profile, double s);

// ---- three-dimensional ellipsoid Q*3(a, b) ---------------------------------

/// h² = a² cos² s + b² sin² s.
double q3_h(double a, double b, double s);
double q3_h_prime(double a, double b, double s);

/// k²/(a² sin² s) + l²/(b² cos² s).
double q3_bracket(double a, double b, int k, int l, double s);

/// |k|/a == |l|/b, i.e. each winding is matched to its own semi-axis with a
/// common ratio. Under it the bracket collapses to (k²/a²) / (sin² s cos² s).
bool q3_ratio_regime(double a, double b, int k, int l);
double q3_bracket_collapsed(double a, double b, int k, int l, double s);

/// α'' + (cot s - tan s) α' - (h'/h) α' - h² · bracket · sin α cos α on (0, π/2).
double q3_residual(double a, double b, int k, int l, double alpha, double alpha_prime, double alpha_second, double s);

}  // namespace hopf
