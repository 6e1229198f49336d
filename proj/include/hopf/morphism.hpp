#pragma once

#include <array>

#include "hopf/geometry.hpp"
#include "hopf/profile.hpp"
#include "hopf/winding.hpp"

namespace hopf {

/// A point of S² in the chart [sin t e^{iγ}, cos t]. t is kept unreduced
/// (values up to 4π occur on the V5 branches); fold() gives the geometric
/// representative with t in [0, π].
class SpherePoint {
public:
    SpherePoint(double gamma, double t);

    double gamma() const { return gamma_; }
    double t() const { return t_; }

    SpherePoint fold() const;
    /// (Re, Im, height) = (sin t cos γ, sin t sin γ, cos t).
    std::array<double, 3> embedded() const;

private:
    double gamma_;
    double t_;
};

/// Components of a tangent vector of Q5/V5 in the orthonormal frame e1..e5.
struct TangentVector {
    std::array<double, 5> v{};

    double dot(const TangentVector& o) const;
    double norm() const;
};

/// Image of a frame vector in the coordinate basis (∂/∂γ, ∂/∂t) of S².
struct SphereTangent {
    double dgamma = 0.0;
    double dt = 0.0;
};

/// The equivariant map φ(w) = [sin α(s) e^{i Σ k_i θ_i}, cos α(s)].
class MapSpec {
public:
    MapSpec(EllipsoidParams params, WindingNumbers k, Profile profile);

    const EllipsoidParams& params() const { return params_; }
    const WindingNumbers& k() const { return k_; }
    const Profile& profile() const { return profile_; }
    /// a_i == |k_i|; always recomputed from params and k.
    bool morphism_regime() const { return morphism_regime_; }

private:
    EllipsoidParams params_;
    WindingNumbers k_;
    Profile profile_;
    bool morphism_regime_;
};

/// Signed ratios k_i / (a_i |τ_i|) with τ = (sin s, sin(s+π/4), cos s, cos(s+π/4)):
/// the ∂/∂γ component of dφ(e_i).
std::array<double, 4> angular_rates(const EllipsoidParams& params, const WindingNumbers& k, double s);

SpherePoint evaluate(const MapSpec& spec, const JoinCoordinate& w);

/// dφ(e_1..e_5) in the (∂/∂γ, ∂/∂t) basis.
std::array<SphereTangent, 5> differential_frame(const MapSpec& spec, double s, double alpha, double alpha_prime);

/// dφ(v) = Σ v_i dφ(e_i).
SphereTangent push_forward(const std::array<SphereTangent, 5>& images, const TangentVector& v);

/// Squared length of a target tangent vector under sin² t dγ² + dt².
double sphere_norm_squared(const SphereTangent& x, double t);
/// Inner product under sin² t dγ² + dt².
double sphere_inner(const SphereTangent& x, const SphereTangent& y, double t);

/// Orthonormal basis of ker dφ (three vectors with v5 = 0).
std::array<TangentVector, 3> kernel_basis(const MapSpec& spec, double s);

struct HorizontalBasis {
    TangentVector y_star;
    TangentVector e5;
};

/// Orthonormal basis {y*, e5} of the horizontal space; morphism regime only.
HorizontalBasis horizontal_basis(const MapSpec& spec, double s);

/// Λ = 16 sin² α / sin²(4s); morphism regime only.
double dilation_squared(const MapSpec& spec, double s, double alpha);

/// ‖dφ(y*)‖² - ‖dφ(e5)‖²; zero iff φ is horizontally conformal at s.
double conformality_residual(const MapSpec& spec, double s, double alpha, double alpha_prime);

/// |dφ|² = Σ_i ‖dφ(e_i)‖².
double energy_density(const MapSpec& spec, double s, double alpha, double alpha_prime);

}  // namespace hopf
