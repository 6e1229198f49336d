#pragma once

#include <array>
#include <complex>
#include <numbers>
#include <string_view>

namespace hopf {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kQuarterPi = 0.25 * std::numbers::pi;

/// Distance (radians) from a singular locus below which interior-only
/// operations refuse to evaluate.
inline constexpr double kSingularGuard = 1e-9;

/// The four positive semi-axes a1..a4 of the ellipsoidal join.
class EllipsoidParams {
public:
    EllipsoidParams(double a1, double a2, double a3, double a4);
    explicit EllipsoidParams(const std::array<double, 4>& a);

    double operator[](std::size_t i) const { return a_[i]; }
    const std::array<double, 4>& values() const { return a_; }

    /// a1 == a3 and a2 == a4: the case where h is constant.
    bool has_constant_h() const { return a_[0] == a_[2] && a_[1] == a_[3]; }
    double sum_of_squares() const;

    friend bool operator==(const EllipsoidParams&, const EllipsoidParams&) = default;

private:
    std::array<double, 4> a_;
};

/// Wraps an angle into [0, 2π).
double wrap_angle(double theta);

/// A point (θ1..θ4, s) of the join parametrisation. Angles are kept in
/// [0, 2π), s in [0, π].
class JoinCoordinate {
public:
    JoinCoordinate(const std::array<double, 4>& theta, double s);

    const std::array<double, 4>& theta() const { return theta_; }
    double theta(std::size_t i) const { return theta_[i]; }
    double s() const { return s_; }

    /// Coordinate displacement in the order (θ1, θ2, θ3, θ4, s).
    JoinCoordinate displaced(const std::array<double, 5>& delta) const;

private:
    std::array<double, 4> theta_;
    double s_;
};

/// A point of C^4 = R^8, stored as (re z1, im z1, ..., re z4, im z4).
struct AmbientPoint {
    std::array<double, 8> x{};

    std::complex<double> z(std::size_t i) const { return {x[2 * i], x[2 * i + 1]}; }
    double modulus_squared(std::size_t i) const { return x[2 * i] * x[2 * i] + x[2 * i + 1] * x[2 * i + 1]; }
    double phase(std::size_t i) const;
};

/// The four open subintervals of (0, π) separated by the singular loci.
enum class Branch { Q5, B2, B3, B4 };

inline constexpr std::array<Branch, 4> kAllBranches{Branch::Q5, Branch::B2, Branch::B3, Branch::B4};

std::string_view to_string(Branch b);
Branch branch_from_string(std::string_view name);

/// Interval I_b = (jπ/4, (j+1)π/4) for branch index j, with the bookkeeping
/// of the closed-form profile living on it.
struct Interval {
    Branch label;

    int index() const { return static_cast<int>(label); }
    double lo() const { return index() * kQuarterPi; }
    double hi() const { return (index() + 1) * kQuarterPi; }
    /// Midpoint; the quadrature base point (π/8, 3π/8, 5π/8, 7π/8).
    double base() const { return (index() + 0.5) * kQuarterPi; }
    /// Profile values on this branch lie in (jπ, (j+1)π).
    double alpha_lo() const { return index() * kPi; }
    double alpha_hi() const { return (index() + 1) * kPi; }
    /// Multiple of 2π added to the arctangent form.
    double offset() const;
    /// Sign multiplying c in the closed form.
    int sign() const { return index() % 2 == 0 ? 1 : -1; }

    bool contains(double s) const { return s > lo() && s < hi(); }
    /// True when s is at least `margin` away from both endpoints.
    bool contains_interior(double s, double margin) const { return s >= lo() + margin && s <= hi() - margin; }

    friend bool operator==(const Interval&, const Interval&) = default;
};

/// Distance from s to the nearest of {0, π/4, π/2, 3π/4, π}.
double distance_to_singular_locus(double s);

/// Throws SingularLocus if s is within kSingularGuard of a locus, and
/// InvalidArgument if s is outside [0, π].
void require_interior(double s);

/// Branch whose open interval contains s. Requires an interior s.
Branch branch_of(double s);

AmbientPoint embed(const EllipsoidParams& params, const JoinCoordinate& w);

double h(const EllipsoidParams& params, double s);
double h_prime(const EllipsoidParams& params, double s);

/// Diagonal of the induced metric in coordinates (θ1, θ2, θ3, θ4, s).
std::array<double, 5> metric_diagonal(const EllipsoidParams& params, double s);

/// Scalings turning ∂/∂θi, ∂/∂s into the orthonormal frame e1..e5.
std::array<double, 5> frame_scalings(const EllipsoidParams& params, double s);

/// LHS - RHS of the three defining equations of V*5.
std::array<double, 3> variety_residuals(const EllipsoidParams& params, const AmbientPoint& p);

/// Σ |zi|^2 / ai^2 - 2.
double ellipsoid_residual(const EllipsoidParams& params, const AmbientPoint& p);

}  // namespace hopf
