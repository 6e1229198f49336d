#pragma once

#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "hopf/geometry.hpp"
#include "hopf/interpolation.hpp"
#include "hopf/quadrature.hpp"

namespace hopf {

enum class ProfileForm { ClosedForm, ConstantH, Grid };

std::string_view to_string(ProfileForm f);

/// α and its first two derivatives at one s, together with sin α and cos α
/// (computed without cancellation for the analytic forms).
struct ProfileJet {
    double alpha = 0.0;
    double alpha_prime = 0.0;
    double alpha_second = 0.0;
    double sin_alpha = 0.0;
    double cos_alpha = 0.0;
};

/// A profile function α on one branch interval.
///
/// The analytic forms are
///
///     α(s) = offset + sign · 2 atan(c · exp(I(s))),   I(s) = ∫_{base}^{s} 4h(u)/sin(4u) du,
///
/// with (offset, sign) = (0, +), (2π, -), (2π, +), (4π, -) on Q5, B2, B3, B4.
/// ClosedForm obtains I(s) from a QuadratureTable; ConstantH uses the
/// antiderivative A·log|tan 2s| that holds when h ≡ A. Grid profiles
/// interpolate sampled values (natural cubic spline), or sampled
/// (α, α', α'') triples (C² quintic Hermite) when derivatives are known.
class Profile {
public:
    static Profile closed_form(const EllipsoidParams& params, Branch branch, double c, double tol = kDefaultQuadTol);
    static Profile closed_form(std::shared_ptr<const QuadratureTable> table, double c);
    static Profile closed_form_from_log_c(std::shared_ptr<const QuadratureTable> table, double log_c);
    /// Requires params.has_constant_h(); A = sqrt(a1^2 + a2^2).
    static Profile constant_h(const EllipsoidParams& params, Branch branch, double c);
    static Profile constant_h_from_log_c(Branch branch, double A, double log_c);
    static Profile grid(Branch branch, std::vector<double> nodes, std::vector<double> values);
    static Profile grid(Branch branch, std::vector<double> nodes, std::vector<double> values,
                        std::vector<double> slopes, std::vector<double> curvatures);

    const Interval& interval() const { return interval_; }
    Branch branch() const { return interval_.label; }
    ProfileForm form() const;
    double offset() const { return interval_.offset(); }
    int sign() const { return interval_.sign(); }
    double base_s() const { return interval_.base(); }

    /// Integration constant; analytic forms only.
    double c() const;
    double log_c() const;
    /// The constant value of h; ConstantH only.
    double A() const;
    /// Quadrature table; ClosedForm only (nullptr otherwise).
    const QuadratureTable* table() const;

    /// Grid data; empty spans for analytic forms.
    std::span<const double> nodes() const;
    std::span<const double> values() const;
    std::span<const double> slopes() const;
    std::span<const double> curvatures() const;
    bool has_derivative_data() const;

    /// Closed s-range on which the profile may be evaluated.
    std::pair<double, double> domain() const;
    bool defined_at(double s) const;

    double alpha(double s) const;
    ProfileJet jet(double s) const;
    /// Distances (α - alpha_lo, alpha_hi - α) to the ends of the branch
    /// window, free of cancellation for the analytic forms.
    std::pair<double, double> window_gaps(double s) const;

private:
    struct Analytic {
        double log_c;
        std::shared_ptr<const QuadratureTable> table;  // null for ConstantH
        double A;                                      // ConstantH only
    };
    struct Sampled {
        std::vector<double> nodes, values, slopes, curvatures;
        std::optional<CubicSpline> spline;
        std::optional<QuinticHermite> hermite;
    };

    Profile(Interval interval, std::variant<Analytic, Sampled> data);

    void require_defined(double s) const;
    /// Exponent L = log c + I(s) and its first two derivatives.
    Jet exponent_jet(const Analytic& a, double s) const;

    Interval interval_;
    std::shared_ptr<const std::variant<Analytic, Sampled>> data_;
};

/// Closed-form α on a branch, by direct quadrature (no table).
double closed_form_alpha(Branch branch, double c, const EllipsoidParams& params, double s,
                         double tol = kDefaultQuadTol);

/// α from the exponent L = log c + I(s): offset + sign · 2 atan(e^L).
double alpha_from_exponent(const Interval& interval, double L);

struct BoundaryProbe {
    double eps = 0.0;
    double s = 0.0;
    double alpha = 0.0;
    double distance = 0.0;  // |α(s) - limit|
    bool evaluated = false;
};

struct EndCertificate {
    double endpoint = 0.0;
    double limit = 0.0;
    std::vector<BoundaryProbe> probes;  // in order of decreasing eps
    bool monotone = false;              // each probe strictly closer than the previous
    bool in_window = false;             // all probes strictly inside the branch window
    double final_distance = 0.0;
};

struct BoundaryCertificate {
    Branch branch{};
    EndCertificate lower, upper;
    bool passed() const { return lower.monotone && lower.in_window && upper.monotone && upper.in_window; }
};

inline const std::vector<double> kDefaultBoundaryEps{1e-2, 1e-3, 1e-4};

/// Probes α at endpoint ± eps and checks monotone approach to the branch limits.
BoundaryCertificate boundary_certificate(const Profile& profile,
                                         std::span<const double> eps_list = kDefaultBoundaryEps);

/// Re-evaluates the monotone/in-window verdicts of a certificate from its probes.
void recompute_certificate_flags(EndCertificate& end, double alpha_lo, double alpha_hi);

}  // namespace hopf
