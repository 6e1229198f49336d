#pragma once

#include <vector>

#include "hopf/geometry.hpp"
#include "hopf/profile.hpp"
#include "hopf/winding.hpp"

namespace hopf {

inline constexpr double kDefaultStepTol = 1e-12;

/// Accepted steps of an integration of the harmonicity equation, in
/// increasing s. alpha_second holds the equation's right-hand side at each node.
struct Trajectory {
    Branch branch{};
    std::vector<double> s, alpha, alpha_prime, alpha_second;

    bool empty() const { return s.empty(); }
    bool monotone() const;
};

/// Integrates α'' = -D α' + G_factor sin α cos α (general coefficients) from
/// s0 to target_s with an adaptive embedded Runge-Kutta 7(8) pair; the local
/// error of each accepted step is below step_tol (absolute and relative).
/// target_s is clamped kSingularGuard short of the loci bounding s0's branch.
/// Throws StepUnderflow when the controller cannot make progress.
Trajectory integrate_trajectory(const EllipsoidParams& params, const WindingNumbers& k, double s0, double alpha0,
                                double alpha_prime0, double target_s, double step_tol = kDefaultStepTol);

/// Integrates from s0 both down to s_lo and up to s_hi and merges the two legs.
Trajectory integrate_span(const EllipsoidParams& params, const WindingNumbers& k, double s0, double alpha0,
                          double alpha_prime0, double s_lo, double s_hi, double step_tol = kDefaultStepTol);

/// Grid profile through the trajectory's (α, α', α'') samples.
/// Throws NonMonotoneProfile if α is not strictly increasing.
Profile to_profile(const Trajectory& trajectory);

/// One-directional shot from s0 toward target_s, returned as a grid profile.
Profile shoot(const EllipsoidParams& params, const WindingNumbers& k, double s0, double alpha0, double alpha_prime0,
              double target_s, double step_tol = kDefaultStepTol);

/// Two-sided shot covering [s_lo, s_hi], returned as a grid profile.
Profile shoot_span(const EllipsoidParams& params, const WindingNumbers& k, double s0, double alpha0,
                   double alpha_prime0, double s_lo, double s_hi, double step_tol = kDefaultStepTol);

}  // namespace hopf
