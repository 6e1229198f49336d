#include "hopf/shooting.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include <boost/numeric/odeint.hpp>

#include "hopf/errors.hpp"
#include "hopf/ode.hpp"

namespace hopf {

namespace odeint = boost::numeric::odeint;

bool Trajectory::monotone() const {
    for (std::size_t i = 1; i < alpha.size(); ++i)
        if (!(alpha[i] > alpha[i - 1])) return false;
    return true;
}

namespace {

using State = std::array<double, 2>;

struct HarmonicityRhs {
    const EllipsoidParams& params;
    const WindingNumbers& k;

    void operator()(const State& x, State& dxdt, double s) const {
        const ODECoefficients c = ode_coefficients(params, k, s);
        dxdt[0] = x[1];
        dxdt[1] = -c.D * x[1] + c.G_factor * sin_cos_product(x[0]);
    }
};

void record(Trajectory& out, const HarmonicityRhs& rhs, const State& x, double s) {
    State dxdt{};
    rhs(x, dxdt, s);
    out.s.push_back(s);
    out.alpha.push_back(x[0]);
    out.alpha_prime.push_back(x[1]);
    out.alpha_second.push_back(dxdt[1]);
}

}  // namespace

Trajectory integrate_trajectory(const EllipsoidParams& params, const WindingNumbers& k, double s0, double alpha0,
                                double alpha_prime0, double target_s, double step_tol) {
    if (!(step_tol > 0.0)) throw InvalidArgument("step tolerance must be positive");
    const Interval branch{branch_of(s0)};
    if (!branch.contains_interior(s0, kSingularGuard))
        throw SingularLocus("shooting start s0 lies within the singular guard");
    // A hair beyond the guard so rounding in s cannot land inside it.
    const double stop = kSingularGuard * (1.0 + 1e-6);
    const double target = std::clamp(target_s, branch.lo() + stop, branch.hi() - stop);

    const HarmonicityRhs rhs{params, k};
    Trajectory out;
    out.branch = branch.label;
    State x{alpha0, alpha_prime0};
    record(out, rhs, x, s0);
    if (target == s0) return out;

    auto stepper = odeint::make_controlled(step_tol, step_tol, odeint::runge_kutta_fehlberg78<State>());
    const double direction = target > s0 ? 1.0 : -1.0;
    double s = s0;
    double ds = direction * std::min(1e-3, std::abs(target - s0));

    while (direction * (target - s) > 0.0) {
        const double remaining = target - s;
        const bool last = std::abs(ds) >= std::abs(remaining);
        if (last) ds = remaining;
        const double previous_ds = ds;
        if (stepper.try_step(rhs, x, s, ds) == odeint::success) {
            if (!std::isfinite(x[0]) || !std::isfinite(x[1]))
                throw StepUnderflow("solution blew up near s = " + num(s));
            if (last) s = target;
            record(out, rhs, x, s);
            // Keep stepping with the controller's suggestion, not the truncated landing step.
            if (last && std::abs(ds) < std::abs(previous_ds)) ds = previous_ds;
        } else if (std::abs(ds) < 1e-14 * std::max(1.0, std::abs(s))) {
            throw StepUnderflow("step size underflow at s = " + num(s));
        }
    }

    if (direction < 0.0) {
        std::reverse(out.s.begin(), out.s.end());
        std::reverse(out.alpha.begin(), out.alpha.end());
        std::reverse(out.alpha_prime.begin(), out.alpha_prime.end());
        std::reverse(out.alpha_second.begin(), out.alpha_second.end());
    }
    return out;
}

Trajectory integrate_span(const EllipsoidParams& params, const WindingNumbers& k, double s0, double alpha0,
                          double alpha_prime0, double s_lo, double s_hi, double step_tol) {
    if (!(s_lo <= s0 && s0 <= s_hi)) throw InvalidArgument("shooting span must contain the start point");
    Trajectory down = integrate_trajectory(params, k, s0, alpha0, alpha_prime0, s_lo, step_tol);
    const Trajectory up = integrate_trajectory(params, k, s0, alpha0, alpha_prime0, s_hi, step_tol);
    // Both legs contain s0; drop it from the upward leg.
    down.s.insert(down.s.end(), up.s.begin() + 1, up.s.end());
    down.alpha.insert(down.alpha.end(), up.alpha.begin() + 1, up.alpha.end());
    down.alpha_prime.insert(down.alpha_prime.end(), up.alpha_prime.begin() + 1, up.alpha_prime.end());
    down.alpha_second.insert(down.alpha_second.end(), up.alpha_second.begin() + 1, up.alpha_second.end());
    return down;
}

Profile to_profile(const Trajectory& t) {
    if (t.s.size() < 2) throw InvalidArgument("trajectory too short for a grid profile");
    return Profile::grid(t.branch, t.s, t.alpha, t.alpha_prime, t.alpha_second);
}

Profile shoot(const EllipsoidParams& params, const WindingNumbers& k, double s0, double alpha0, double alpha_prime0,
              double target_s, double step_tol) {
    return to_profile(integrate_trajectory(params, k, s0, alpha0, alpha_prime0, target_s, step_tol));
}

Profile shoot_span(const EllipsoidParams& params, const WindingNumbers& k, double s0, double alpha0,
                   double alpha_prime0, double s_lo, double s_hi, double step_tol) {
    return to_profile(integrate_span(params, k, s0, alpha0, alpha_prime0, s_lo, s_hi, step_tol));
}

}  // namespace hopf
