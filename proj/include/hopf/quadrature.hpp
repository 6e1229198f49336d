#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "hopf/errors.hpp"
#include "hopf/geometry.hpp"

namespace hopf {

inline constexpr double kDefaultQuadTol = 1e-10;
inline constexpr std::size_t kDefaultEvaluationBudget = std::size_t{1} << 20;

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
    std::size_t evaluations = 0;
};

namespace detail {

struct Segment {
    double a, b, value, error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

// Gauss-Kronrod 7/15 rule (QUADPACK abscissae and weights).
template <class F>
Segment gauss_kronrod15(const F& f, double a, double b) {
    static constexpr double xgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                      0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                      0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                                      0.207784955007898467600689403773245, 0.0};
    static constexpr double wgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                                      0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                      0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                                      0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
    static constexpr double wg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                     0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double kronrod = fc * wgk[7];
    double gauss = fc * wg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * xgk[j];
        const double pair = f(center - dx) + f(center + dx);
        kronrod += wgk[j] * pair;
        if (j % 2 == 1) gauss += wg[j / 2] * pair;
    }
    return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod integration of f over [a, b] (a > b
/// allowed, giving the negated integral). Stops when the summed error
/// estimate is below max(abs_tol, rel_tol * |result|).
template <class F>
QuadratureResult integrate_adaptive(const F& f, double a, double b, double rel_tol, double abs_tol = 1e-15,
                                    std::size_t max_evaluations = kDefaultEvaluationBudget) {
    if (a == b) return {};
    const double orientation = b > a ? 1.0 : -1.0;
    if (b < a) std::swap(a, b);

    std::priority_queue<detail::Segment> work;
    std::vector<detail::Segment> settled;
    work.push(detail::gauss_kronrod15(f, a, b));
    std::size_t evaluations = 15;
    double total = work.top().value;
    double total_error = work.top().error;

    while (!work.empty() && total_error > std::max(abs_tol, rel_tol * std::abs(total))) {
        if (evaluations + 30 > max_evaluations)
            throw ToleranceNotMet("adaptive quadrature exceeded its budget of " + std::to_string(max_evaluations) +
                                  " evaluations (error estimate " + num(total_error) + ")");
        const detail::Segment worst = work.top();
        work.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // Cannot bisect further in double precision.
            settled.push_back(worst);
            continue;
        }
        const detail::Segment left = detail::gauss_kronrod15(f, worst.a, mid);
        const detail::Segment right = detail::gauss_kronrod15(f, mid, worst.b);
        evaluations += 30;
        total += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        work.push(left);
        work.push(right);
    }

    // Re-sum to shed the drift of the running updates.
    double value = 0.0, error = 0.0;
    for (; !work.empty(); work.pop()) {
        value += work.top().value;
        error += work.top().error;
    }
    for (const auto& seg : settled) {
        value += seg.value;
        error += seg.error;
    }
    if (error > std::max(abs_tol, rel_tol * std::abs(value)) && !settled.empty())
        throw ToleranceNotMet("adaptive quadrature stalled at double-precision resolution");
    return {orientation * value, error, evaluations};
}

/// The integrand 4 h(u) / sin(4u) of the profile exponent.
double exponent_integrand(const EllipsoidParams& params, double u);

/// ∫_{base_s}^{s} 4 h(u)/sin(4u) du on one branch, by direct adaptive quadrature.
/// Both base_s and s must lie inside the branch, away from its endpoints by
/// at least kSingularGuard.
double quadrature_I(const EllipsoidParams& params, const Interval& branch, double base_s, double s,
                    double tol = kDefaultQuadTol);

/// Cumulative values of the profile exponent I(s) = ∫_{base}^{s} 4h/sin(4u) du
/// on panels graded geometrically toward both ends of a branch. Built once,
/// then immutable.
class QuadratureTable {
public:
    QuadratureTable(const EllipsoidParams& params, const Interval& branch, double tol = kDefaultQuadTol);

    /// I(s); s must be interior to the branch (guarded by kSingularGuard).
    double integral(double s) const;
    /// dI/ds = 4h(s)/sin(4s).
    double derivative(double s) const;

    const EllipsoidParams& params() const { return params_; }
    const Interval& branch() const { return branch_; }
    double base() const { return branch_.base(); }
    double tolerance() const { return tol_; }
    /// +1 if I increases with s on this branch, -1 otherwise.
    int sign() const { return branch_.index() % 2 == 0 ? 1 : -1; }
    const std::vector<double>& nodes() const { return nodes_; }
    const std::vector<double>& cumulative() const { return cumulative_; }

private:
    EllipsoidParams params_;
    Interval branch_;
    double tol_;
    std::vector<double> nodes_;
    std::vector<double> cumulative_;
};

}  // namespace hopf
