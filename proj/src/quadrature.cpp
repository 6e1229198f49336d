#include "hopf/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hopf {

double exponent_integrand(const EllipsoidParams& params, double u) { return 4.0 * h(params, u) / std::sin(4.0 * u); }

namespace {

void require_in_branch(const Interval& branch, double s, const char* what) {
    if (!branch.contains(s))
        throw OutOfInterval(std::string(what) + " = " + num(s) + " is outside branch " +
                            std::string(to_string(branch.label)));
    if (!branch.contains_interior(s, kSingularGuard))
        throw SingularLocus(std::string(what) + " = " + num(s) + " is within the singular guard of branch " +
                            std::string(to_string(branch.label)));
}

}  // namespace

double quadrature_I(const EllipsoidParams& params, const Interval& branch, double base_s, double s, double tol) {
    require_in_branch(branch, base_s, "base_s");
    require_in_branch(branch, s, "s");
    const auto f = [&params](double u) { return exponent_integrand(params, u); };
    return integrate_adaptive(f, base_s, s, tol).value;
}

QuadratureTable::QuadratureTable(const EllipsoidParams& params, const Interval& branch, double tol)
    : params_(params), branch_(branch), tol_(tol) {
    if (!(tol > 0.0)) throw InvalidArgument("quadrature tolerance must be positive");

    // Breakpoints at distances (π/8)·2^-j from each endpoint, then the guard.
    std::vector<double> offsets;
    for (double d = 0.125 * kPi; d > kSingularGuard; d *= 0.5) offsets.push_back(d);
    offsets.push_back(kSingularGuard);

    const double lo = branch.lo(), hi = branch.hi();
    for (auto it = offsets.rbegin(); it != offsets.rend(); ++it) nodes_.push_back(lo + *it);
    // offsets.front() == π/8 puts both sides' first breakpoint on the base.
    for (std::size_t i = 1; i < offsets.size(); ++i) nodes_.push_back(hi - offsets[i]);

    const auto f = [this](double u) { return exponent_integrand(params_, u); };
    const auto base_it = std::min_element(nodes_.begin(), nodes_.end(), [this](double x, double y) {
        return std::abs(x - base()) < std::abs(y - base());
    });
    const std::size_t base_index = static_cast<std::size_t>(base_it - nodes_.begin());
    nodes_[base_index] = base();

    cumulative_.assign(nodes_.size(), 0.0);
    for (std::size_t i = base_index + 1; i < nodes_.size(); ++i)
        cumulative_[i] = cumulative_[i - 1] + integrate_adaptive(f, nodes_[i - 1], nodes_[i], 0.01 * tol_).value;
    for (std::size_t i = base_index; i-- > 0;)
        cumulative_[i] = cumulative_[i + 1] + integrate_adaptive(f, nodes_[i + 1], nodes_[i], 0.01 * tol_).value;
}

double QuadratureTable::integral(double s) const {
    require_in_branch(branch_, s, "s");
    const auto upper = std::upper_bound(nodes_.begin(), nodes_.end(), s);
    std::size_t right = static_cast<std::size_t>(upper - nodes_.begin());
    if (right == 0) right = 1;
    if (right == nodes_.size()) right = nodes_.size() - 1;
    const std::size_t left = right - 1;
    const std::size_t start = (s - nodes_[left] <= nodes_[right] - s) ? left : right;
    if (s == nodes_[start]) return cumulative_[start];
    const auto f = [this](double u) { return exponent_integrand(params_, u); };
    return cumulative_[start] + integrate_adaptive(f, nodes_[start], s, 0.01 * tol_).value;
}

double QuadratureTable::derivative(double s) const {
    require_in_branch(branch_, s, "s");
    return exponent_integrand(params_, s);
}

}  // namespace hopf
