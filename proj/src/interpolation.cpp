#include "hopf/interpolation.hpp"

#include <algorithm>
#include <cmath>

#include "hopf/errors.hpp"

namespace hopf {

namespace {

void require_ascending(std::span<const double> x) {
    if (x.size() < 2) throw InvalidArgument("interpolation needs at least two nodes");
    for (std::size_t i = 1; i < x.size(); ++i)
        if (!(x[i] > x[i - 1])) throw InvalidArgument("interpolation nodes must be strictly increasing");
}

std::size_t locate(const std::vector<double>& x, double t) {
    if (!(t >= x.front() && t <= x.back())) throw OutOfInterval("interpolant evaluated outside its node range");
    const auto it = std::upper_bound(x.begin(), x.end(), t);
    const std::size_t i = static_cast<std::size_t>(it - x.begin());
    return std::min(i, x.size() - 1) - 1;
}

}  // namespace

CubicSpline::CubicSpline(std::span<const double> x, std::span<const double> y)
    : x_(x.begin(), x.end()), y_(y.begin(), y.end()), m_(x.size(), 0.0) {
    require_ascending(x);
    if (y.size() != x.size()) throw InvalidArgument("spline value count does not match node count");
    const std::size_t n = x_.size();
    if (n < 3) return;

    // Thomas algorithm on the interior second derivatives.
    std::vector<double> diag(n, 0.0), rhs(n, 0.0), upper(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double hl = x_[i] - x_[i - 1];
        const double hr = x_[i + 1] - x_[i];
        const double lower = hl / 6.0;
        diag[i] = (hl + hr) / 3.0;
        upper[i] = hr / 6.0;
        rhs[i] = (y_[i + 1] - y_[i]) / hr - (y_[i] - y_[i - 1]) / hl;
        if (i > 1) {
            const double w = lower / diag[i - 1];
            diag[i] -= w * upper[i - 1];
            rhs[i] -= w * rhs[i - 1];
        }
    }
    for (std::size_t i = n - 2; i >= 1; --i) {
        m_[i] = (rhs[i] - upper[i] * m_[i + 1]) / diag[i];
        if (i == 1) break;
    }
}

std::size_t CubicSpline::segment(double x) const { return locate(x_, x); }

Jet CubicSpline::operator()(double t) const {
    const std::size_t i = segment(t);
    const double hseg = x_[i + 1] - x_[i];
    const double a = (x_[i + 1] - t) / hseg;
    const double b = (t - x_[i]) / hseg;
    Jet j;
    j.value = a * y_[i] + b * y_[i + 1] + ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * hseg * hseg / 6.0;
    j.d1 = (y_[i + 1] - y_[i]) / hseg - (3.0 * a * a - 1.0) / 6.0 * hseg * m_[i] +
           (3.0 * b * b - 1.0) / 6.0 * hseg * m_[i + 1];
    j.d2 = a * m_[i] + b * m_[i + 1];
    return j;
}

QuinticHermite::QuinticHermite(std::span<const double> x, std::span<const double> y, std::span<const double> dy,
                               std::span<const double> d2y)
    : x_(x.begin(), x.end()), y_(y.begin(), y.end()), dy_(dy.begin(), dy.end()), d2y_(d2y.begin(), d2y.end()) {
    require_ascending(x);
    if (y.size() != x.size() || dy.size() != x.size() || d2y.size() != x.size())
        throw InvalidArgument("Hermite data arrays must match the node count");
}

Jet QuinticHermite::operator()(double t) const {
    const std::size_t i = locate(x_, t);
    const double hseg = x_[i + 1] - x_[i];
    const double c0 = y_[i], c1 = dy_[i], c2 = 0.5 * d2y_[i];
    const double A = y_[i + 1] - (c0 + hseg * (c1 + hseg * c2));
    const double B = dy_[i + 1] - (c1 + 2.0 * c2 * hseg);
    const double C = d2y_[i + 1] - 2.0 * c2;
    const double h2 = hseg * hseg, h3 = h2 * hseg;
    const double c3 = (10.0 * A - 4.0 * B * hseg + 0.5 * C * h2) / h3;
    const double c4 = (-15.0 * A + 7.0 * B * hseg - C * h2) / (h3 * hseg);
    const double c5 = (6.0 * A - 3.0 * B * hseg + 0.5 * C * h2) / (h3 * h2);

    const double tau = t - x_[i];
    Jet j;
    j.value = c0 + tau * (c1 + tau * (c2 + tau * (c3 + tau * (c4 + tau * c5))));
    j.d1 = c1 + tau * (2.0 * c2 + tau * (3.0 * c3 + tau * (4.0 * c4 + tau * 5.0 * c5)));
    j.d2 = 2.0 * c2 + tau * (6.0 * c3 + tau * (12.0 * c4 + tau * 20.0 * c5));
    return j;
}

}  // namespace hopf
