#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace hopf {

/// Value and first two derivatives of a scalar function at a point.
struct Jet {
    double value = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
};

/// Natural cubic spline (zero second derivative at both ends).
class CubicSpline {
public:
    CubicSpline(std::span<const double> x, std::span<const double> y);

    Jet operator()(double x) const;
    double front() const { return x_.front(); }
    double back() const { return x_.back(); }

private:
    std::size_t segment(double x) const;

    std::vector<double> x_, y_, m_;  // m_: second derivatives at the nodes
};

/// C² piecewise quintic through prescribed values, slopes and curvatures.
class QuinticHermite {
public:
    QuinticHermite(std::span<const double> x, std::span<const double> y, std::span<const double> dy,
                   std::span<const double> d2y);

    Jet operator()(double x) const;
    double front() const { return x_.front(); }
    double back() const { return x_.back(); }

private:
    std::vector<double> x_;
    std::vector<double> y_, dy_, d2y_;
};

}  // namespace hopf
