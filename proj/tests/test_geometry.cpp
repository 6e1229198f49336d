#include <doctest.h>

#include <cmath>
#include <random>

#include "hopf/errors.hpp"
#include "hopf/geometry.hpp"
#include "support.hpp"

using namespace hopf;

TEST_CASE("embed at s = 0 with unit semi-axes") {
    const AmbientPoint p = embed(EllipsoidParams(1, 1, 1, 1), JoinCoordinate({0, 0, 0, 0}, 0.0));
    CHECK(std::sqrt(p.modulus_squared(0)) == doctest::Approx(0.0));
    CHECK(std::sqrt(p.modulus_squared(1)) == doctest::Approx(0.70710678).epsilon(1e-8));
    CHECK(std::sqrt(p.modulus_squared(2)) == doctest::Approx(1.0));
    CHECK(std::sqrt(p.modulus_squared(3)) == doctest::Approx(0.70710678).epsilon(1e-8));
    for (std::size_t i = 1; i < 4; ++i) CHECK(p.phase(i) == 0.0);
}

TEST_CASE("embed at s = pi/4") {
    const AmbientPoint p = embed(EllipsoidParams(2, 1, 2, 1), JoinCoordinate({0, 0, 0, 0}, kQuarterPi));
    CHECK(p.x[0] == doctest::Approx(std::sqrt(2.0)));
    CHECK(p.x[2] == doctest::Approx(1.0));
    CHECK(p.x[4] == doctest::Approx(std::sqrt(2.0)));
    CHECK(std::abs(p.x[6]) < 1e-15);
}

TEST_CASE("embed uses the angles as phases") {
    const EllipsoidParams params(1.5, 0.5, 2.0, 3.0);
    const JoinCoordinate w({0.3, 1.2, 4.0, 5.5}, 0.2);
    const AmbientPoint p = embed(params, w);
    CHECK(p.phase(0) == doctest::Approx(0.3));
    CHECK(p.phase(1) == doctest::Approx(1.2));
    CHECK(p.phase(2) == doctest::Approx(4.0));
    CHECK(p.phase(3) == doctest::Approx(5.5));
}

TEST_CASE("h special values") {
    CHECK(h(EllipsoidParams(1, 1, 1, 1), 0.37) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(h(EllipsoidParams(1.3, 0.4, 1.3, 0.4), 2.1) == doctest::Approx(std::hypot(1.3, 0.4)).epsilon(1e-15));
    CHECK(h(EllipsoidParams(2, 1, 1, 1), 0.0) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-15));
}

TEST_CASE("h matches the four-term square root") {
    std::mt19937_64 gen(11);
    for (int i = 0; i < 1000; ++i) {
        const auto params = test::random_params(gen);
        const double s = test::uniform(gen, 0.0, kPi);
        const double direct =
            std::sqrt(params[0] * params[0] * std::pow(std::cos(s), 2) +
                      params[1] * params[1] * std::pow(std::cos(s + kQuarterPi), 2) +
                      params[2] * params[2] * std::pow(std::sin(s), 2) +
                      params[3] * params[3] * std::pow(std::sin(s + kQuarterPi), 2));
        CHECK(h(params, s) == doctest::Approx(direct).epsilon(1e-14));
    }
}

TEST_CASE("h stays bounded away from zero") {
    const EllipsoidParams params(0.3, 2.0, 1.1, 0.05);
    double lowest = h(params, 0.0);
    for (int i = 0; i <= 10000; ++i) lowest = std::min(lowest, h(params, kPi * i / 10000.0));
    const double c0 = lowest - 1e-9;
    REQUIRE(c0 > 0.0);
    std::mt19937_64 gen(3);
    for (int i = 0; i < 1000; ++i) CHECK(h(params, test::uniform(gen, 0.0, kPi)) >= c0);
}

TEST_CASE("h' vanishes for constant h") {
    CHECK(h_prime(EllipsoidParams(1, 1, 1, 1), kPi / 8) == 0.0);
    CHECK(std::abs(h_prime(EllipsoidParams(0.7, 2.5, 0.7, 2.5), 1.9)) < 1e-15);
}

TEST_CASE("h' agrees with central differences of h") {
    const double step = 1e-5;
    auto fd = [&](const EllipsoidParams& p, double s) { return (h(p, s + step) - h(p, s - step)) / (2 * step); };
    const EllipsoidParams p(2, 1, 1, 1);
    CHECK(h_prime(p, kPi / 8) == doctest::Approx(fd(p, kPi / 8)).epsilon(1e-6));

    std::mt19937_64 gen(5);
    for (int i = 0; i < 1000; ++i) {
        const auto params = test::random_params(gen);
        const double s = test::uniform(gen, 0.01, kPi - 0.01);
        const double exact = h_prime(params, s);
        CHECK(std::abs(exact - fd(params, s)) <= 1e-6 * std::max(1.0, std::abs(exact)));
    }
}

TEST_CASE("metric diagonal at pi/8") {
    const auto g = metric_diagonal(EllipsoidParams(1, 1, 1, 1), kPi / 8);
    CHECK(g[0] == doctest::Approx(0.14644661).epsilon(1e-8));
    CHECK(g[1] == doctest::Approx(0.85355339).epsilon(1e-8));
    CHECK(g[2] == doctest::Approx(0.85355339).epsilon(1e-8));
    CHECK(g[3] == doctest::Approx(0.14644661).epsilon(1e-8));
    CHECK(g[4] == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("metric and frame refuse the singular loci") {
    const EllipsoidParams p(1, 1, 1, 1);
    for (double s : {0.0, kQuarterPi, 2 * kQuarterPi, 3 * kQuarterPi, kPi, kQuarterPi + 1e-10}) {
        CHECK_THROWS_AS(metric_diagonal(p, s), SingularLocus);
        CHECK_THROWS_AS(frame_scalings(p, s), SingularLocus);
    }
    CHECK_NOTHROW(metric_diagonal(p, kQuarterPi + 1e-8));
    CHECK_THROWS_AS(metric_diagonal(p, 4.0), InvalidArgument);
}

TEST_CASE("metric entries are positive inside every branch") {
    std::mt19937_64 gen(17);
    for (int i = 0; i < 2000; ++i) {
        const auto params = test::random_params(gen);
        const double s = test::random_interior_s(gen, 1e-6);
        for (double g : metric_diagonal(params, s)) CHECK(g > 0.0);
    }
}

TEST_CASE("frame scalings normalise the metric") {
    CHECK(frame_scalings(EllipsoidParams(1, 1, 1, 1), kPi / 8)[4] == doctest::Approx(1 / std::sqrt(2.0)));
    std::mt19937_64 gen(23);
    for (int i = 0; i < 2000; ++i) {
        const auto params = test::random_params(gen);
        const double s = test::random_interior_s(gen, 1e-3);
        const auto g = metric_diagonal(params, s);
        const auto f = frame_scalings(params, s);
        for (std::size_t j = 0; j < 5; ++j) {
            CHECK(f[j] > 0.0);
            CHECK(std::abs(f[j] * f[j] * g[j] - 1.0) < 1e-14);
        }
    }
}

TEST_CASE("pullback of the Euclidean metric converges at second order") {
    // Symmetric differences: |x(w+δv) - x(w-δv)|² / 4δ² = vᵀ g v + O(δ²).
    std::mt19937_64 gen(29);
    for (int trial = 0; trial < 20; ++trial) {
        const auto params = test::random_params(gen);
        std::array<double, 4> theta{};
        for (double& t : theta) t = test::uniform(gen, 0.0, kTwoPi);
        const JoinCoordinate w(theta, test::random_interior_s(gen, 0.05));
        std::array<double, 5> v{};
        for (double& x : v) x = test::uniform(gen, -1.0, 1.0);
        const auto g = metric_diagonal(params, w.s());
        double exact = 0.0;
        for (std::size_t j = 0; j < 5; ++j) exact += g[j] * v[j] * v[j];

        auto error = [&](double delta) {
            std::array<double, 5> plus{}, minus{};
            for (std::size_t j = 0; j < 5; ++j) {
                plus[j] = delta * v[j];
                minus[j] = -delta * v[j];
            }
            const AmbientPoint a = embed(params, w.displaced(plus));
            const AmbientPoint b = embed(params, w.displaced(minus));
            double d2 = 0.0;
            for (std::size_t j = 0; j < 8; ++j) d2 += (a.x[j] - b.x[j]) * (a.x[j] - b.x[j]);
            return std::abs(d2 / (4 * delta * delta) - exact);
        };
        const double order = std::log2(error(1e-2) / error(5e-3));
        CHECK(order >= 1.9);
    }
}

TEST_CASE("embedded points satisfy the variety equations") {
    SUBCASE("worked point") {
        const EllipsoidParams p(1, 1, 1, 1);
        for (double r : variety_residuals(p, embed(p, JoinCoordinate({0, 0, 0, 0}, 0.0)))) CHECK(std::abs(r) < 1e-15);
    }
    SUBCASE("random sweep") {
        std::mt19937_64 gen(31);
        for (int i = 0; i < 1000; ++i) {
            const auto params = test::random_params(gen);
            std::array<double, 4> theta{};
            for (double& t : theta) t = test::uniform(gen, 0.0, kTwoPi);
            const AmbientPoint p = embed(params, JoinCoordinate(theta, test::uniform(gen, 0.0, kPi)));
            const double scale = std::max(1.0, params.sum_of_squares());
            for (double r : variety_residuals(params, p)) CHECK(std::abs(r) / scale < 1e-12);
            CHECK(std::abs(ellipsoid_residual(params, p)) / scale < 1e-12);
        }
    }
}

TEST_CASE("scaling z1 breaks the first equation") {
    const EllipsoidParams params(1.2, 0.8, 2.0, 1.5);
    AmbientPoint p = embed(params, JoinCoordinate({0.4, 1.0, 2.0, 3.0}, 0.3));
    const double q1 = p.modulus_squared(0) / (params[0] * params[0]);
    p.x[0] *= 1.1;
    p.x[1] *= 1.1;
    CHECK(variety_residuals(params, p)[0] == doctest::Approx(0.21 * q1).epsilon(1e-12));
}

TEST_CASE("ellipsoid residual of the origin") { CHECK(ellipsoid_residual(EllipsoidParams(1, 2, 3, 4), AmbientPoint{}) == -2.0); }

TEST_CASE("join coordinates normalise their angles") {
    const JoinCoordinate w({-0.5, kTwoPi, 7.0, 3.0}, 1.0);
    CHECK(w.theta(0) == doctest::Approx(kTwoPi - 0.5));
    CHECK(w.theta(1) == 0.0);
    CHECK(w.theta(2) == doctest::Approx(7.0 - kTwoPi));
    for (double t : w.theta()) {
        CHECK(t >= 0.0);
        CHECK(t < kTwoPi);
    }
    const JoinCoordinate moved = w.displaced({-1.0, 0.0, 0.0, 0.0, 0.5});
    CHECK(moved.theta(0) == doctest::Approx(kTwoPi - 1.5));
    CHECK(moved.s() == doctest::Approx(1.5));
    CHECK_THROWS_AS(JoinCoordinate({0, 0, 0, 0}, -0.1), InvalidArgument);
    CHECK_THROWS_AS(JoinCoordinate({0, 0, 0, 0}, 3.2), InvalidArgument);
}

TEST_CASE("semi-axes must be positive") {
    CHECK_THROWS_AS(EllipsoidParams(1, 0, 1, 1), InvalidArgument);
    CHECK_THROWS_AS(EllipsoidParams(1, 1, -2, 1), InvalidArgument);
    CHECK_THROWS_AS(EllipsoidParams(1, 1, 1, NAN), InvalidArgument);
}

TEST_CASE("branch intervals") {
    const double lo[] = {0.0, kQuarterPi, 2 * kQuarterPi, 3 * kQuarterPi};
    for (Branch b : kAllBranches) {
        const Interval iv{b};
        CHECK(iv.lo() == lo[iv.index()]);
        CHECK(iv.hi() == doctest::Approx(lo[iv.index()] + kQuarterPi));
        CHECK(iv.base() == doctest::Approx(lo[iv.index()] + kPi / 8));
        CHECK(branch_of(iv.base()) == b);
        CHECK(branch_from_string(to_string(b)) == b);
    }
    CHECK(branch_from_string("b3") == Branch::B3);
    CHECK_THROWS_AS(branch_from_string("b5"), InvalidArgument);
    CHECK(distance_to_singular_locus(0.1) == doctest::Approx(0.1));
    CHECK(distance_to_singular_locus(kQuarterPi + 0.05) == doctest::Approx(0.05));
}
