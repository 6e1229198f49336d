#include <doctest.h>

#include <cmath>
#include <memory>
#include <vector>
#include <random>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "hopf/errors.hpp"
#include "hopf/interpolation.hpp"
#include "hopf/profile.hpp"
#include "hopf/quadrature.hpp"
#include "support.hpp"

using namespace hopf;

namespace {
const EllipsoidParams kUnit(1, 1, 1, 1);

// Independent reference: double-exponential quadrature of 4h/sin 4u.
double tanh_sinh_I(const EllipsoidParams& params, double base, double s) {
    boost::math::quadrature::tanh_sinh<double> integrator;
    auto f = [&](double u) { return 4 * h(params, u) / std::sin(4 * u); };
    return s >= base ? integrator.integrate(f, base, s, 1e-14) : -integrator.integrate(f, s, base, 1e-14);
}
}  // namespace

TEST_CASE("adaptive Gauss-Kronrod on known integrals") {
    auto r = integrate_adaptive([](double x) { return std::sqrt(x); }, 0.0, 1.0, 1e-12);
    CHECK(r.value == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    r = integrate_adaptive([](double x) { return std::exp(x); }, 0.0, 2.0, 1e-13);
    CHECK(r.value == doctest::Approx(std::exp(2.0) - 1).epsilon(1e-13));
    r = integrate_adaptive([](double x) { return std::log(x); }, 1e-12, 1.0, 1e-10);
    CHECK(r.value == doctest::Approx(-1.0).epsilon(1e-9));
    CHECK(integrate_adaptive([](double) { return 1.0; }, 2.0, 1.0, 1e-10).value == doctest::Approx(-1.0));
    CHECK_THROWS_AS(integrate_adaptive([](double x) { return 1 / std::sqrt(x); }, 0.0, 1.0, 1e-14, 1e-15, 45),
                    ToleranceNotMet);
}

TEST_CASE("quadrature of the profile exponent") {
    for (Branch b : kAllBranches) {
        const Interval iv{b};
        CHECK(quadrature_I(kUnit, iv, iv.base(), iv.base(), 1e-10) == 0.0);
        const QuadratureTable table(kUnit, iv, 1e-10);
        CHECK(table.integral(iv.base()) == 0.0);
    }
}

TEST_CASE("constant h: exponent is A log|tan 2s|") {
    const EllipsoidParams params(1.3, 0.6, 1.3, 0.6);
    const double A = std::hypot(1.3, 0.6);
    std::mt19937_64 gen(89);
    for (Branch b : kAllBranches) {
        const Interval iv{b};
        const QuadratureTable table(params, iv, 1e-10);
        for (int i = 0; i < 200; ++i) {
            const double s = test::uniform(gen, iv.lo() + 1e-6, iv.hi() - 1e-6);
            const double exact = A * std::log(std::abs(std::tan(2 * s)));
            CHECK(std::abs(table.integral(s) - exact) < 1e-9 * std::max(1.0, std::abs(exact)));
            if (i % 20 == 0) CHECK(std::abs(quadrature_I(params, iv, iv.base(), s, 1e-10) - exact) < 1e-9 * std::max(1.0, std::abs(exact)));
        }
    }
}

TEST_CASE("table and direct quadrature agree with a tanh-sinh reference") {
    std::mt19937_64 gen(97);
    for (int trial = 0; trial < 12; ++trial) {
        const auto params = test::random_params(gen);
        const Branch b = kAllBranches[static_cast<std::size_t>(trial % 4)];
        const Interval iv{b};
        const QuadratureTable table(params, iv, 1e-10);
        for (int i = 0; i < 50; ++i) {
            const double s = test::uniform(gen, iv.lo() + 1e-4, iv.hi() - 1e-4);
            const double ref = tanh_sinh_I(params, iv.base(), s);
            const double tol = 1e-10 * std::max(1.0, std::abs(ref));
            CHECK(std::abs(table.integral(s) - ref) < tol);
            if (i % 10 == 0) CHECK(std::abs(quadrature_I(params, iv, iv.base(), s, 1e-10) - ref) < tol);
            CHECK(table.derivative(s) == doctest::Approx(4 * h(params, s) / std::sin(4 * s)).epsilon(1e-14));
        }
    }
}

TEST_CASE("exponent is monotone on each branch") {
    const EllipsoidParams params(2, 1, 3, 1.5);
    for (Branch b : kAllBranches) {
        const Interval iv{b};
        const QuadratureTable table(params, iv, 1e-10);
        double prev = table.integral(iv.lo() + 1e-8);
        for (int i = 1; i <= 1000; ++i) {
            const double cur = table.integral(iv.lo() + 1e-8 + (kQuarterPi - 2e-8) * i / 1000.0);
            CHECK(table.sign() * (cur - prev) > 0.0);
            prev = cur;
        }
    }
}

TEST_CASE("quadrature refuses points outside the branch") {
    const QuadratureTable table(kUnit, Interval{Branch::Q5}, 1e-10);
    CHECK_THROWS_AS(table.integral(1.0), OutOfInterval);
    CHECK_THROWS_AS(table.integral(1e-10), SingularLocus);
    CHECK_THROWS_AS(quadrature_I(kUnit, Interval{Branch::B2}, 3 * kPi / 8, 0.3, 1e-10), OutOfInterval);
}

TEST_CASE("closed-form values at the base points") {
    const EllipsoidParams params(2, 1, 3, 1.5);
    for (double c : {0.5, 1.0, 2.0}) CHECK(closed_form_alpha(Branch::Q5, c, params, kPi / 8) == doctest::Approx(2 * std::atan(c)));
    CHECK(closed_form_alpha(Branch::Q5, 1.0, params, kPi / 8) == doctest::Approx(kPi / 2).epsilon(1e-15));
    CHECK(closed_form_alpha(Branch::B2, 1.0, params, 3 * kPi / 8) == doctest::Approx(3 * kPi / 2).epsilon(1e-15));
    CHECK(closed_form_alpha(Branch::B3, 1.0, params, 5 * kPi / 8) == doctest::Approx(5 * kPi / 2).epsilon(1e-15));
    CHECK(closed_form_alpha(Branch::B4, 1.0, params, 7 * kPi / 8) == doctest::Approx(7 * kPi / 2).epsilon(1e-15));
}

TEST_CASE("integration constant round-trips through alpha at the base") {
    std::mt19937_64 gen(101);
    std::vector<std::shared_ptr<const QuadratureTable>> tables;
    for (Branch b : kAllBranches) tables.push_back(std::make_shared<const QuadratureTable>(kUnit, Interval{b}));
    for (int i = 0; i < 200; ++i) {
        const double c = std::exp(test::uniform(gen, -3, 3));
        for (const auto& table : tables) {
            const Profile p = Profile::closed_form(table, c);
            CHECK(std::abs(std::tan(p.alpha(p.base_s()) / 2)) == doctest::Approx(c).epsilon(1e-12));
            CHECK(p.c() == doctest::Approx(c).epsilon(1e-15));
        }
    }
}

TEST_CASE("constant h: quadrature and analytic forms agree") {
    for (auto a : {std::array<double, 4>{1, 1, 1, 1}, std::array<double, 4>{1, 2, 1, 2}, std::array<double, 4>{0.4, 3, 0.4, 3}}) {
        const EllipsoidParams params(a);
        const double A = std::hypot(a[0], a[1]);
        for (Branch b : kAllBranches)
            for (double c : {0.5, 1.0, 2.0}) {
                const Profile closed = Profile::closed_form(params, b, c);
                const Profile analytic = Profile::constant_h(params, b, c);
                CHECK(analytic.A() == doctest::Approx(A));
                const Interval iv{b};
                double sup = 0.0;
                for (int i = 0; i < 2048; ++i) {
                    const double s = iv.lo() + 1e-3 + (kQuarterPi - 2e-3) * i / 2047.0;
                    sup = std::max(sup, std::abs(closed.alpha(s) - analytic.alpha(s)));
                }
                CHECK(sup < 1e-9);
            }
        // The explicit power form on the first branch.
        for (double s : {0.01, 0.2, 0.7})
            CHECK(Profile::constant_h(params, Branch::Q5, 1.5).alpha(s) ==
                  doctest::Approx(2 * std::atan(1.5 * std::pow(std::tan(2 * s), A))).epsilon(1e-13));
    }
    CHECK_THROWS_AS(Profile::constant_h(EllipsoidParams(1, 2, 3, 4), Branch::Q5, 1.0), InvalidArgument);
}

TEST_CASE("closed-form jets match differences of alpha") {
    const EllipsoidParams params(2, 1, 3, 1.5);
    std::mt19937_64 gen(103);
    for (Branch b : kAllBranches) {
        const Profile p = Profile::closed_form(params, b, 0.7);
        const Interval iv{b};
        for (int i = 0; i < 50; ++i) {
            const double s = test::uniform(gen, iv.lo() + 0.05, iv.hi() - 0.05);
            const double d = 1e-5;
            const ProfileJet j = p.jet(s);
            const double d1 = (p.alpha(s + d) - p.alpha(s - d)) / (2 * d);
            const double d2 = (p.jet(s + d).alpha_prime - p.jet(s - d).alpha_prime) / (2 * d);
            CHECK(j.alpha_prime == doctest::Approx(d1).epsilon(1e-7));
            CHECK(std::abs(j.alpha_second - d2) <= 1e-6 * std::max(1.0, std::abs(d2)));
            CHECK(j.sin_alpha == doctest::Approx(std::sin(j.alpha)).epsilon(1e-12));
            CHECK(j.cos_alpha == doctest::Approx(std::cos(j.alpha)).epsilon(1e-12));
        }
    }
}

TEST_CASE("profile values stay in the branch window and increase") {
    const EllipsoidParams params(1, 2, 3, 4);
    for (Branch b : kAllBranches)
        for (double c : {1e-3, 0.5, 1.0, 2.0, 1e3}) {
            const Profile p = Profile::closed_form(params, b, c);
            const Interval iv{b};
            double prev = -1.0;
            for (int i = 0; i < 1000; ++i) {
                const double s = iv.lo() + 1e-3 + (kQuarterPi - 2e-3) * i / 999.0;
                const ProfileJet j = p.jet(s);
                CHECK(j.alpha > iv.alpha_lo());
                CHECK(j.alpha < iv.alpha_hi());
                CHECK(j.alpha_prime > 0.0);
                CHECK(j.alpha >= prev);
                prev = j.alpha;
            }
        }
}

TEST_CASE("profiles refuse evaluation off their domain") {
    const Profile p = Profile::closed_form(kUnit, Branch::B2, 1.0);
    CHECK_THROWS_AS(p.alpha(0.3), OutOfInterval);
    CHECK_THROWS_AS(p.alpha(kQuarterPi), SingularLocus);
    CHECK_NOTHROW(p.alpha(kQuarterPi + 2e-9));
    CHECK_THROWS_AS(Profile::closed_form(kUnit, Branch::Q5, 0.0), InvalidArgument);
    CHECK_THROWS_AS(Profile::closed_form(kUnit, Branch::Q5, -1.0), InvalidArgument);
}

TEST_CASE("exponent overflow saturates to the limits") {
    const Interval q5{Branch::Q5}, b4{Branch::B4};
    CHECK(alpha_from_exponent(q5, 800.0) == kPi);
    CHECK(alpha_from_exponent(q5, -800.0) == 0.0);
    CHECK(alpha_from_exponent(b4, 800.0) == doctest::Approx(3 * kPi));
    CHECK(alpha_from_exponent(b4, -800.0) == doctest::Approx(4 * kPi));
    const Profile p = Profile::closed_form_from_log_c(std::make_shared<const QuadratureTable>(kUnit, q5, 1e-10), 700.0);
    const auto [below, above] = p.window_gaps(0.5);
    CHECK(below > 3.0);
    CHECK(above >= 0.0);
    CHECK(std::isfinite(p.jet(0.5).alpha_second));
}

TEST_CASE("grid profiles") {
    std::vector<double> s, a;
    for (int i = 0; i < 200; ++i) {
        s.push_back(0.01 + 0.76 * i / 199.0);
        a.push_back(closed_form_alpha(Branch::Q5, 1.0, kUnit, s.back()));
    }
    const Profile g = Profile::grid(Branch::Q5, s, a);
    CHECK(g.form() == ProfileForm::Grid);
    CHECK(g.alpha(0.3) == doctest::Approx(closed_form_alpha(Branch::Q5, 1.0, kUnit, 0.3)).epsilon(1e-6));
    CHECK_THROWS_AS(g.alpha(0.005), OutOfInterval);
    CHECK_THROWS_AS(g.alpha(0.78), OutOfInterval);

    auto bad = a;
    std::swap(bad[10], bad[11]);
    CHECK_THROWS_AS(Profile::grid(Branch::Q5, s, bad), NonMonotoneProfile);
    auto outside = s;
    outside.back() = 0.9;
    CHECK_THROWS_AS(Profile::grid(Branch::Q5, outside, a), OutOfInterval);
}

TEST_CASE("boundary certificates") {
    SUBCASE("first branch") {
        const Profile p = Profile::closed_form(kUnit, Branch::Q5, 1.0);
        CHECK(p.alpha(1e-4) < p.alpha(1e-3));
        CHECK(p.alpha(1e-3) < p.alpha(1e-2));
        CHECK(p.alpha(1e-4) < 0.05);
        CHECK(kPi - p.alpha(kQuarterPi - 1e-4) < kPi - p.alpha(kQuarterPi - 1e-3));
        const auto cert = boundary_certificate(p);
        CHECK(cert.passed());
        CHECK(cert.lower.limit == 0.0);
        CHECK(cert.upper.limit == kPi);
        CHECK(cert.lower.probes.size() == 3);
        CHECK(cert.lower.final_distance < 0.05);
    }
    SUBCASE("all branches and constants") {
        const double limits[4][2] = {{0, kPi}, {kPi, 2 * kPi}, {2 * kPi, 3 * kPi}, {3 * kPi, 4 * kPi}};
        for (auto params : {kUnit, EllipsoidParams(1, 2, 3, 4), EllipsoidParams(0.3, 0.2, 0.5, 0.4)})
            for (Branch b : kAllBranches)
                for (double c : {0.5, 1.0, 2.0}) {
                    const auto cert = boundary_certificate(Profile::closed_form(params, b, c));
                    CAPTURE(b);
                    CHECK(cert.passed());
                    CHECK(cert.lower.limit == limits[static_cast<int>(b)][0]);
                    CHECK(cert.upper.limit == limits[static_cast<int>(b)][1]);
                }
    }
    SUBCASE("last branch approaches 4 pi") {
        const auto cert = boundary_certificate(Profile::closed_form(kUnit, Branch::B4, 1.0));
        CHECK(cert.upper.endpoint == doctest::Approx(kPi));
        CHECK(cert.upper.final_distance < 0.05);
        CHECK(cert.upper.probes.back().alpha < 4 * kPi);
    }
    SUBCASE("flags are recomputed from probes") {
        auto cert = boundary_certificate(Profile::closed_form(kUnit, Branch::B3, 1.0));
        std::swap(cert.lower.probes[0], cert.lower.probes[2]);
        recompute_certificate_flags(cert.lower, 2 * kPi, 3 * kPi);
        CHECK_FALSE(cert.lower.monotone);
        CHECK_FALSE(cert.passed());
    }
}

TEST_CASE("natural cubic spline") {
    std::vector<double> x, y;
    for (int i = 0; i <= 10; ++i) {
        x.push_back(i * 0.3);
        y.push_back(2 * x.back() - 1);
    }
    const CubicSpline line(x, y);
    const Jet j = line(1.234);
    CHECK(j.value == doctest::Approx(2 * 1.234 - 1).epsilon(1e-14));
    CHECK(j.d1 == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(std::abs(j.d2) < 1e-12);
    CHECK_THROWS_AS(line(-0.1), OutOfInterval);

    auto error = [](int n) {
        std::vector<double> xs, ys;
        for (int i = 0; i <= n; ++i) {
            xs.push_back(kPi * i / n);
            ys.push_back(std::sin(xs.back()));
        }
        const CubicSpline sp(xs, ys);
        double worst = 0.0;
        for (int i = 0; i < 1000; ++i) {
            const double t = 0.5 + 2.0 * i / 999.0;
            worst = std::max(worst, std::abs(sp(t).value - std::sin(t)));
        }
        return worst;
    };
    CHECK(std::log2(error(40) / error(80)) > 3.8);
}

TEST_CASE("quintic Hermite reproduces quintics") {
    auto f = [](double t) { return Jet{1 + t - 2 * t * t * t + 0.5 * std::pow(t, 5), 1 - 6 * t * t + 2.5 * std::pow(t, 4), -12 * t + 10 * std::pow(t, 3)}; };
    std::vector<double> x{0.0, 0.3, 1.1, 1.5, 2.6}, y, d1, d2;
    for (double t : x) {
        y.push_back(f(t).value);
        d1.push_back(f(t).d1);
        d2.push_back(f(t).d2);
    }
    const QuinticHermite q(x, y, d1, d2);
    for (double t : {0.1, 0.77, 1.3, 2.0, 2.6}) {
        CHECK(q(t).value == doctest::Approx(f(t).value).epsilon(1e-13));
        CHECK(q(t).d1 == doctest::Approx(f(t).d1).epsilon(1e-12));
        CHECK(q(t).d2 == doctest::Approx(f(t).d2).epsilon(1e-11));
    }
    CHECK_THROWS_AS(q(2.7), OutOfInterval);
}
