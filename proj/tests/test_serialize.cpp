#include <doctest.h>

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

#include "hopf/errors.hpp"
#include "hopf/serialize.hpp"
#include "hopf/shooting.hpp"
#include "support.hpp"

using namespace hopf;

TEST_CASE("hex floats round-trip bit-exactly") {
    std::mt19937_64 gen(107);
    int checked = 0;
    while (checked < 20000) {
        const double x = std::bit_cast<double>(gen());
        if (!std::isfinite(x)) continue;
        ++checked;
        const double back = parse_hex(format_hex(x));
        REQUIRE(std::bit_cast<std::uint64_t>(back) == std::bit_cast<std::uint64_t>(x));
        REQUIRE(std::bit_cast<std::uint64_t>(parse_hex(format_shortest(x))) == std::bit_cast<std::uint64_t>(x));
    }
    for (double x : {0.0, -0.0, 1.0, -2.5, std::numeric_limits<double>::denorm_min(), std::numeric_limits<double>::max()})
        CHECK(std::bit_cast<std::uint64_t>(parse_hex(format_hex(x))) == std::bit_cast<std::uint64_t>(x));
    CHECK(format_hex(1.0) == "0x1p+0");
    CHECK(format_hex(-0.75) == "-0x1.8p-1");
    CHECK(format_shortest(0.1) == "0.1");
    CHECK_THROWS_AS(parse_hex("0x1.2q"), InvalidArgument);
    CHECK_THROWS_AS(parse_hex(""), InvalidArgument);
}

TEST_CASE("coordinates serialise as arrays in the documented order") {
    const JoinCoordinate w({0.1, 0.2, 0.3, 0.4}, 0.5);
    const Json j = to_json(w);
    CHECK(j.dump() == "[0.1,0.2,0.3,0.4,0.5]");
    const JoinCoordinate back = join_coordinate_from_json(j);
    CHECK(back.theta() == w.theta());
    CHECK(back.s() == w.s());

    const AmbientPoint p = embed(EllipsoidParams(1, 2, 3, 4), w);
    const Json pj = to_json(p);
    CHECK(pj.size() == 8);
    CHECK(pj[0].get<double>() == p.x[0]);
    CHECK(pj[1].get<double>() == p.x[1]);
    CHECK(ambient_point_from_json(Json::parse(pj.dump())).x == p.x);
    CHECK_THROWS_AS(join_coordinate_from_json(Json::array({1, 2})), InvalidArgument);
}

TEST_CASE("grid profiles round-trip bit-exactly") {
    const EllipsoidParams p(1, 1, 1, 1);
    const WindingNumbers k(1, 1, 1, 1);
    const Trajectory t = integrate_span(p, k, kPi / 8, kPi / 2, 4 * std::sqrt(2.0), 0.01, 0.77);
    for (const Profile& g : {to_profile(t), Profile::grid(Branch::Q5, t.s, t.alpha)}) {
        const Profile back = profile_from_json(Json::parse(to_json(g).dump()));
        CHECK(back.form() == ProfileForm::Grid);
        CHECK(back.has_derivative_data() == g.has_derivative_data());
        REQUIRE(back.nodes().size() == g.nodes().size());
        for (std::size_t i = 0; i < g.nodes().size(); ++i) {
            CHECK(back.nodes()[i] == g.nodes()[i]);
            CHECK(back.values()[i] == g.values()[i]);
        }
        for (double s : {0.02, 0.3, 0.5}) CHECK(back.alpha(s) == g.alpha(s));
    }
}

TEST_CASE("analytic profiles round-trip") {
    std::mt19937_64 gen(109);
    for (int i = 0; i < 20; ++i) {
        const auto params = test::random_params(gen);
        const Branch b = kAllBranches[static_cast<std::size_t>(i % 4)];
        const double c = std::exp(test::uniform(gen, -2, 2));
        const Profile closed = Profile::closed_form(params, b, c);
        const Json j = to_json(closed);
        CHECK(j["branch"] == std::string(to_string(b)));
        CHECK(j["offset"].get<double>() == closed.offset());
        const Profile back = profile_from_json(Json::parse(j.dump()));
        CHECK(back.log_c() == closed.log_c());
        const Interval iv{b};
        for (double s : {iv.lo() + 0.01, iv.base(), iv.hi() - 0.01}) CHECK(back.alpha(s) == closed.alpha(s));
    }
    const Profile ch = Profile::constant_h(EllipsoidParams(1, 2, 1, 2), Branch::B3, 0.3);
    const Profile back = profile_from_json(Json::parse(to_json(ch).dump()));
    CHECK(back.form() == ProfileForm::ConstantH);
    CHECK(back.A() == ch.A());
    CHECK(back.alpha(2.0) == ch.alpha(2.0));
    CHECK_THROWS_AS(profile_from_json(Json::parse(R"({"branch":"Q5","form":"spline"})")), InvalidArgument);
    CHECK_THROWS_AS(profile_from_json(Json::parse(R"({"branch":"Q5","form":"grid"})")), InvalidArgument);
}
