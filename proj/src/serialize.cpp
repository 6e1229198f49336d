#include "hopf/serialize.hpp"

#include <charconv>
#include <cmath>
#include <memory>

#include "hopf/errors.hpp"

namespace hopf {

std::string format_shortest(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string format_hex(double x) {
    if (!std::isfinite(x)) return format_shortest(x);
    char buf[64];
    const bool negative = std::signbit(x);
    const auto res = std::to_chars(buf, buf + sizeof buf, std::abs(x), std::chars_format::hex);
    return std::string(negative ? "-0x" : "0x") + std::string(buf, res.ptr);
}

double parse_hex(std::string_view text) {
    bool negative = false;
    if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    double value = 0.0;
    std::from_chars_result res{};
    if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
        text.remove_prefix(2);
        res = std::from_chars(text.data(), text.data() + text.size(), value, std::chars_format::hex);
    } else {
        res = std::from_chars(text.data(), text.data() + text.size(), value);
    }
    if (res.ec != std::errc() || res.ptr != text.data() + text.size())
        throw InvalidArgument("cannot parse floating-point value '" + std::string(text) + "'");
    return negative ? -value : value;
}

Json hex_array(std::span<const double> values) {
    Json out = Json::array();
    for (double v : values) out.push_back(format_hex(v));
    return out;
}

std::vector<double> parse_hex_array(const Json& array) {
    if (!array.is_array()) throw InvalidArgument("expected a JSON array of hex floats");
    std::vector<double> out;
    out.reserve(array.size());
    for (const auto& item : array) {
        if (item.is_string()) out.push_back(parse_hex(item.get<std::string>()));
        else if (item.is_number()) out.push_back(item.get<double>());
        else throw InvalidArgument("expected hex-float strings");
    }
    return out;
}

Json to_json(const JoinCoordinate& w) {
    return Json::array({w.theta(0), w.theta(1), w.theta(2), w.theta(3), w.s()});
}

JoinCoordinate join_coordinate_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 5) throw InvalidArgument("join coordinate must be [t1, t2, t3, t4, s]");
    return JoinCoordinate({j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>()},
                          j[4].get<double>());
}

Json to_json(const AmbientPoint& p) {
    Json out = Json::array();
    for (double v : p.x) out.push_back(v);
    return out;
}

AmbientPoint ambient_point_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 8) throw InvalidArgument("ambient point must have 8 real entries");
    AmbientPoint p;
    for (std::size_t i = 0; i < 8; ++i) p.x[i] = j[i].get<double>();
    return p;
}

Json to_json(const Profile& profile) {
    Json j;
    j["branch"] = std::string(to_string(profile.branch()));
    j["form"] = std::string(to_string(profile.form()));
    switch (profile.form()) {
        case ProfileForm::ClosedForm: {
            const QuadratureTable& table = *profile.table();
            j["c"] = profile.c();
            j["log_c"] = format_hex(profile.log_c());
            j["base_s"] = profile.base_s();
            j["offset"] = profile.offset();
            j["sign"] = profile.sign();
            j["a"] = table.params().values();
            j["quad_tol"] = table.tolerance();
            break;
        }
        case ProfileForm::ConstantH:
            j["c"] = profile.c();
            j["log_c"] = format_hex(profile.log_c());
            j["base_s"] = profile.base_s();
            j["offset"] = profile.offset();
            j["sign"] = profile.sign();
            j["A"] = format_hex(profile.A());
            break;
        case ProfileForm::Grid:
            j["offset"] = profile.offset();
            j["nodes"] = hex_array(profile.nodes());
            j["values"] = hex_array(profile.values());
            if (profile.has_derivative_data()) {
                j["slopes"] = hex_array(profile.slopes());
                j["curvatures"] = hex_array(profile.curvatures());
            }
            break;
    }
    return j;
}

Profile profile_from_json(const Json& j) {
    try {
        const Branch branch = branch_from_string(j.at("branch").get<std::string>());
        const std::string form = j.at("form").get<std::string>();
        if (form == "closed_form") {
            const EllipsoidParams params(j.at("a").get<std::array<double, 4>>());
            auto table = std::make_shared<const QuadratureTable>(params, Interval{branch}, j.at("quad_tol").get<double>());
            return Profile::closed_form_from_log_c(std::move(table), parse_hex(j.at("log_c").get<std::string>()));
        }
        if (form == "constant_h")
            return Profile::constant_h_from_log_c(branch, parse_hex(j.at("A").get<std::string>()),
                                                  parse_hex(j.at("log_c").get<std::string>()));
        if (form == "grid") {
            auto nodes = parse_hex_array(j.at("nodes"));
            auto values = parse_hex_array(j.at("values"));
            if (j.contains("slopes"))
                return Profile::grid(branch, std::move(nodes), std::move(values), parse_hex_array(j.at("slopes")),
                                     parse_hex_array(j.at("curvatures")));
            return Profile::grid(branch, std::move(nodes), std::move(values));
        }
        throw InvalidArgument("unknown profile form '" + form + "'");
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("malformed profile JSON: ") + e.what());
    }
}

}  // namespace hopf
