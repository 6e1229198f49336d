#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "hopf/geometry.hpp"
#include "hopf/profile.hpp"

namespace hopf {

using Json = nlohmann::ordered_json;

/// Shortest decimal that parses back to the same double.
std::string format_shortest(double x);
/// C99 hex-float ("0x1.921fb54442d18p+1"), exact.
std::string format_hex(double x);
/// Parses a hex float produced by format_hex (also accepts decimal input).
double parse_hex(std::string_view text);

Json hex_array(std::span<const double> values);
std::vector<double> parse_hex_array(const Json& array);

/// [θ1, θ2, θ3, θ4, s]
Json to_json(const JoinCoordinate& w);
JoinCoordinate join_coordinate_from_json(const Json& j);

/// [re z1, im z1, ..., re z4, im z4]
Json to_json(const AmbientPoint& p);
AmbientPoint ambient_point_from_json(const Json& j);

/// {branch, form, c, base_s, offset, sign, ...}; grid arrays are hex-encoded
/// so that grid profiles round-trip bit-exactly.
Json to_json(const Profile& profile);
Profile profile_from_json(const Json& j);

}  // namespace hopf
