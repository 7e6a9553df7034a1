#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <json.hpp>

#include "hopf/ray.hpp"

namespace hopf::cli {

using nlohmann::json;

/// Complex numbers serialise as [re, im].
json complex_json(Complex c);
json vector_json(const CVector& v);
json direction_json(const Direction& d);
json vec3_json(const Eigen::Vector3d& v);

/// %.17g: enough digits to round-trip any double.
std::string format_double(double x);

/// 64-bit FNV-1a, rendered as "fnv1a64:<16 hex digits>".
std::string checksum(std::string_view bytes);

}  // namespace hopf::cli
