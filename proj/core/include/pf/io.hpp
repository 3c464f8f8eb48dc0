#pragma once

#include "pf/cover.hpp"
#include "pf/form.hpp"
#include "pf/quadrature.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace pf {

using Json = nlohmann::json;

/// Sorted keys, two-space indent, floats as %.{digits}e. NaN and infinities
/// become null. Byte-stable for equal inputs.
std::string canonical_dump(const Json& j, int digits = 12);

/// {dim, degree, terms:[{index, field:{kind, terms}}]}; polynomial and trig
/// coefficients only.
Json form_to_json(const Form& form);
Form form_from_json(const Json& j);

Json geometry_to_json(const Geometry& g);
Geometry geometry_from_json(const Json& j);

/// {geometry, overlap, pieces:[{kind:"box", data:{lo, hi, core_lo, core_hi}}]}.
/// Box endpoints accept numbers or exact "p/q" strings; a "grid" object
/// {cells, overlap} may replace the explicit pieces.
Json cover_to_json(const Cover& cover);
Cover cover_from_json(const Json& j);

Json quad_to_json(const QuadratureSpec& q);
QuadratureSpec quad_from_json(const Json& j);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// Comma-separated table; numbers as %.12e.
std::string csv_table(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows);

std::string rational_to_string(const Rational& q);
Rational rational_from_json(const Json& j);

} // namespace pf
