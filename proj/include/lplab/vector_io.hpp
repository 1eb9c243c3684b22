#pragma once

#include <json.hpp>
#include <string>

#include "lplab/group_io.hpp"
#include "lplab/group_vector.hpp"

namespace lplab {

// Group-vector wire format: a JSON list of {element, re, im} (im optional),
// with exact coefficients as rational strings and float coefficients as
// numbers. An object wrapper {"group": ..., "mode": ..., "terms": [...]} is
// also accepted and produced.

nlohmann::ordered_json to_json(const GroupVector<ExactScalar>& v);
nlohmann::ordered_json to_json(const GroupVector<FloatScalar>& v);

GroupVector<ExactScalar> exact_vector_from_json(const GroupSpec& fallback,
                                                const nlohmann::ordered_json& j);
GroupVector<FloatScalar> float_vector_from_json(const GroupSpec& fallback,
                                                const nlohmann::ordered_json& j);

GroupVector<ExactScalar> load_exact_vector(const GroupSpec& fallback,
                                           const std::string& path);
GroupVector<FloatScalar> load_float_vector(const GroupSpec& fallback,
                                           const std::string& path);

// "1", "-1", "i", "-i", "re" or "re,im" with rational parts.
ExactScalar parse_exact_scalar(const std::string& text);

}  // namespace lplab
