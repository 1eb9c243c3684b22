#include "lplab/vector_io.hpp"

#include <fstream>

namespace lplab {

namespace {

void check_term_keys(const nlohmann::ordered_json& t) {
  for (auto it = t.begin(); it != t.end(); ++it)
    if (it.key() != "element" && it.key() != "re" && it.key() != "im")
      throw DomainError("vector term: unknown key '" + it.key() + "'");
  if (!t.contains("element")) throw DomainError("vector term needs 'element'");
}

// Unwraps the optional object form; returns the term list and the group.
const nlohmann::ordered_json& unwrap(const GroupSpec& fallback,
                                     const nlohmann::ordered_json& j,
                                     GroupSpec& group_out) {
  group_out = fallback;
  if (j.is_array()) return j;
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      if (it.key() != "group" && it.key() != "mode" && it.key() != "terms")
        throw DomainError("vector file: unknown key '" + it.key() + "'");
    if (j.contains("group"))
      group_out = GroupSpec::parse(j["group"].get<std::string>());
    if (!j.contains("terms") || !j["terms"].is_array())
      throw DomainError("vector file: 'terms' list required");
    return j["terms"];
  }
  throw DomainError("vector file: expected a list or an object");
}

nlohmann::ordered_json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read vector file: " + path);
  nlohmann::ordered_json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw DomainError(std::string("vector file parse error: ") + e.what());
  }
  return j;
}

Rational rational_from_json(const nlohmann::ordered_json& v) {
  if (v.is_string()) return Rational::parse(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
  throw DomainError(
      "exact coefficients must be integers or rational strings like \"3/4\"");
}

double double_from_json(const nlohmann::ordered_json& v) {
  if (v.is_number()) return v.get<double>();
  throw DomainError("float coefficients must be JSON numbers");
}

}  // namespace

nlohmann::ordered_json to_json(const GroupVector<ExactScalar>& v) {
  nlohmann::ordered_json out;
  out["group"] = v.group().to_string();
  out["mode"] = "exact";
  nlohmann::ordered_json terms = nlohmann::ordered_json::array();
  for (const auto& t : v.terms()) {
    nlohmann::ordered_json row;
    row["element"] = format_element(v.group(), t.first);
    row["re"] = t.second.re.to_string();
    row["im"] = t.second.im.to_string();
    terms.push_back(std::move(row));
  }
  out["terms"] = std::move(terms);
  return out;
}

nlohmann::ordered_json to_json(const GroupVector<FloatScalar>& v) {
  nlohmann::ordered_json out;
  out["group"] = v.group().to_string();
  out["mode"] = "float";
  nlohmann::ordered_json terms = nlohmann::ordered_json::array();
  for (const auto& t : v.terms()) {
    nlohmann::ordered_json row;
    row["element"] = format_element(v.group(), t.first);
    row["re"] = t.second.real();
    row["im"] = t.second.imag();
    terms.push_back(std::move(row));
  }
  out["terms"] = std::move(terms);
  return out;
}

GroupVector<ExactScalar> exact_vector_from_json(
    const GroupSpec& fallback, const nlohmann::ordered_json& j) {
  GroupSpec group = fallback;
  const auto& terms = unwrap(fallback, j, group);
  std::vector<GroupVector<ExactScalar>::Term> out;
  for (const auto& t : terms) {
    check_term_keys(t);
    GroupElement x = parse_element(group, t["element"].get<std::string>());
    validate_element(group, x);
    ExactScalar c(t.contains("re") ? rational_from_json(t["re"]) : Rational(0),
                  t.contains("im") ? rational_from_json(t["im"]) : Rational(0));
    out.emplace_back(std::move(x), std::move(c));
  }
  return GroupVector<ExactScalar>::from_terms(group, std::move(out));
}

GroupVector<FloatScalar> float_vector_from_json(
    const GroupSpec& fallback, const nlohmann::ordered_json& j) {
  GroupSpec group = fallback;
  const auto& terms = unwrap(fallback, j, group);
  std::vector<GroupVector<FloatScalar>::Term> out;
  for (const auto& t : terms) {
    check_term_keys(t);
    GroupElement x = parse_element(group, t["element"].get<std::string>());
    validate_element(group, x);
    FloatScalar c(t.contains("re") ? double_from_json(t["re"]) : 0.0,
                  t.contains("im") ? double_from_json(t["im"]) : 0.0);
    out.emplace_back(std::move(x), c);
  }
  return GroupVector<FloatScalar>::from_terms(group, std::move(out));
}

GroupVector<ExactScalar> load_exact_vector(const GroupSpec& fallback,
                                           const std::string& path) {
  return exact_vector_from_json(fallback, load_json(path));
}

GroupVector<FloatScalar> load_float_vector(const GroupSpec& fallback,
                                           const std::string& path) {
  return float_vector_from_json(fallback, load_json(path));
}

ExactScalar parse_exact_scalar(const std::string& text) {
  if (text == "i") return ExactScalar(Rational(0), Rational(1));
  if (text == "-i") return ExactScalar(Rational(0), Rational(-1));
  auto comma = text.find(',');
  if (comma == std::string::npos)
    return ExactScalar(Rational::parse(text));
  return ExactScalar(Rational::parse(text.substr(0, comma)),
                     Rational::parse(text.substr(comma + 1)));
}

}  // namespace lplab
