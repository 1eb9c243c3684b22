#include "lplab/report.hpp"

#include <cstdio>
#include <fstream>
#include <set>

#include "lplab/errors.hpp"

namespace lplab {

namespace {

std::string csv_cell(const nlohmann::ordered_json& v) {
  if (v.is_number_float()) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
    return buf;
  }
  if (v.is_string()) {
    std::string s = v.get<std::string>();
    bool quote = s.find_first_of(",\"\n") != std::string::npos;
    if (!quote) return s;
    std::string out = "\"";
    for (char c : s) {
      if (c == '"') out += '"';
      out += c;
    }
    return out + "\"";
  }
  return v.dump();
}

}  // namespace

nlohmann::ordered_json ExperimentConfig::echo() const {
  nlohmann::ordered_json j;
  j["experiment"] = experiment;
  j["group"] = group;
  j["p"] = p;
  if (n) j["n"] = n;
  if (!ns.empty()) j["ns"] = ns;
  if (radius) j["radius"] = radius;
  if (!radii.empty()) j["radii"] = radii;
  if (!windows.empty()) j["windows"] = windows;
  if (K) j["K"] = K;
  if (epsilon != 0.0) j["epsilon"] = epsilon;
  j["omega"] = omega;
  if (!omegas.empty()) j["omegas"] = omegas;
  if (experiment == "cohomology") {
    j["complex"] = complex_name;
    j["policy"] = policy;
    j["check"] = check;
  }
  if (!target_path.empty()) j["target"] = target_path;
  if (!problem_path.empty()) j["problem"] = problem_path;
  if (!boundary.empty()) j["boundary"] = boundary;
  if (experiment == "dirichlet") {
    j["residual_tol"] = residual_tol;
    j["max_iters"] = max_iters;
  }
  j["seed"] = seed;
  if (experiment == "young") j["trials"] = trials;
  return j;
}

void ExperimentConfig::apply_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("config file not readable: " + path);
  nlohmann::ordered_json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw DomainError(std::string("config file parse error: ") + e.what());
  }
  static const std::set<std::string> known = {
      "experiment", "group",   "p",        "n",            "ns",
      "radius",     "radii",   "windows",  "K",            "epsilon",
      "omega",      "omegas",  "complex",  "policy",       "check",
      "target",     "problem", "boundary", "residual_tol", "max_iters",
      "seed",       "trials",  "achiever_dir", "out",      "format"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!known.count(it.key()))
      throw DomainError("config file: unknown key '" + it.key() + "'");
  auto get = [&](const char* k, auto& slot) {
    if (j.contains(k)) slot = j[k].get<std::decay_t<decltype(slot)>>();
  };
  get("experiment", experiment);
  get("group", group);
  get("p", p);
  get("n", n);
  get("ns", ns);
  get("radius", radius);
  get("radii", radii);
  get("windows", windows);
  get("K", K);
  get("epsilon", epsilon);
  get("omega", omega);
  get("omegas", omegas);
  get("complex", complex_name);
  get("policy", policy);
  get("check", check);
  get("target", target_path);
  get("problem", problem_path);
  get("boundary", boundary);
  get("residual_tol", residual_tol);
  get("max_iters", max_iters);
  get("seed", seed);
  get("trials", trials);
  get("achiever_dir", achiever_dir);
  get("out", out_path);
  get("format", format);
}

nlohmann::ordered_json ExperimentReport::to_json() const {
  nlohmann::ordered_json j;
  if (config.contains("experiment")) j["experiment"] = config["experiment"];
  nlohmann::ordered_json params = config;
  params.erase("experiment");
  j["params"] = std::move(params);
  j["rows"] = rows;
  j["provenance"] = provenance;
  j["nonconvergence"] = has_nonconvergence;
  j["version"] = kLibraryVersion;
  j["wall_ms"] = wall_ms;
  return j;
}

std::string ExperimentReport::to_json_string() const {
  return to_json().dump(2) + "\n";
}

std::string ExperimentReport::to_csv() const {
  // Column order: keys in first-seen order across rows.
  std::vector<std::string> cols;
  std::set<std::string> seen;
  for (const auto& row : rows)
    for (auto it = row.begin(); it != row.end(); ++it)
      if (seen.insert(it.key()).second) cols.push_back(it.key());
  std::string out;
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (i) out += ",";
    out += cols[i];
  }
  out += "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < cols.size(); ++i) {
      if (i) out += ",";
      if (row.contains(cols[i])) out += csv_cell(row[cols[i]]);
    }
    out += "\n";
  }
  return out;
}

std::string emit_report(const ExperimentReport& rep,
                        const ExperimentConfig& cfg) {
  if (cfg.format != "csv" && cfg.format != "json")
    throw DomainError("format must be json or csv");
  std::string text = cfg.format == "csv" ? rep.to_csv() : rep.to_json_string();
  if (!cfg.out_path.empty()) {
    std::ofstream out(cfg.out_path);
    if (!out) throw DomainError("cannot write output file: " + cfg.out_path);
    out << text;
  }
  return text;
}

}  // namespace lplab
