#pragma once

#include <cstdint>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

namespace lplab {

inline constexpr const char* kLibraryVersion = "0.1.0";

// Parsed experiment invocation; flags > config file > defaults. Unknown
// keys in config files are rejected.
struct ExperimentConfig {
  std::string experiment;
  std::string group = "Z";
  double p = 2.0;
  std::int64_t n = 0;
  std::vector<std::int64_t> ns;
  std::int64_t radius = 0;
  std::vector<std::int64_t> radii;
  std::vector<std::int64_t> windows;
  std::int64_t K = 0;
  double epsilon = 0.0;
  std::string omega = "1";
  std::vector<std::string> omegas;
  std::string complex_name = "Z2";
  std::string policy = "clip";
  std::string check = "compose";
  std::string target_path;
  std::string problem_path;
  std::string boundary;
  double residual_tol = 1e-8;
  std::int64_t max_iters = 100000;
  std::uint64_t seed = 0;
  std::int64_t trials = 1000;
  std::string achiever_dir;
  std::string out_path;    // empty -> stdout
  std::string format = "json";  // json | csv

  nlohmann::ordered_json echo() const;
  // Overlays values from a JSON config file; unknown keys are an error.
  void apply_file(const std::string& path);
};

struct ExperimentReport {
  nlohmann::ordered_json config;
  std::vector<nlohmann::ordered_json> rows;
  std::string provenance = "float";  // exact | float | mixed
  bool has_nonconvergence = false;
  double wall_ms = 0.0;

  nlohmann::ordered_json to_json() const;
  // Byte-stable apart from the wall_ms field.
  std::string to_json_string() const;
  // Full decimal precision (17 significant digits).
  std::string to_csv() const;
};

// Renders and writes per config.format/out_path; returns the rendered text.
std::string emit_report(const ExperimentReport& rep,
                        const ExperimentConfig& cfg);

}  // namespace lplab
