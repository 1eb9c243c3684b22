#pragma once

#include <string>

#include "lplab/report.hpp"

namespace lplab {

// Dispatches a parsed config to the named experiment. Identical config and
// seed produce byte-identical reports apart from the wall_ms field.
ExperimentReport run(const ExperimentConfig& cfg);

// Condensed module invariant suite for a subcommand; returns the number of
// failed checks (0 = pass) and prints one line per failure.
int selftest(const std::string& experiment);

}  // namespace lplab
