// Batch experiment runner: one subcommand per experiment family, JSON/CSV
// reports, deterministic for a fixed config and seed.
//
// Exit codes: 0 ok, 2 config error, 3 resource cap, 4 non-convergence
// present in the report, 5 internal invariant violation.

#include <CLI11.hpp>
#include <iostream>
#include <string>

#include "lplab/errors.hpp"
#include "lplab/experiments.hpp"

namespace {

// --config files sit below command-line flags; scan for the path first,
// load, then let the parser overwrite.
std::string prescan_config_path(int argc, char** argv) {
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--config") return argv[i + 1];
  return {};
}

}  // namespace

int main(int argc, char** argv) {
  lplab::ExperimentConfig cfg;
  std::string config_path = prescan_config_path(argc, argv);
  if (!config_path.empty()) {
    try {
      cfg.apply_file(config_path);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    }
  }

  CLI::App app{
      "lplab: group-ring averaging, p-Dirichlet energy, and truncated "
      "cohomology experiments on finitely generated groups"};
  app.require_subcommand(1);
  bool want_selftest = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--group", cfg.group,
                    "group spec: Z, Z^d, F<k>, C<m>, products with x");
    sub->add_option("--p", cfg.p, "exponent p > 1");
    sub->add_option("--seed", cfg.seed, "RNG seed (default 0)");
    sub->add_option("--out", cfg.out_path, "output file (default stdout)");
    sub->add_option("--format", cfg.format, "json | csv");
    std::string dummy;
    sub->add_option("--config", dummy, "JSON config file (flags win)");
    sub->add_flag("--selftest", want_selftest,
                  "run the module invariant suite instead of the experiment");
  };

  auto* averaging = app.add_subcommand(
      "averaging", "averaging element x_n and its p-norm law");
  add_common(averaging);
  averaging->add_option("--n", cfg.n, "averaging length");
  averaging->add_option("--ns", cfg.ns, "sweep of lengths")->delimiter(',');
  averaging->add_option("--omega", cfg.omega, "unit omega: 1, -1, i, -i, a/b,c/d");

  auto* young = app.add_subcommand(
      "young", "randomized Young inequality trials (plain and tuple forms)");
  add_common(young);
  young->add_option("--trials", cfg.trials, "number of randomized pairs");

  auto* witness = app.add_subcommand(
      "witness", "factor witness d with 1 - x_n = (g - omega) d, exact");
  add_common(witness);
  witness->add_option("--n", cfg.n, "averaging length");
  witness->add_option("--ns", cfg.ns, "sweep")->delimiter(',');
  witness->add_option("--omega", cfg.omega, "exact unit omega");

  auto* neumann = app.add_subcommand(
      "neumann", "truncated Neumann inverse of (g - omega), |omega| != 1");
  add_common(neumann);
  neumann->add_option("--K", cfg.K, "truncation order");
  neumann->add_option("--omega", cfg.omega, "exact omega off the unit circle");

  auto* density = app.add_subcommand(
      "density", "one-factor density step with exact membership witness");
  add_common(density);
  density->add_option("--epsilon", cfg.epsilon, "target error");
  density->add_option("--omega", cfg.omega, "exact unit omega");
  density->add_option("--n", cfg.n, "force n instead of the recipe");
  density->add_option("--target", cfg.target_path, "vector JSON for b");

  auto* composed = app.add_subcommand(
      "composed-density", "multi-factor dense-range chain, epsilon-halving");
  add_common(composed);
  composed->add_option("--epsilon", cfg.epsilon, "target error");
  composed->add_option("--omegas", cfg.omegas, "unit omegas, e.g. 1,-1")
      ->delimiter(',');
  composed->add_option("--target", cfg.target_path, "vector JSON for b");

  auto* dirichlet = app.add_subcommand(
      "dirichlet", "p-Dirichlet boundary problem on a Cayley ball");
  add_common(dirichlet);
  dirichlet->add_option("--radius", cfg.radius, "ball radius");
  dirichlet->add_option("--boundary", cfg.boundary,
                        "frontier values v1,v2,... in ball order");
  dirichlet->add_option("--problem", cfg.problem_path, "problem JSON file");
  dirichlet->add_option("--residual-tol", cfg.residual_tol,
                        "max interior |Delta_p f| at convergence");
  dirichlet->add_option("--max-iters", cfg.max_iters, "iteration cap");

  auto* cohomology = app.add_subcommand(
      "cohomology", "complex checks and truncated-window experiments");
  add_common(cohomology);
  cohomology->add_option("--complex", cfg.complex_name,
                         "Z | Z2 | F<k> | file.json");
  cohomology->add_option("--check", cfg.check,
                         "compose | sigma-min | distance | invariants");
  cohomology->add_option("--policy", cfg.policy, "clip | extend");
  cohomology->add_option("--window", cfg.radius, "window ball radius");
  cohomology->add_option("--windows", cfg.windows, "window sweep")
      ->delimiter(',');
  cohomology->add_option("--radius", cfg.radius, "radius (invariants check)");
  cohomology->add_option("--target", cfg.target_path,
                         "target vector JSON (distance check)");

  auto* amenability = app.add_subcommand(
      "amenability", "windowed Sobolev quotient lambda(R) sweep");
  add_common(amenability);
  amenability->add_option("--radius", cfg.radius, "single radius");
  amenability->add_option("--radii", cfg.radii, "radius sweep")->delimiter(',');
  amenability->add_option("--achiever-dir", cfg.achiever_dir,
                          "directory for achiever JSON files");

  auto* tilf = app.add_subcommand(
      "tilf-diff", "exact Diff-span decomposition or averaging approximation");
  add_common(tilf);
  tilf->add_option("--target", cfg.target_path, "vector JSON for the target");
  tilf->add_option("--epsilon", cfg.epsilon,
                   "approximation tolerance (non-zero-sum targets)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  cfg.experiment = app.get_subcommands().front()->get_name();
  if (want_selftest) return lplab::selftest(cfg.experiment) == 0 ? 0 : 1;

  try {
    auto rep = lplab::run(cfg);
    std::string text = lplab::emit_report(rep, cfg);
    if (cfg.out_path.empty()) std::cout << text;
    return rep.has_nonconvergence ? 4 : 0;
  } catch (const lplab::InternalError& e) {
    std::cerr << "internal invariant violation: " << e.what() << "\n";
    return 5;
  } catch (const lplab::ResourceLimitError& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return 3;
  } catch (const lplab::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
