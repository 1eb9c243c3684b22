#include "lplab/experiments.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <random>
#include <thread>

#include "lplab/complexes.hpp"
#include "lplab/density.hpp"
#include "lplab/dirichlet.hpp"
#include "lplab/group_io.hpp"
#include "lplab/invariance.hpp"
#include "lplab/sobolev.hpp"
#include "lplab/truncation.hpp"
#include "lplab/vector_io.hpp"

namespace lplab {

namespace {

using ordered_json = nlohmann::ordered_json;
using XV = GroupVector<ExactScalar>;

// First standard generator of infinite order; the averaging constructions
// have no runnable instance on finite groups.
GroupElement pick_infinite_generator(const GroupSpec& g) {
  for (const auto& s : GeneratingSet::standard(g).elements)
    if (has_infinite_order(g, s)) return s;
  throw DomainError(
      "group has no infinite-order generator; averaging experiments need an "
      "infinite direction");
}

std::size_t worker_count(std::size_t tasks) {
  std::size_t n = std::thread::hardware_concurrency();
  if (const char* env = std::getenv("LPLAB_WORKERS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v >= 1) n = static_cast<std::size_t>(v);
  }
  if (n == 0) n = 1;
  return std::min(n, std::max<std::size_t>(tasks, 1));
}

// Index-ordered parallel map; output order is by task index, independent of
// completion order.
template <class F>
std::vector<ordered_json> parallel_rows(std::size_t count, F&& fn) {
  std::vector<ordered_json> rows(count);
  std::size_t workers = worker_count(count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) rows[i] = fn(i);
    return rows;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mu;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      while (true) {
        std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          rows[i] = fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return rows;
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw DomainError(msg);
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string tok = text.substr(
        pos, comma == std::string::npos ? std::string::npos : comma - pos);
    try {
      out.push_back(std::stod(tok));
    } catch (const std::exception&) {
      throw DomainError("bad number in list: '" + tok + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

XV seeded_sparse_vector(const GroupSpec& g, std::mt19937_64& rng,
                        int max_terms = 6, int walk = 5) {
  auto gens = GeneratingSet::standard(g);
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  std::uniform_int_distribution<int> len(0, walk);
  std::uniform_int_distribution<std::int64_t> num(-5, 5);
  std::uniform_int_distribution<std::int64_t> den(1, 4);
  std::uniform_int_distribution<int> nt(1, max_terms);
  std::vector<XV::Term> terms;
  int n = nt(rng);
  for (int i = 0; i < n; ++i) {
    GroupElement x = identity(g);
    int l = len(rng);
    for (int j = 0; j < l; ++j) x = mul(g, x, gens.elements[pick(rng)]);
    terms.emplace_back(
        x, ExactScalar(Rational(num(rng), den(rng)), Rational(num(rng), 3)));
  }
  return XV::from_terms(g, std::move(terms));
}

ComplexSpec named_complex(const std::string& name) {
  if (name == "Z") return builtin_complex(BuiltinComplex::Z);
  if (name == "Z2") return builtin_complex(BuiltinComplex::Z2);
  if (name == "F2") return builtin_complex(BuiltinComplex::Fk, 2);
  if (name.size() > 1 && name[0] == 'F') {
    try {
      return builtin_complex(BuiltinComplex::Fk, std::stoll(name.substr(1)));
    } catch (const std::invalid_argument&) {
    }
  }
  if (name.size() > 5 && name.substr(name.size() - 5) == ".json") {
    std::ifstream in(name);
    require(static_cast<bool>(in), "cannot read complex file: " + name);
    ordered_json j;
    try {
      in >> j;
    } catch (const std::exception& e) {
      throw DomainError(std::string("complex file parse error: ") + e.what());
    }
    for (auto it = j.begin(); it != j.end(); ++it)
      require(it.key() == "group" || it.key() == "differentials",
              "complex file: unknown key '" + it.key() + "'");
    GroupSpec g = GroupSpec::parse(j.at("group").get<std::string>());
    std::vector<GrMatrix<ExactScalar>> diffs;
    for (const auto& dj : j.at("differentials")) {
      std::size_t rows = dj.at("rows").get<std::size_t>();
      std::size_t cols = dj.at("cols").get<std::size_t>();
      const auto& entries = dj.at("entries");
      require(entries.size() == rows * cols,
              "complex file: entries must be rows*cols term lists");
      GrMatrix<ExactScalar> m(g, rows, cols);
      for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t jj = 0; jj < cols; ++jj)
          m.at(i, jj) = exact_vector_from_json(g, entries[i * cols + jj]);
      diffs.push_back(std::move(m));
    }
    return ComplexSpec::unchecked(g, std::move(diffs));
  }
  throw DomainError("unknown complex: " + name +
                    " (expected Z, Z2, F<k>, or a .json file)");
}

// ---- experiment bodies ----

ExperimentReport run_averaging(const ExperimentConfig& cfg) {
  ExperimentReport rep;
  rep.provenance = "exact";
  GroupSpec g = GroupSpec::parse(cfg.group);
  GroupElement gen = pick_infinite_generator(g);
  ExactScalar omega = parse_exact_scalar(cfg.omega);
  std::vector<std::int64_t> ns = cfg.ns;
  if (ns.empty()) {
    require(cfg.n >= 1, "averaging: pass --n or --ns");
    ns.push_back(cfg.n);
  }
  std::sort(ns.begin(), ns.end());
  rep.rows = parallel_rows(ns.size(), [&](std::size_t i) {
    auto spec = make_averaging_spec(g, gen, omega, ns[i]);
    auto xn = averaging_element(spec);
    ordered_json row;
    row["n"] = ns[i];
    row["norm"] = p_norm(xn, cfg.p);
    row["law"] = averaging_norm_law(ns[i], cfg.p);
    row["provenance"] = "exact";
    return row;
  });
  return rep;
}

ExperimentReport run_young(const ExperimentConfig& cfg) {
  ExperimentReport rep;
  rep.provenance = "exact";
  GroupSpec g = GroupSpec::parse(cfg.group);
  require(cfg.trials >= 1, "young: trials must be >= 1");
  std::int64_t violations = 0;
  double worst = -1e300;
  std::mt19937_64 rng(cfg.seed * 1000003 + 17);
  for (std::int64_t t = 0; t < cfg.trials; ++t) {
    auto a = seeded_sparse_vector(g, rng);
    auto b = seeded_sparse_vector(g, rng);
    auto yc = young_check(a, b, cfg.p);
    worst = std::max(worst, yc.lhs - yc.rhs);
    if (!yc.holds) ++violations;
  }
  ordered_json row;
  row["form"] = "young";
  row["trials"] = cfg.trials;
  row["violations"] = violations;
  row["worst_slack"] = worst;
  row["provenance"] = "exact";
  rep.rows.push_back(row);

  std::int64_t tuple_trials = std::max<std::int64_t>(1, cfg.trials / 10);
  std::uniform_int_distribution<int> arity(0, 3);
  std::int64_t v1 = 0, v2 = 0;
  double w1 = -1e300, w2 = -1e300;
  for (std::int64_t t = 0; t < tuple_trials; ++t) {
    auto u = seeded_sparse_vector(g, rng);
    VectorTuple<ExactScalar> v(g);
    int m = arity(rng);
    for (int k = 0; k < m; ++k) v.components.push_back(seeded_sparse_vector(g, rng));
    auto c1 = young_check(u, v, cfg.p);
    auto c2 = young_check_lp_times_l1(u, v, cfg.p);
    if (!c1.holds) ++v1;
    if (!c2.holds) ++v2;
    w1 = std::max(w1, c1.lhs - c1.rhs);
    w2 = std::max(w2, c2.lhs - c2.rhs);
  }
  ordered_json r1, r2;
  r1["form"] = "young-tuple-l1-lp";
  r1["trials"] = tuple_trials;
  r1["violations"] = v1;
  r1["worst_slack"] = w1;
  r1["provenance"] = "exact";
  r2["form"] = "young-tuple-lp-l1";
  r2["trials"] = tuple_trials;
  r2["violations"] = v2;
  r2["worst_slack"] = w2;
  r2["provenance"] = "exact";
  rep.rows.push_back(r1);
  rep.rows.push_back(r2);
  return rep;
}

ExperimentReport run_witness(const ExperimentConfig& cfg) {
  ExperimentReport rep;
  rep.provenance = "exact";
  GroupSpec g = GroupSpec::parse(cfg.group);
  GroupElement gen = pick_infinite_generator(g);
  ExactScalar omega = parse_exact_scalar(cfg.omega);
  std::vector<std::int64_t> ns = cfg.ns;
  if (ns.empty()) {
    require(cfg.n >= 1, "witness: pass --n or --ns");
    ns.push_back(cfg.n);
  }
  std::sort(ns.begin(), ns.end());
  rep.rows = parallel_rows(ns.size(), [&](std::size_t i) {
    auto spec = make_averaging_spec(g, gen, omega, ns[i]);
    auto d = factor_witness(spec);
    auto residual = convolve(linear_factor(g, gen, omega), d) -
                    (XV::delta(g, identity(g)) - averaging_element(spec));
    ordered_json row;
    row["n"] = ns[i];
    row["omega"] = omega.to_string();
    row["witness_support"] = d.support_size();
    row["residual_support"] = residual.support_size();
    row["exact_zero"] = residual.is_zero();
    row["provenance"] = "exact";
    return row;
  });
  return rep;
}

ExperimentReport run_neumann(const ExperimentConfig& cfg) {
  ExperimentReport rep;
  rep.provenance = "exact";
  GroupSpec g = GroupSpec::parse(cfg.group);
  GroupElement gen = pick_infinite_generator(g);
  ExactScalar omega = parse_exact_scalar(cfg.omega);
  require(cfg.K >= 0, "neumann: pass --K >= 0");
  auto res = neumann_inverse(g, gen, omega, cfg.K);
  double abs_omega = std::sqrt(omega.abs_squared().to_double());
  double law = abs_omega > 1.0 ? std::pow(abs_omega, -double(cfg.K + 1))
                               : std::pow(abs_omega, double(cfg.K + 1));
  ordered_json row;
  row["K"] = cfg.K;
  row["omega"] = omega.to_string();
  row["residual_l1"] = res.residual_one_norm;
  row["law"] = law;
  row["support"] = res.inverse.support_size();
  row["provenance"] = "exact";
  rep.rows.push_back(row);
  return rep;
}

ExperimentReport run_density(const ExperimentConfig& cfg) {
  ExperimentReport rep;
  rep.provenance = "exact";
  GroupSpec g = GroupSpec::parse(cfg.group);
  GroupElement gen = pick_infinite_generator(g);
  ExactScalar omega = parse_exact_scalar(cfg.omega);
  require(cfg.epsilon > 0, "density: pass --epsilon > 0");
  XV b = cfg.target_path.empty() ? XV::delta(g, identity(g))
                                 : load_exact_vector(g, cfg.target_path);
  std::optional<std::int64_t> forced;
  if (cfg.n > 0) forced = cfg.n;
  auto r = density_experiment(VectorTuple<ExactScalar>::single(b), g, gen,
                              omega, cfg.p, cfg.epsilon, forced);
  ordered_json row;
  row["n"] = r.n;
  row["b_one_norm"] = r.b_one_norm;
  row["recipe_bound"] = r.recipe_bound;
  row["xn_norm"] = r.xn_norm;
  row["achieved_error"] = r.achieved_error;
  row["error_below_epsilon"] = r.achieved_error < cfg.epsilon;
  row["witness_support"] = r.witness.components[0].support_size();
  row["witness_verified"] = r.witness_verified;
  row["residual_support"] = r.residual_support;
  row["provenance"] = "exact";
  rep.rows.push_back(row);
  return rep;
}

ExperimentReport run_composed_density(const ExperimentConfig& cfg) {
  ExperimentReport rep;
  rep.provenance = "exact";
  GroupSpec g = GroupSpec::parse(cfg.group);
  GroupElement gen = pick_infinite_generator(g);
  require(cfg.epsilon > 0, "composed-density: pass --epsilon > 0");
  std::vector<ExactScalar> omegas;
  for (const auto& w : cfg.omegas) omegas.push_back(parse_exact_scalar(w));
  if (omegas.empty() && !cfg.omega.empty())
    omegas.push_back(parse_exact_scalar(cfg.omega));
  XV b = cfg.target_path.empty() ? XV::delta(g, identity(g))
                                 : load_exact_vector(g, cfg.target_path);
  auto r = composed_density(VectorTuple<ExactScalar>::single(b), g, gen,
                            omegas, cfg.p, cfg.epsilon);
  for (std::size_t i = 0; i < r.stages.size(); ++i) {
    ordered_json row;
    row["stage"] = i + 1;
    row["omega"] = r.stages[i].omega.to_string();
    row["n"] = r.stages[i].n;
    row["target"] = r.stages[i].target;
    row["achieved"] = r.stages[i].achieved;
    row["witness_exact"] = r.stages[i].witness_exact;
    row["provenance"] = "exact";
    rep.rows.push_back(row);
  }
  ordered_json fin;
  fin["stage"] = "final";
  fin["achieved_error"] = r.achieved_error;
  fin["error_below_epsilon"] = r.achieved_error < cfg.epsilon;
  fin["witness_support"] = r.witness.components[0].support_size();
  fin["witness_verified"] = r.witness_verified;
  fin["provenance"] = "exact";
  rep.rows.push_back(fin);
  return rep;
}

DirichletProblem problem_from_config(const ExperimentConfig& cfg) {
  DirichletProblem prob;
  if (!cfg.problem_path.empty()) {
    std::ifstream in(cfg.problem_path);
    require(static_cast<bool>(in),
            "cannot read problem file: " + cfg.problem_path);
    ordered_json j;
    try {
      in >> j;
    } catch (const std::exception& e) {
      throw DomainError(std::string("problem file parse error: ") + e.what());
    }
    for (auto it = j.begin(); it != j.end(); ++it) {
      std::string k = it.key();
      require(k == "group" || k == "gens" || k == "radius" || k == "p" ||
                  k == "boundary" || k == "tolerances",
              "problem file: unknown key '" + k + "'");
    }
    GroupSpec g = GroupSpec::parse(j.at("group").get<std::string>());
    GeneratingSet gens = GeneratingSet::standard(g);
    if (j.contains("gens")) {
      gens.elements.clear();
      for (const auto& s : j["gens"])
        gens.elements.push_back(parse_element(g, s.get<std::string>()));
    }
    prob.ball = std::make_shared<CayleyBall>(
        g, gens, j.at("radius").get<std::int64_t>());
    prob.p = j.at("p").get<double>();
    if (j.contains("tolerances")) {
      const auto& t = j["tolerances"];
      for (auto it = t.begin(); it != t.end(); ++it)
        require(it.key() == "residual_tol" || it.key() == "max_iters",
                "problem tolerances: unknown key '" + it.key() + "'");
      if (t.contains("residual_tol"))
        prob.residual_tol = t["residual_tol"].get<double>();
      if (t.contains("max_iters"))
        prob.max_iters = static_cast<int>(t["max_iters"].get<std::int64_t>());
    }
    const CayleyBall& b = *prob.ball;
    std::size_t nb = b.size() - b.interior_count();
    prob.boundary_values = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(nb));
    std::vector<bool> assigned(nb, false);
    for (const auto& entry : j.at("boundary")) {
      for (auto it = entry.begin(); it != entry.end(); ++it)
        require(it.key() == "element" || it.key() == "value",
                "boundary entry: unknown key '" + it.key() + "'");
      GroupElement x = parse_element(g, entry.at("element").get<std::string>());
      std::int32_t idx = b.index_of(x);
      require(idx >= 0 && !b.is_interior(static_cast<std::size_t>(idx)),
              "boundary element is not a frontier vertex: " +
                  entry.at("element").get<std::string>());
      std::size_t k = static_cast<std::size_t>(idx) - b.interior_count();
      prob.boundary_values[static_cast<Eigen::Index>(k)] =
          entry.at("value").get<double>();
      assigned[k] = true;
    }
    for (std::size_t k = 0; k < nb; ++k)
      require(assigned[k], "boundary assignment is not total");
  } else {
    GroupSpec g = GroupSpec::parse(cfg.group);
    require(cfg.radius >= 0, "dirichlet: pass --radius");
    prob.ball = std::make_shared<CayleyBall>(g, GeneratingSet::standard(g),
                                             cfg.radius);
    prob.p = cfg.p;
    prob.residual_tol = cfg.residual_tol;
    prob.max_iters = static_cast<int>(cfg.max_iters);
    require(!cfg.boundary.empty(),
            "dirichlet: pass --boundary v1,v2,... (frontier vertices in ball "
            "order) or --problem file.json");
    auto vals = parse_double_list(cfg.boundary);
    std::size_t nb = prob.ball->size() - prob.ball->interior_count();
    require(vals.size() == nb,
            "dirichlet: boundary list must have one value per frontier "
            "vertex (" +
                std::to_string(nb) + " needed)");
    prob.boundary_values.resize(static_cast<Eigen::Index>(nb));
    for (std::size_t i = 0; i < nb; ++i)
      prob.boundary_values[static_cast<Eigen::Index>(i)] = vals[i];
  }
  return prob;
}

ExperimentReport run_dirichlet(const ExperimentConfig& cfg) {
  ExperimentReport rep;
  rep.provenance = "float";
  DirichletProblem prob = problem_from_config(cfg);
  auto [f, er] = solve_dirichlet(prob);
  const CayleyBall& b = *prob.ball;
  rep.has_nonconvergence = !er.converged;
  for (std::size_t v = 0; v < b.size(); ++v) {
    ordered_json row;
    row["element"] = format_element(b.group(), b.vertex(v));
    row["value"] = f.value(v);
    row["gradient_power"] =
        er.gradient_power_per_vertex[static_cast<Eigen::Index>(v)];
    if (b.all_neighbors_inside(v))
      row["laplacian"] = p_laplacian(f, v, prob.p);
    else
      row["laplacian"] = nullptr;
    row["interior"] = b.is_interior(v);
    row["provenance"] = "float";
    rep.rows.push_back(row);
  }
  ordered_json summary;
  summary["element"] = "_summary";
  summary["energy"] = er.energy;
  summary["residual"] = er.residual;
  summary["iterations"] = er.iterations;
  summary["converged"] = er.converged;
  summary["provenance"] = "float";
  rep.rows.push_back(summary);
  return rep;
}

ExperimentReport run_cohomology(const ExperimentConfig& cfg) {
  ExperimentReport rep;
  if (cfg.check == "compose") {
    rep.provenance = "exact";
    auto c = named_complex(cfg.complex_name);
    auto chk = compose_check(c);
    ordered_json row;
    row["complex"] = cfg.complex_name;
    row["pass"] = chk.pass;
    ordered_json supp = ordered_json::array();
    for (std::size_t pair = 0; pair < chk.residual_support.size(); ++pair)
      for (const auto& [i, j] : chk.residual_support[pair])
        supp.push_back(ordered_json{{"pair", pair}, {"row", i}, {"col", j}});
    row["residual_support"] = supp;
    row["augmentation_ok"] = c.augmentation_ok();
    row["provenance"] = "exact";
    rep.rows.push_back(row);
    return rep;
  }
  if (cfg.check == "invariants") {
    rep.provenance = "exact";
    GroupSpec g = GroupSpec::parse(cfg.group);
    require(cfg.radius >= 0, "invariants: pass --radius");
    CayleyBall b(g, GeneratingSet::standard(g), cfg.radius);
    auto r = invariant_vectors(b);
    ordered_json row;
    row["radius"] = cfg.radius;
    row["dimension"] = r.dimension;
    row["dimension_with_decay"] = r.dimension_with_decay;
    row["connected"] = r.connected;
    row["provenance"] = "exact";
    rep.rows.push_back(row);
    return rep;
  }
  WindowPolicy policy = cfg.policy == "extend" ? WindowPolicy::Extend
                        : cfg.policy == "clip"
                            ? WindowPolicy::Clip
                            : throw DomainError("policy must be clip|extend");
  auto c = named_complex(cfg.complex_name);
  std::vector<std::int64_t> windows = cfg.windows;
  if (windows.empty()) {
    require(cfg.radius > 0, "pass --window (radius) or --windows");
    windows.push_back(cfg.radius);
  }
  std::sort(windows.begin(), windows.end());
  if (cfg.check == "sigma-min") {
    rep.provenance = "float";
    auto op = star_transpose(c.differentials()[0]);
    rep.rows = parallel_rows(windows.size(), [&](std::size_t i) {
      auto win = std::make_shared<CayleyBall>(
          c.group(), GeneratingSet::standard(c.group()), windows[i]);
      auto t = truncate(op, win, policy);
      ordered_json row;
      row["window"] = windows[i];
      row["rows"] = t.rows();
      row["cols"] = t.cols();
      row["sigma_min"] = smallest_singular_value(t);
      row["provenance"] = "float";
      return row;
    });
    return rep;
  }
  if (cfg.check == "distance") {
    rep.provenance = "float";
    const auto& d0 = c.differentials()[0];
    rep.rows = parallel_rows(windows.size(), [&](std::size_t i) {
      auto win = std::make_shared<CayleyBall>(
          c.group(), GeneratingSet::standard(c.group()), windows[i]);
      auto t = truncate(d0, win, policy);
      require(t.out_rank == 1,
              "distance targets need a rank-1 output window");
      Eigen::VectorXd target =
          Eigen::VectorXd::Zero(static_cast<Eigen::Index>(t.rows()));
      if (cfg.target_path.empty()) {
        std::int32_t e0 = t.out_window->index_of(identity(c.group()));
        target[e0] = 1.0;
      } else {
        auto v = load_float_vector(c.group(), cfg.target_path);
        for (const auto& term : v.terms()) {
          std::int32_t idx = t.out_window->index_of(term.first);
          require(idx >= 0, "distance target leaves the output window");
          target[idx] = term.second.real();
        }
      }
      auto r = distance_to_image(t, target, cfg.p);
      ordered_json row;
      row["window"] = windows[i];
      row["distance"] = r.distance;
      row["converged"] = r.converged;
      row["provenance"] = "float";
      return row;
    });
    for (const auto& row : rep.rows)
      if (!row["converged"].get<bool>()) rep.has_nonconvergence = true;
    return rep;
  }
  throw DomainError("cohomology: check must be compose|sigma-min|distance|invariants");
}

ExperimentReport run_amenability(const ExperimentConfig& cfg) {
  ExperimentReport rep;
  rep.provenance = "float";
  GroupSpec g = GroupSpec::parse(cfg.group);
  auto gens = GeneratingSet::standard(g);
  std::vector<std::int64_t> radii = cfg.radii;
  if (radii.empty()) {
    require(cfg.radius >= 1, "amenability: pass --radius or --radii");
    radii.push_back(cfg.radius);
  }
  std::sort(radii.begin(), radii.end());
  std::optional<std::pair<std::shared_ptr<const CayleyBall>, Eigen::VectorXd>>
      warm;
  for (std::int64_t r : radii) {
    auto res = sobolev_ratio(g, gens, r, cfg.p, 8, warm);
    ordered_json row;
    row["R"] = r;
    row["lambda"] = res.lambda;
    row["converged"] = res.converged;
    std::string achiever_file;
    if (!cfg.achiever_dir.empty()) {
      achiever_file = cfg.achiever_dir + "/achiever_R" + std::to_string(r) +
                      ".json";
      ordered_json aj;
      aj["group"] = g.to_string();
      aj["radius"] = r;
      ordered_json vals = ordered_json::array();
      for (std::size_t v = 0; v < res.window->size(); ++v) {
        double x = res.achiever[static_cast<Eigen::Index>(v)];
        if (x != 0.0)
          vals.push_back(ordered_json{
              {"element", format_element(g, res.window->vertex(v))},
              {"value", x}});
      }
      aj["values"] = std::move(vals);
      std::ofstream out(achiever_file);
      require(static_cast<bool>(out),
              "cannot write achiever file: " + achiever_file);
      out << aj.dump(2) << "\n";
    }
    row["achiever_file"] = achiever_file;
    row["provenance"] = "float";
    if (!res.converged) rep.has_nonconvergence = true;
    rep.rows.push_back(row);
    warm = std::make_pair(res.window, res.achiever);
  }
  return rep;
}

ExperimentReport run_tilf_diff(const ExperimentConfig& cfg) {
  ExperimentReport rep;
  rep.provenance = "exact";
  GroupSpec g = GroupSpec::parse(cfg.group);
  require(!cfg.target_path.empty(), "tilf-diff: pass --target vector.json");
  XV f = load_exact_vector(g, cfg.target_path);
  if (f.augmentation().is_zero()) {
    auto dec = diff_decompose(f);
    for (const auto& t : dec.terms) {
      ordered_json row;
      row["kind"] = "exact-decomposition";
      row["h"] = format_element(g, t.h);
      row["coeff"] = t.coeff.to_string();
      row["provenance"] = "exact";
      rep.rows.push_back(row);
    }
    ordered_json summary;
    summary["kind"] = "summary";
    summary["exact"] = true;
    summary["terms"] = dec.terms.size();
    summary["reconstructs"] = (dec.reconstruct() == f);
    summary["provenance"] = "exact";
    rep.rows.push_back(summary);
    return rep;
  }
  require(cfg.epsilon > 0,
          "tilf-diff: target has nonzero coefficient sum; pass --epsilon for "
          "the approximation route");
  GroupElement gen = pick_infinite_generator(g);
  auto apx = approximate_by_diff(f, g, gen, cfg.p, cfg.epsilon);
  ordered_json row;
  row["kind"] = "approximation";
  row["n"] = apx.n;
  row["error"] = apx.error;
  row["error_below_epsilon"] = apx.error < cfg.epsilon;
  row["witness_exact"] = apx.witness_exact;
  row["approximant_support"] = apx.approximant.support_size();
  row["provenance"] = "exact";
  rep.rows.push_back(row);
  return rep;
}

}  // namespace

ExperimentReport run(const ExperimentConfig& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  ExperimentReport rep;
  if (cfg.experiment == "averaging")
    rep = run_averaging(cfg);
  else if (cfg.experiment == "young")
    rep = run_young(cfg);
  else if (cfg.experiment == "witness")
    rep = run_witness(cfg);
  else if (cfg.experiment == "neumann")
    rep = run_neumann(cfg);
  else if (cfg.experiment == "density")
    rep = run_density(cfg);
  else if (cfg.experiment == "composed-density")
    rep = run_composed_density(cfg);
  else if (cfg.experiment == "dirichlet")
    rep = run_dirichlet(cfg);
  else if (cfg.experiment == "cohomology")
    rep = run_cohomology(cfg);
  else if (cfg.experiment == "amenability")
    rep = run_amenability(cfg);
  else if (cfg.experiment == "tilf-diff")
    rep = run_tilf_diff(cfg);
  else
    throw DomainError("unknown experiment: " + cfg.experiment);
  rep.config = cfg.echo();
  rep.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
  return rep;
}

}  // namespace lplab
