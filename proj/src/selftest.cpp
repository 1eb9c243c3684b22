#include <cstdio>
#include <random>

#include "lplab/complexes.hpp"
#include "lplab/density.hpp"
#include "lplab/dirichlet.hpp"
#include "lplab/experiments.hpp"
#include "lplab/group_io.hpp"
#include "lplab/invariance.hpp"
#include "lplab/sobolev.hpp"
#include "lplab/truncation.hpp"

namespace lplab {

namespace {

using XV = GroupVector<ExactScalar>;

int g_failures;

void check(bool ok, const char* what) {
  if (!ok) {
    ++g_failures;
    std::fprintf(stderr, "selftest FAIL: %s\n", what);
  }
}

XV random_vec(const GroupSpec& g, std::mt19937_64& rng) {
  auto gens = GeneratingSet::standard(g);
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  std::uniform_int_distribution<int> len(0, 4);
  std::uniform_int_distribution<std::int64_t> num(-4, 4);
  std::vector<XV::Term> terms;
  for (int i = 0; i < 4; ++i) {
    GroupElement x = identity(g);
    int l = len(rng);
    for (int j = 0; j < l; ++j) x = mul(g, x, gens.elements[pick(rng)]);
    terms.emplace_back(x, ExactScalar(Rational(num(rng), 2)));
  }
  return XV::from_terms(g, std::move(terms));
}

void group_model_suite() {
  std::mt19937_64 rng(1);
  for (const char* name : {"Z", "Z^2", "F2", "C6", "Z x C3"}) {
    auto g = GroupSpec::parse(name);
    auto gens = GeneratingSet::standard(g);
    check(is_symmetric(g, gens), "standard set symmetric");
    check(!contains_identity(g, gens), "standard set avoids identity");
    auto e = identity(g);
    std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
    for (int t = 0; t < 100; ++t) {
      GroupElement x = e;
      for (int j = 0; j < 6; ++j) x = mul(g, x, gens.elements[pick(rng)]);
      check(mul(g, x, inv(g, x)) == e, "x * x^-1 = e");
      check(parse_element(g, format_element(g, x)) == x, "element round trip");
    }
  }
  check(ball(GroupSpec::parse("Z"), 3).size() == 7, "|B_Z(3)| = 7");
  check(ball(GroupSpec::parse("F2"), 2).size() == 17, "|B_F2(2)| = 17");
  check(ball(GroupSpec::parse("Z^2"), 1).size() == 5, "|B_Z2(1)| = 5");
  auto b = ball(GroupSpec::parse("Z^2"), 2);
  for (std::size_t v = 0; v < b.interior_count(); ++v)
    check(b.all_neighbors_inside(v), "interior closed under moves");
}

void group_algebra_suite() {
  std::mt19937_64 rng(2);
  auto f2 = GroupSpec::parse("F2");
  for (int t = 0; t < 20; ++t) {
    auto a = random_vec(f2, rng);
    auto bb = random_vec(f2, rng);
    auto c = random_vec(f2, rng);
    check(convolve(convolve(a, bb), c) == convolve(a, convolve(bb, c)),
          "exact convolution associativity");
    check(young_check(a, bb, 1.7).holds, "young inequality");
  }
  auto z = GroupSpec::parse("Z");
  auto g1 = parse_element(z, "1");
  for (double p : {1.25, 1.5, 2.0, 3.0})
    for (std::int64_t n : {1, 4, 9, 144}) {
      auto xn = averaging_element(make_averaging_spec(z, g1, ExactScalar(1), n));
      double law = averaging_norm_law(n, p);
      check(std::abs(p_norm(xn, p) - law) <= 1e-12 * law, "averaging norm law");
    }
  for (const auto& w :
       {ExactScalar(1), ExactScalar(-1), ExactScalar(Rational(0), Rational(1))})
    for (std::int64_t n : {1, 5, 16}) {
      auto spec = make_averaging_spec(z, g1, w, n);
      auto d = factor_witness(spec);
      check(convolve(linear_factor(z, g1, w), d) ==
                XV::delta(z, identity(z)) - averaging_element(spec),
            "factor witness exact");
    }
  auto nres = neumann_inverse(z, g1, ExactScalar(2), 30);
  check(std::abs(nres.residual_one_norm - std::ldexp(1.0, -31)) <=
            1e-15 * std::ldexp(1.0, -31),
        "neumann residual 2^-31");
}

void dirichlet_suite() {
  auto z = GroupSpec::parse("Z");
  for (double p : {1.5, 2.0, 3.0}) {
    DirichletProblem prob;
    prob.ball = std::make_shared<CayleyBall>(z, GeneratingSet::standard(z), 8);
    prob.p = p;
    prob.boundary_values.resize(2);
    prob.boundary_values << 0.0, 1.0;
    auto [f, rep] = solve_dirichlet(prob);
    check(rep.converged, "segment solve converged");
    bool linear = true;
    for (std::size_t v = 0; v < f.size(); ++v) {
      double k = double(f.ball().vertex(v).data()[0]);
      if (std::abs(f.value(v) - (k + 8.0) / 16.0) > 1e-6) linear = false;
    }
    check(linear, "segment solution is linear interpolation");
  }
  check(std::abs(tent_energy(10, 2.0, 1) - 0.4) < 1e-13, "tent energy 4n^{1-p}");
}

void cohomology_suite() {
  check(compose_check(builtin_complex(BuiltinComplex::Z2)).pass,
        "koszul composes to zero");
  check(builtin_complex(BuiltinComplex::Z).augmentation_ok(),
        "augmentation columns");
  auto z = GroupSpec::parse("Z");
  auto g1 = parse_element(z, "1");
  auto rep = density_experiment(XV::delta(z, identity(z)), z, g1,
                                ExactScalar(1), 2.0, 0.05);
  check(rep.witness_verified && rep.achieved_error < 0.05, "density step");
  auto comp = composed_density(
      VectorTuple<ExactScalar>::single(XV::delta(z, identity(z))), z, g1,
      {ExactScalar(1), ExactScalar(-1)}, 2.0, 0.05);
  check(comp.witness_verified && comp.achieved_error < 0.05,
        "composed density");
  auto cz = builtin_complex(BuiltinComplex::Z);
  auto win = std::make_shared<CayleyBall>(z, GeneratingSet::standard(z), 4);
  auto t = truncate(cz.differentials()[0], win, WindowPolicy::Clip);
  double sv = smallest_singular_value(t);
  double oracle = 2.0 * std::sin(M_PI / (2.0 * 19.0));
  check(std::abs(sv - oracle) < 1e-9, "sigma_min path oracle");
  auto inv_rep = invariant_vectors(*win);
  check(inv_rep.dimension == 1 && inv_rep.dimension_with_decay == 0,
        "invariant vectors on Z ball");
  auto c6ball = ball(GroupSpec::parse("C6"), 5);
  auto inv6 = invariant_vectors(c6ball);
  check(inv6.dimension == 1 && inv6.dimension_with_decay == 1,
        "invariant vectors on C6");
}

void invariance_suite() {
  std::mt19937_64 rng(3);
  auto z2 = GroupSpec::parse("Z^2");
  auto gens = GeneratingSet::standard(z2);
  for (int t = 0; t < 20; ++t) {
    auto v = random_vec(z2, rng);
    auto h = parse_element(z2, "(1,-1)");
    check(std::abs(p_norm(translate(v, h), 2.0) - p_norm(v, 2.0)) < 1e-12,
          "translation preserves p-norm");
    auto th = theta(v, gens);
    double lhs = std::pow(p_norm(th, 2.5), 2.5);
    double rhs = dirichlet_sum(v, gens, 2.5);
    check(std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, rhs),
          "theta energy identity");
  }
  auto zline = GroupSpec::parse("Z");
  auto f = XV::delta(zline, parse_element(zline, "2")) -
           XV::delta(zline, parse_element(zline, "0"));
  check(diff_decompose(f).reconstruct() == f, "diff reconstruction");
  auto apx = approximate_by_diff(XV::delta(zline, identity(zline)), zline,
                                 parse_element(zline, "1"), 2.0, 0.2);
  check(apx.error < 0.2 && apx.witness_exact, "approximate_by_diff");
  auto zg = GeneratingSet::standard(zline);
  auto s4 = sobolev_ratio(zline, zg, 4, 2.0);
  auto s8 = sobolev_ratio(zline, zg, 8, 2.0, 8,
                          std::make_pair(s4.window, s4.achiever));
  check(s8.lambda <= s4.lambda, "sobolev ratio non-increasing");
  auto tent = tent_function(zline, 4);
  check(s4.lambda <=
            dirichlet_sum(tent, 2.0) / std::pow(p_norm(tent, 2.0), 2.0) + 1e-12,
        "tent upper bound");
}

}  // namespace

int selftest(const std::string& experiment) {
  g_failures = 0;
  group_model_suite();
  if (experiment == "averaging" || experiment == "young" ||
      experiment == "witness" || experiment == "neumann") {
    group_algebra_suite();
  } else if (experiment == "density" || experiment == "composed-density" ||
             experiment == "cohomology") {
    group_algebra_suite();
    cohomology_suite();
  } else if (experiment == "dirichlet") {
    dirichlet_suite();
  } else if (experiment == "amenability" || experiment == "tilf-diff") {
    group_algebra_suite();
    invariance_suite();
  } else {
    group_algebra_suite();
    dirichlet_suite();
    cohomology_suite();
    invariance_suite();
  }
  if (g_failures == 0) std::fprintf(stderr, "selftest: all checks passed\n");
  return g_failures;
}

}  // namespace lplab
