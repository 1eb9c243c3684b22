#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "lplab/group_io.hpp"
#include "lplab/invariance.hpp"

using namespace lplab;
using XV = GroupVector<ExactScalar>;
using FV = GroupVector<FloatScalar>;

namespace {
const GroupSpec z = GroupSpec::free_abelian(1);

FV rand_real_vec(const GroupSpec& g, std::mt19937_64& rng, int max_terms = 8,
                 int span = 4) {
  auto gens = GeneratingSet::standard(g);
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  std::uniform_int_distribution<int> len(0, span);
  std::uniform_real_distribution<double> coef(-2, 2);
  std::uniform_int_distribution<int> nt(1, max_terms);
  std::vector<FV::Term> terms;
  int n = nt(rng);
  for (int i = 0; i < n; ++i) {
    GroupElement x = identity(g);
    int l = len(rng);
    for (int j = 0; j < l; ++j) x = mul(g, x, gens.elements[pick(rng)]);
    terms.emplace_back(x, FloatScalar(coef(rng), 0.0));
  }
  return FV::from_terms(g, std::move(terms));
}
}  // namespace

TEST_CASE("translate on vectors") {
  auto f = XV::delta(z, parse_element(z, "0"));
  // h = e fixes everything.
  CHECK(translate(f, identity(z)) == f);
  // h = 3: point mass moves to -3 (f_h(g) = f(3+g)).
  auto t = translate(f, parse_element(z, "3"));
  CHECK(t == XV::delta(z, parse_element(z, "-3")));

  // Norm preservation and the composition law (f_h)_k = f_{hk}.
  std::mt19937_64 rng(11);
  auto f2 = GroupSpec::free_group(2);
  for (int i = 0; i < 50; ++i) {
    auto v = rand_real_vec(f2, rng);
    auto h = parse_element(f2, "a b^-1");
    auto k = parse_element(f2, "b a");
    CHECK(p_norm(translate(v, h), 2.3) ==
          doctest::Approx(p_norm(v, 2.3)).epsilon(1e-12));
    CHECK(translate(translate(v, k), h) == translate(v, mul(f2, k, h)));
  }
}

TEST_CASE("translate on graph functions") {
  // Full finite ball translates freely.
  auto c6 = GroupSpec::finite_cyclic(6);
  auto b = std::make_shared<CayleyBall>(c6, GeneratingSet::standard(c6), 5);
  Eigen::VectorXd vals(6);
  for (std::size_t i = 0; i < 6; ++i)
    vals[static_cast<Eigen::Index>(i)] = double(b->vertex(i).data()[0]);
  GraphFunction f(b, vals);
  auto h = parse_element(c6, "2");
  auto fh = translate(f, h);
  for (std::size_t i = 0; i < 6; ++i) {
    auto hg = mul(c6, h, b->vertex(i));
    CHECK(fh.value(i) ==
          f.value(static_cast<std::size_t>(b->index_of(hg))));
  }
  // Z ball overflows for h != e.
  auto zb = std::make_shared<CayleyBall>(z, GeneratingSet::standard(z), 3);
  GraphFunction g0 = GraphFunction::constant(zb, 1.0);
  CHECK_THROWS_AS(translate(g0, parse_element(z, "1")), DomainError);
  CHECK_NOTHROW(translate(g0, parse_element(z, "0")));
}

TEST_CASE("diff_decompose") {
  // Single difference generator.
  auto h = parse_element(z, "4");
  auto f = XV::delta(z, inv(z, h)) - XV::delta(z, identity(z));
  auto dec = diff_decompose(f);
  REQUIRE(dec.terms.size() == 1);
  CHECK(dec.terms[0].h == h);
  CHECK(dec.terms[0].coeff == ExactScalar(1));
  CHECK(dec.reconstruct() == f);

  // delta_2 - 2 delta_1 + delta_0: two terms, exact reconstruction.
  auto f2 = XV::delta(z, parse_element(z, "2")) +
            ExactScalar(-2) * XV::delta(z, parse_element(z, "1")) +
            XV::delta(z, parse_element(z, "0"));
  auto dec2 = diff_decompose(f2);
  CHECK(dec2.terms.size() == 2);
  CHECK(dec2.reconstruct() == f2);

  // Nonzero coefficient sum is the obstruction.
  CHECK_THROWS_AS(diff_decompose(XV::delta(z, identity(z))), DomainError);
}

TEST_CASE("approximate_by_diff") {
  auto g1 = parse_element(z, "1");
  auto f = XV::delta(z, identity(z));
  auto apx = approximate_by_diff(f, z, g1, 2.0, 0.1);
  // Recipe: n^{-1/2} < 0.05 -> n = 401.
  CHECK(apx.n == 401);
  CHECK(apx.error == doctest::Approx(std::pow(401.0, -0.5)));
  CHECK(apx.error < 0.1);
  CHECK(apx.witness_exact);
  CHECK(apx.witness.reconstruct() == apx.approximant);

  // Large epsilon: n = 1 suffices since ||x_1 f||_p <= ||f||_p.
  auto apx1 = approximate_by_diff(f, z, g1, 2.0, 2.0);
  CHECK(apx1.n == 1);
  CHECK(apx1.error <= 1.0);

  // Zero-sum f: both routes work; the approximation error still obeys eps.
  auto f0 = XV::delta(z, parse_element(z, "1")) -
            XV::delta(z, parse_element(z, "0"));
  CHECK_NOTHROW(diff_decompose(f0));
  auto apx0 = approximate_by_diff(f0, z, g1, 2.0, 0.5);
  CHECK(apx0.error < 0.5);
  CHECK(apx0.witness_exact);
}

TEST_CASE("theta on vectors: components and the energy identity") {
  auto gens = GeneratingSet::standard(z);
  auto f = FV::delta(z, parse_element(z, "0"));
  auto th = theta(f, gens);
  REQUIRE(th.arity() == 2);
  // S order (+1, -1): components delta_0 - delta_-1 and delta_0 - delta_1.
  CHECK(th.components[0] ==
        FV::delta(z, parse_element(z, "0")) -
            FV::delta(z, parse_element(z, "-1")));
  CHECK(th.components[1] ==
        FV::delta(z, parse_element(z, "0")) -
            FV::delta(z, parse_element(z, "1")));
  double ip = dirichlet_sum(f, gens, 2.0);
  CHECK(std::pow(p_norm(th, 2.0), 2.0) == doctest::Approx(ip));
  CHECK(ip == doctest::Approx(4.0));

  // Random functions on Z^2: identity to 1e-9 relative.
  auto z2 = GroupSpec::free_abelian(2);
  auto gens2 = GeneratingSet::standard(z2);
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 100; ++t) {
    auto v = rand_real_vec(z2, rng);
    auto tv = theta(v, gens2);
    double lhs = std::pow(p_norm(tv, 2.5), 2.5);
    double rhs = dirichlet_sum(v, gens2, 2.5);
    CHECK(std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, rhs));
  }

  // Constants: zero tuple (the only finitely supported constant is 0).
  auto zvec = FV::zero(z);
  auto thz = theta(zvec, gens);
  for (const auto& c : thz.components) CHECK(c.is_zero());
}

TEST_CASE("theta on graph functions") {
  auto f2 = GroupSpec::free_group(2);
  auto b = std::make_shared<CayleyBall>(f2, GeneratingSet::standard(f2), 3);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1, 1);
  Eigen::VectorXd vals(static_cast<Eigen::Index>(b->size()));
  for (Eigen::Index i = 0; i < vals.size(); ++i) vals[i] = u(rng);
  GraphFunction f(b, vals);
  auto th = theta(f);
  CHECK(th.shrunk);  // frontier exists
  // Identity against the sum of gradient powers over full vertices.
  double p = 2.5;
  KahanSum ip;
  for (std::size_t v = 0; v < b->size(); ++v)
    if (b->all_neighbors_inside(v)) ip.add(gradient_power(f, v, p));
  CHECK(th.p_power_norm(p) == doctest::Approx(ip.value()).epsilon(1e-12));

  // Constant function: zero components, ker theta = constants.
  auto thc = theta(GraphFunction::constant(b, 2.0));
  CHECK(thc.p_power_norm(2.0) == 0.0);
}
