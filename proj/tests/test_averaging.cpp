#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lplab/averaging.hpp"
#include "lplab/group_io.hpp"

using namespace lplab;

namespace {
using XV = GroupVector<ExactScalar>;

const GroupSpec z = GroupSpec::free_abelian(1);
const GroupElement g1 = parse_element(z, "1");
}  // namespace

TEST_CASE("averaging element support and coefficients") {
  auto spec = make_averaging_spec(z, g1, ExactScalar(1), 4);
  auto x4 = averaging_element(spec);
  CHECK(x4.support_size() == 4);
  for (const auto& t : x4.terms()) {
    CHECK(t.second.abs_squared() == Rational(1, 16));
  }
  // x_1 = omega^{-1} g.
  auto x1 = averaging_element(make_averaging_spec(z, g1, ExactScalar(1), 1));
  CHECK(x1 == XV::delta(z, g1));
  CHECK(p_norm(x1, 2.0) == doctest::Approx(1.0));
}

TEST_CASE("norm law n^{(1-p)/p}") {
  auto x4 = averaging_element(make_averaging_spec(z, g1, ExactScalar(1), 4));
  CHECK(p_norm(x4, 2.0) == doctest::Approx(0.5).epsilon(1e-14));
  auto x8 = averaging_element(make_averaging_spec(z, g1, ExactScalar(1), 8));
  CHECK(p_norm(x8, 1.5) == doctest::Approx(0.5).epsilon(1e-14));

  // Sweep over p and n, exact omega = i, relative error <= 1e-12.
  ExactScalar im(Rational(0), Rational(1));
  for (double p : {1.25, 1.5, 2.0, 3.0}) {
    for (std::int64_t n : {1, 2, 3, 5, 17, 100, 1001}) {
      auto xn = averaging_element(make_averaging_spec(z, g1, im, n));
      double law = averaging_norm_law(n, p);
      CHECK(std::abs(p_norm(xn, p) - law) <= 1e-12 * law);
    }
  }

  // Float mode with a generic unit omega.
  FloatScalar w = std::polar(1.0, 0.7);
  auto xf = averaging_element(
      make_averaging_spec<FloatScalar>(z, g1, w, 64));
  CHECK(p_norm(xf, 2.0) == doctest::Approx(0.125).epsilon(1e-12));
}

TEST_CASE("averaging spec validation") {
  CHECK_THROWS_AS(make_averaging_spec(z, parse_element(z, "0"),
                                      ExactScalar(1), 3),
                  DomainError);
  auto c6 = GroupSpec::finite_cyclic(6);
  CHECK_THROWS_AS(
      make_averaging_spec(c6, parse_element(c6, "1"), ExactScalar(1), 3),
      DomainError);
  CHECK_THROWS_AS(make_averaging_spec(z, g1, ExactScalar(2), 3), DomainError);
  CHECK_THROWS_AS(make_averaging_spec(z, g1, ExactScalar(1), 0), DomainError);
  // Exact rational point on the unit circle is accepted.
  CHECK_NOTHROW(make_averaging_spec(
      z, g1, ExactScalar(Rational(3, 5), Rational(4, 5)), 2));
}

TEST_CASE("factor witness small cases") {
  // n=1, omega=1: 1 - x_1 = 1 - g = (g-1)(-1).
  auto d1 = factor_witness(make_averaging_spec(z, g1, ExactScalar(1), 1));
  CHECK(d1 == -XV::delta(z, identity(z)));

  // n=2, omega=1: d = -(g+2)/2.
  auto d2 = factor_witness(make_averaging_spec(z, g1, ExactScalar(1), 2));
  auto expect = ExactScalar(Rational(-1, 2)) * XV::delta(z, g1) +
                ExactScalar(Rational(-1)) * XV::delta(z, identity(z));
  CHECK(d2 == expect);
}

TEST_CASE("factor witness residual is exactly zero") {
  std::vector<ExactScalar> omegas = {
      ExactScalar(1), ExactScalar(-1), ExactScalar(Rational(0), Rational(1)),
      ExactScalar(Rational(0), Rational(-1))};
  for (const auto& w : omegas) {
    for (std::int64_t n : {1, 2, 3, 5, 16, 64}) {
      auto spec = make_averaging_spec(z, g1, w, n);
      auto d = factor_witness(spec);
      auto lhs = convolve(linear_factor(z, g1, w), d);
      auto rhs = XV::delta(z, identity(z)) - averaging_element(spec);
      CHECK(lhs == rhs);
    }
  }
  // Non-cyclotomic exact units work while the 5^n denominators fit; past
  // that the overflow is reported, never a rounded result.
  ExactScalar w35(Rational(3, 5), Rational(4, 5));
  for (std::int64_t n : {1, 2, 3, 5, 16}) {
    auto spec = make_averaging_spec(z, g1, w35, n);
    auto d = factor_witness(spec);
    CHECK(convolve(linear_factor(z, g1, w35), d) ==
          XV::delta(z, identity(z)) - averaging_element(spec));
  }
  CHECK_THROWS_AS(factor_witness(make_averaging_spec(z, g1, w35, 64)),
                  ResourceLimitError);
  // Also on a non-cyclic ambient group, g = the first free generator.
  auto f2 = GroupSpec::free_group(2);
  auto a = parse_element(f2, "a");
  auto spec = make_averaging_spec(f2, a, ExactScalar(-1), 9);
  auto d = factor_witness(spec);
  CHECK(convolve(linear_factor(f2, a, ExactScalar(-1)), d) ==
        GroupVector<ExactScalar>::delta(f2, identity(f2)) -
            averaging_element(spec));
}

TEST_CASE("neumann inverse telescopes") {
  // omega = 2, K = 0: u = -1/2 delta_e, residual 1/2.
  auto r0 = neumann_inverse(z, g1, ExactScalar(2), 0);
  CHECK(r0.inverse ==
        ExactScalar(Rational(-1, 2)) * XV::delta(z, identity(z)));
  CHECK(r0.residual_one_norm == doctest::Approx(0.5).epsilon(1e-15));

  // omega = 2, K = 30: residual exactly 2^{-31}.
  auto r30 = neumann_inverse(z, g1, ExactScalar(2), 30);
  CHECK(r30.residual.support_size() == 1);
  CHECK(r30.residual.coefficient(parse_element(z, "31")).abs_squared() ==
        Rational(1).pow(1) / Rational(2).pow(62));
  double expect = std::ldexp(1.0, -31);
  CHECK(std::abs(r30.residual_one_norm - expect) <= 1e-15 * expect);

  // omega = 1/2, K = 10: residual (1/2)^{11} via the g^{-1} expansion.
  auto rh = neumann_inverse(z, g1, ExactScalar(Rational(1, 2)), 10);
  double expect_h = std::pow(0.5, 11);
  CHECK(std::abs(rh.residual_one_norm - expect_h) <= 1e-15 * expect_h);
  CHECK(rh.residual.coefficient(parse_element(z, "-11")) !=
        ExactScalar(Rational(0)));

  CHECK_THROWS_AS(neumann_inverse(z, g1, ExactScalar(1), 5), DomainError);
  CHECK_THROWS_AS(neumann_inverse(z, g1, ExactScalar(-1), 5), DomainError);
  FloatScalar on_circle = std::polar(1.0, 1.3);
  CHECK_THROWS_AS(neumann_inverse(z, g1, on_circle, 5), DomainError);
}

TEST_CASE("polynomial synthetic division") {
  // (t-2)(t^2+1) = t^3 - 2t^2 + t - 2
  Polynomial<ExactScalar> p;
  p.coeffs = {ExactScalar(-2), ExactScalar(1), ExactScalar(-2), ExactScalar(1)};
  auto [q, rem] = p.divide_linear(ExactScalar(2));
  CHECK(rem.is_zero());
  REQUIRE(q.coeffs.size() == 3);
  CHECK(q.coeffs[0] == ExactScalar(1));
  CHECK(q.coeffs[1] == ExactScalar(0));
  CHECK(q.coeffs[2] == ExactScalar(1));
  auto [q2, rem2] = p.divide_linear(ExactScalar(1));
  CHECK(rem2 == ExactScalar(-2));
  CHECK(p.evaluate(ExactScalar(1)) == ExactScalar(-2));
}
