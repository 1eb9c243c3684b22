#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "lplab/complexes.hpp"
#include "lplab/group_io.hpp"

using namespace lplab;
using XV = GroupVector<ExactScalar>;

TEST_CASE("builtin complexes validate") {
  auto cz = builtin_complex(BuiltinComplex::Z);
  CHECK(cz.ranks() == std::vector<std::size_t>{1, 1});
  CHECK(compose_check(cz).pass);  // single differential: vacuous
  CHECK(cz.augmentation_ok());

  auto cz2 = builtin_complex(BuiltinComplex::Z2);
  CHECK(cz2.ranks() == std::vector<std::size_t>{1, 2, 1});
  auto chk = compose_check(cz2);
  CHECK(chk.pass);
  REQUIRE(chk.residual_support.size() == 1);
  CHECK(chk.residual_support[0].empty());

  auto cf2 = builtin_complex(BuiltinComplex::Fk, 2);
  CHECK(cf2.ranks() == std::vector<std::size_t>{1, 2});
  CHECK(cf2.augmentation_ok());
  auto cf5 = builtin_complex(BuiltinComplex::Fk, 5);
  CHECK(cf5.ranks() == std::vector<std::size_t>{1, 5});
}

TEST_CASE("koszul composition is exactly zero") {
  auto cz2 = builtin_complex(BuiltinComplex::Z2);
  auto prod = gr_matrix_mul(cz2.differentials()[0], cz2.differentials()[1]);
  CHECK(prod.at(0, 0).is_zero());
}

TEST_CASE("sign-flipped koszul fails with pinpointed support") {
  auto z2 = GroupSpec::free_abelian(2);
  auto a = parse_element(z2, "(1,0)");
  auto b = parse_element(z2, "(0,1)");
  auto e = identity(z2);
  auto am1 = XV::delta(z2, a) - XV::delta(z2, e);
  auto bm1 = XV::delta(z2, b) - XV::delta(z2, e);
  GrMatrix<ExactScalar> d0(z2, 1, 2);
  d0.at(0, 0) = am1;
  d0.at(0, 1) = bm1;
  GrMatrix<ExactScalar> d1(z2, 2, 1);
  d1.at(0, 0) = bm1;
  d1.at(1, 0) = am1;  // sign flipped
  auto bad = ComplexSpec::unchecked(z2, {d0, d1});
  auto chk = compose_check(bad);
  CHECK(!chk.pass);
  REQUIRE(chk.residual_support.size() == 1);
  REQUIRE(chk.residual_support[0].size() == 1);
  CHECK(chk.residual_support[0][0] == std::pair<std::size_t, std::size_t>{0, 0});
  // Validated construction rejects it outright.
  CHECK_THROWS_AS(ComplexSpec(z2, {d0, d1}), DomainError);
}

TEST_CASE("augmentation violations are rejected") {
  auto z = GroupSpec::free_abelian(1);
  GrMatrix<ExactScalar> d0(z, 1, 1);
  d0.at(0, 0) = XV::delta(z, parse_element(z, "1"));  // sums to 1, not 0
  CHECK_THROWS_AS(ComplexSpec(z, {d0}), DomainError);
}

TEST_CASE("dual map consistency on the koszul complex") {
  // Applying d_0 then d_1 on the dual side kills every tuple exactly.
  auto cz2 = builtin_complex(BuiltinComplex::Z2);
  auto z2 = cz2.group();
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<std::int64_t> coord(-2, 2);
  std::uniform_int_distribution<std::int64_t> num(-3, 3);
  for (int t = 0; t < 25; ++t) {
    std::vector<XV::Term> terms;
    for (int j = 0; j < 4; ++j) {
      GroupElement::Data d{coord(rng), coord(rng)};
      terms.emplace_back(GroupElement{std::move(d)},
                         ExactScalar(Rational(num(rng), 2)));
    }
    VectorTuple<ExactScalar> u(z2);
    u.components.push_back(XV::from_terms(z2, std::move(terms)));
    auto v = gr_matrix_apply_dual(cz2.differentials()[0], u);
    CHECK(v.arity() == 2);
    auto w = gr_matrix_apply_dual(cz2.differentials()[1], v);
    REQUIRE(w.arity() == 1);
    CHECK(w.components[0].is_zero());
  }
}

TEST_CASE("complex shape validation") {
  auto z = GroupSpec::free_abelian(1);
  auto zero = XV::zero(z);
  GrMatrix<ExactScalar> two_rows(z, 2, 1);
  CHECK_THROWS_AS(ComplexSpec(z, {two_rows}), DomainError);
}
