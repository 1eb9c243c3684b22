#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "lplab/ball.hpp"
#include "lplab/gens.hpp"
#include "lplab/group.hpp"
#include "lplab/group_io.hpp"

using namespace lplab;

namespace {

GroupElement rand_element(const GroupSpec& g, std::mt19937_64& rng) {
  const auto gens = GeneratingSet::standard(g);
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  std::uniform_int_distribution<int> len(0, 12);
  GroupElement x = identity(g);
  int n = len(rng);
  for (int i = 0; i < n; ++i) x = mul(g, x, gens.elements[pick(rng)]);
  return x;
}

}  // namespace

TEST_CASE("identity per kind") {
  auto z = GroupSpec::free_abelian(1);
  CHECK(identity(z) == parse_element(z, "0"));
  auto f2 = GroupSpec::free_group(2);
  CHECK(identity(f2) == parse_element(f2, "e"));
  CHECK(identity(f2).data().empty());
  auto c6 = GroupSpec::finite_cyclic(6);
  CHECK(identity(c6) == parse_element(c6, "0"));
  for (const auto& g : {z, f2, c6}) {
    auto e = identity(g);
    auto x = parse_element(g, g.kind() == GroupKind::Free ? "a" : "1");
    CHECK(mul(g, e, x) == x);
    CHECK(mul(g, x, e) == x);
  }
}

TEST_CASE("mul examples") {
  auto z = GroupSpec::free_abelian(1);
  CHECK(mul(z, parse_element(z, "3"), parse_element(z, "4")) ==
        parse_element(z, "7"));

  auto f2 = GroupSpec::free_group(2);
  // (a b)(b^-1 a) = a a by free cancellation
  CHECK(mul(f2, parse_element(f2, "a b"), parse_element(f2, "b^-1 a")) ==
        parse_element(f2, "a a"));

  auto c6 = GroupSpec::finite_cyclic(6);
  CHECK(mul(c6, parse_element(c6, "4"), parse_element(c6, "5")) ==
        parse_element(c6, "3"));
}

TEST_CASE("inv and word_length examples") {
  auto z = GroupSpec::free_abelian(1);
  auto sz = GeneratingSet::standard(z);
  CHECK(inv(z, parse_element(z, "-5")) == parse_element(z, "5"));
  CHECK(word_length(z, sz, parse_element(z, "-5")) == 5);

  auto f2 = GroupSpec::free_group(2);
  auto sf = GeneratingSet::standard(f2);
  auto w = parse_element(f2, "a b a^-1");
  CHECK(inv(f2, w) == parse_element(f2, "a b^-1 a^-1"));
  CHECK(word_length(f2, sf, w) == 3);

  auto c6 = GroupSpec::finite_cyclic(6);
  auto sc = GeneratingSet::standard(c6);
  CHECK(inv(c6, parse_element(c6, "4")) == parse_element(c6, "2"));
  CHECK(word_length(c6, sc, parse_element(c6, "4")) == 2);
}

TEST_CASE("group element round trips and inverse law") {
  std::mt19937_64 rng(20240517);
  std::vector<GroupSpec> groups = {
      GroupSpec::free_abelian(1), GroupSpec::free_abelian(3),
      GroupSpec::free_group(2), GroupSpec::finite_cyclic(6),
      GroupSpec::parse("Z^2 x C3"), GroupSpec::parse("F2 x C4")};
  for (const auto& g : groups) {
    auto e = identity(g);
    for (int t = 0; t < 1000; ++t) {
      auto x = rand_element(g, rng);
      auto y = rand_element(g, rng);
      CHECK(mul(g, x, inv(g, x)) == e);
      CHECK(inv(g, mul(g, x, y)) == mul(g, inv(g, y), inv(g, x)));
      CHECK(parse_element(g, format_element(g, x)) == x);
      validate_element(g, x);
    }
  }
}

TEST_CASE("group spec grammar") {
  CHECK(GroupSpec::parse("Z") == GroupSpec::free_abelian(1));
  CHECK(GroupSpec::parse("Z^3") == GroupSpec::free_abelian(3));
  CHECK(GroupSpec::parse("F2") == GroupSpec::free_group(2));
  CHECK(GroupSpec::parse("C6") == GroupSpec::finite_cyclic(6));
  CHECK(GroupSpec::parse(" Z^2  x C3 ") ==
        GroupSpec::direct_product(
            {GroupSpec::free_abelian(2), GroupSpec::finite_cyclic(3)}));
  CHECK(GroupSpec::parse("Z x Z x C2").factors().size() == 3);
  CHECK(GroupSpec::parse("Z^2 x C3").is_infinite());
  CHECK(!GroupSpec::parse("C2 x C3").is_infinite());
  CHECK(GroupSpec::parse("C2 x C3").order() == 6);

  CHECK_THROWS_AS(GroupSpec::parse("Q"), DomainError);
  CHECK_THROWS_AS(GroupSpec::parse("Z^0"), DomainError);
  CHECK_THROWS_AS(GroupSpec::parse("Z x"), DomainError);
  CHECK_THROWS_AS(GroupSpec::parse("Z y C3"), DomainError);
  // Errors carry a position.
  try {
    GroupSpec::parse("Z x Q3");
    CHECK(false);
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("position 4") != std::string::npos);
  }
}

TEST_CASE("standard generating sets are symmetric and identity-free") {
  for (const char* name : {"Z", "Z^2", "F2", "F3", "C2", "C6", "Z x C3",
                           "Z^2 x C3", "F2 x C2"}) {
    auto g = GroupSpec::parse(name);
    auto s = GeneratingSet::standard(g);
    CHECK(is_symmetric(g, s));
    CHECK(!contains_identity(g, s));
  }
  CHECK(GeneratingSet::standard(GroupSpec::parse("F2")).size() == 4);
  CHECK(GeneratingSet::standard(GroupSpec::parse("Z^2")).size() == 4);
  CHECK(GeneratingSet::standard(GroupSpec::parse("C2")).size() == 1);
  // Mixed moves on products: (|S1|+1)(|S2|+1)-1.
  CHECK(GeneratingSet::standard(GroupSpec::parse("Z x C3")).size() == 8);
}

TEST_CASE("ball sizes match closed forms") {
  auto z = GroupSpec::free_abelian(1);
  CHECK(ball(z, 3).size() == 7);

  auto f2 = GroupSpec::free_group(2);
  CHECK(ball(f2, 2).size() == 17);  // 1 + 4 + 12

  auto z2 = GroupSpec::free_abelian(2);
  CHECK(ball(z2, 1).size() == 5);

  // |B(Z^d, R)| is a degree-d polynomial; check d=2 closed form 2R^2+2R+1.
  for (std::int64_t r = 0; r <= 6; ++r)
    CHECK(ball(z2, r).size() ==
          static_cast<std::size_t>(2 * r * r + 2 * r + 1));

  // |B(F_k, R)| = 1 + 2k((2k-1)^R - 1)/(2k-2)
  for (std::int64_t k : {2, 3}) {
    auto fk = GroupSpec::free_group(k);
    for (std::int64_t r = 0; r <= 4; ++r) {
      std::int64_t pw = 1;
      for (int i = 0; i < r; ++i) pw *= 2 * k - 1;
      std::int64_t expect = 1 + 2 * k * (pw - 1) / (2 * k - 2);
      CHECK(ball(fk, r).size() == static_cast<std::size_t>(expect));
    }
  }

  // Product balls with mixed-move generators factor as products.
  auto prod = GroupSpec::parse("Z x C3");
  for (std::int64_t r = 0; r <= 3; ++r) {
    std::size_t zball = ball(z, r).size();
    std::size_t cball = ball(GroupSpec::finite_cyclic(3), r).size();
    CHECK(ball(prod, r).size() == zball * cball);
  }
}

TEST_CASE("ball indexing is deterministic and layered") {
  auto f2 = GroupSpec::free_group(2);
  auto b1 = ball(f2, 3);
  auto b2 = ball(f2, 3);
  CHECK(b1.vertices() == b2.vertices());
  for (std::size_t i = 0; i + 1 < b1.size(); ++i) {
    CHECK(b1.layer(i) <= b1.layer(i + 1));
    if (b1.layer(i) == b1.layer(i + 1)) CHECK(b1.vertex(i) < b1.vertex(i + 1));
  }
  // Word length equals BFS layer.
  auto s = GeneratingSet::standard(f2);
  for (std::size_t i = 0; i < b1.size(); ++i)
    CHECK(b1.layer(i) == word_length(f2, s, b1.vertex(i)));
}

TEST_CASE("interior vertices keep all neighbors inside") {
  for (const char* name : {"Z", "Z^2", "F2", "C6", "Z x C3"}) {
    auto g = GroupSpec::parse(name);
    auto b = ball(g, 3);
    for (std::size_t i = 0; i < b.interior_count(); ++i)
      CHECK(b.all_neighbors_inside(i));
  }
}

TEST_CASE("neighbors examples") {
  auto z = GroupSpec::free_abelian(1);
  auto bz = ball(z, 3);
  auto nb = neighbors(bz, parse_element(z, "3"));
  REQUIRE(nb.size() == 2);
  CHECK(nb[0].target == parse_element(z, "4"));
  CHECK(!nb[0].inside);
  CHECK(nb[1].target == parse_element(z, "2"));
  CHECK(nb[1].inside);

  auto f2 = GroupSpec::free_group(2);
  auto bf = ball(f2, 2);
  for (const auto& e : neighbors(bf, identity(f2))) CHECK(e.inside);

  auto z2 = GroupSpec::free_abelian(2);
  auto b2 = ball(z2, 1);
  int inside_count = 0;
  for (const auto& e : neighbors(b2, parse_element(z2, "(1,0)"))) {
    if (e.inside) {
      ++inside_count;
      CHECK(e.target == parse_element(z2, "(0,0)"));
    }
  }
  CHECK(inside_count == 1);

  CHECK_THROWS_AS(neighbors(bz, parse_element(z, "9")), DomainError);
}

TEST_CASE("neighbors consistent with mul") {
  std::mt19937_64 rng(7);
  auto g = GroupSpec::parse("Z^2 x C3");
  auto b = ball(g, 3);
  std::uniform_int_distribution<std::size_t> pick(0, b.size() - 1);
  for (int t = 0; t < 200; ++t) {
    const auto& v = b.vertex(pick(rng));
    for (const auto& e : neighbors(b, v)) CHECK(e.target == mul(g, v, e.s));
  }
}

TEST_CASE("ball caps and finite groups") {
  auto f2 = GroupSpec::free_group(2);
  CHECK_THROWS_AS(ball(f2, 10, 100), ResourceLimitError);
  // Finite group: ball saturates, frontier eventually empty.
  auto c6 = GroupSpec::finite_cyclic(6);
  auto b = ball(c6, 10);
  CHECK(b.size() == 6);
  CHECK(b.frontier_empty());
  auto b3 = ball(c6, 3);
  CHECK(b3.size() == 6);
  CHECK(!b3.frontier_empty());  // residue 3 has word length exactly 3
}

TEST_CASE("word_length falls back to BFS for user generating sets") {
  auto z = GroupSpec::free_abelian(1);
  // S = {+2, -2, +3, -3}: word length of 1 is 2 (3 - 2).
  GeneratingSet s;
  for (const char* t : {"2", "-2", "3", "-3"})
    s.elements.push_back(parse_element(z, t));
  CHECK(word_length(z, s, parse_element(z, "1")) == 2);
  CHECK(word_length(z, s, parse_element(z, "12")) == 4);
  GeneratingSet bad;
  bad.elements.push_back(parse_element(z, "2"));
  CHECK_THROWS_AS(word_length(z, bad, parse_element(z, "1")), DomainError);
}

TEST_CASE("infinite order detection") {
  auto z = GroupSpec::free_abelian(1);
  CHECK(has_infinite_order(z, parse_element(z, "1")));
  CHECK(!has_infinite_order(z, parse_element(z, "0")));
  auto c6 = GroupSpec::finite_cyclic(6);
  CHECK(!has_infinite_order(c6, parse_element(c6, "1")));
  auto p = GroupSpec::parse("Z x C3");
  CHECK(has_infinite_order(p, parse_element(p, "1|0")));
  CHECK(!has_infinite_order(p, parse_element(p, "0|2")));
}
