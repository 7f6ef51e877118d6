#include <catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"

using namespace fincat;

namespace {

std::size_t point_dim(const CatPtr& p, Variant v = Variant::All) {
  return simple_value_dim(point_oracle(), poset_point_generators(p), v);
}

void check_pattern_is_order(const CatPtr& p) {
  SizeMatrix pat = generator_pattern(poset_point_generators(p));
  for (std::size_t x = 0; x < p->num_objects(); ++x)
    for (std::size_t y = 0; y < p->num_objects(); ++y) CHECK(pat[x][y] == p->hom(y, x).size());
}

}  // namespace

TEST_CASE("chains, antichains and Boolean lattices") {
  for (std::size_t n = 1; n <= 5; ++n) {
    CHECK(point_dim(chain(n)) == n);
    check_pattern_is_order(chain(n));
  }
  for (std::size_t m = 1; m <= 4; ++m) {
    CHECK(point_dim(discrete(m)) == m);
    check_pattern_is_order(discrete(m));
  }
  CHECK(point_dim(boolean_lattice(1)) == 2);
  CHECK(point_dim(boolean_lattice(2)) == 4);
  check_pattern_is_order(boolean_lattice(2));
}

TEST_CASE("random five-element posets") {
  std::mt19937_64 rng(55);
  for (int t = 0; t < 10; ++t) {
    auto rel = oracle::random_order(5, rng);
    CatPtr p = from_poset(rel);
    CHECK(point_dim(p, Variant::Birep) == 5);
    SizeMatrix pat = generator_pattern(poset_point_generators(p));
    for (std::size_t x = 0; x < 5; ++x)
      for (std::size_t y = 0; y < 5; ++y) CHECK(pat[x][y] == (rel[y][x] ? 1u : 0u));
  }
}

TEST_CASE("rank is invariant under reordering and duplication") {
  std::mt19937_64 rng(4);
  CatPtr p = from_poset(oracle::random_order(4, rng));
  GeneratorLists g = poset_point_generators(p);
  std::size_t base = simple_value_dim(point_oracle(), g);
  GeneratorLists h = g;
  std::shuffle(h.psi.begin(), h.psi.end(), rng);
  std::shuffle(h.omega.begin(), h.omega.end(), rng);
  CHECK(simple_value_dim(point_oracle(), h) == base);
  h.psi.push_back(h.psi.front());
  h.omega.push_back(h.omega.back());
  CHECK(simple_value_dim(point_oracle(), h) == base);
  // Dropping generators can only lower the bound.
  GeneratorLists fewer = g;
  fewer.psi.pop_back();
  CHECK(simple_value_dim(point_oracle(), fewer) == base - 1);
}

TEST_CASE("variants gate the generators") {
  CHECK(parse_variant("left-rep") == Variant::LeftRep);
  CHECK_THROWS_AS(parse_variant("both"), Error);
  GeneratorLists g;
  g.psi.push_back(make_biset(one_category(), kronecker(), {{1, 1}}, [](std::size_t, std::size_t, std::size_t) {
    return std::size_t{0};
  }));
  CHECK_NOTHROW(check_generators(g, Variant::All));
  CHECK_NOTHROW(check_generators(g, Variant::LeftRep));
  CHECK_THROWS_AS(check_generators(g, Variant::RightRep), Error);
  CHECK_THROWS_AS(check_generators(g, Variant::Birep), Error);
  CHECK_THROWS_AS(poset_point_generators(cyclic_group(2)), Error);
}

TEST_CASE("essential algebra of discrete categories") {
  for (std::size_t m = 1; m <= 3; ++m) {
    auto w = discrete_essential_witness(m);
    CHECK(w.size() == m * m);
    for (const auto& f : w) {
      CHECK(f.verified);
      CHECK(f.e_ij.size_matrix()[f.i][f.j] == 1);
    }
  }
  CHECK_THROWS_AS(discrete_essential_witness(0), Error);
}

TEST_CASE("essential check on Boolean lattices") {
  for (std::size_t n = 0; n <= 2; ++n) {
    auto rep = corresp_essential_check(n);
    INFO("n = " << n);
    for (const auto& p : rep.problems) INFO(p);
    CHECK(rep.clean());
    CHECK(rep.correspondence_bisets == (std::size_t{1} << (n * n)));
    CHECK(rep.product_pairs == rep.correspondences * rep.correspondences);
  }
  CHECK(corresp_essential_check(2).boundary_failures > 0);
}
