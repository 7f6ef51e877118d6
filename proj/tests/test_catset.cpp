#include <catch_amalgamated.hpp>

#include <random>

#include "generators.hpp"
#include "oracles.hpp"

using namespace fincat;

TEST_CASE("check_cset rejects broken actions") {
  CatPtr c2 = cyclic_group(2);
  // g acting as a non-involution on three points.
  CHECK_FALSE(check_cset(*c2, {3}, {{0, 1, 2}, {1, 2, 0}}).empty());
  CHECK(check_cset(*c2, {3}, {{0, 1, 2}, {1, 0, 2}}).empty());
  CHECK_FALSE(check_cset(*c2, {2}, {{0, 1}, {0, 2}}).empty());
  CHECK_THROWS_AS(CSet(c2, {2}, {{1, 0}, {1, 0}}), ValidationError);
}

TEST_CASE("fixture C-sets parse and decompose") {
  auto doc = dsl::parse(oracle::fixture("c2.fincat"));
  const CSet& free = doc.get<dsl::CSetBlock>("Free").set;
  const CSet& mixed = doc.get<dsl::CSetBlock>("Mixed").set;
  CHECK(is_indecomposable(free));
  auto d = decompose(mixed);
  REQUIRE(d.parts.size() == 2);
  CHECK(isomorphic(d.parts[0], free));
  CHECK(d.parts[1].total_size() == 1);
  CHECK(isomorphic(d.parts[1], point_cset(free.cat())));
}

TEST_CASE("decomposition agrees with the component oracle") {
  std::mt19937_64 rng(2024);
  for (const CatPtr& c : gen::small_categories())
    for (int t = 0; t < 20; ++t) {
      CSet s = gen::random_cset(c, rng);
      auto d = decompose(s);
      CHECK(d.parts.size() == oracle::component_count(s));
      std::size_t total = 0;
      CSet glued = empty_cset(c);
      for (const auto& p : d.parts) {
        CHECK(oracle::component_count(p) == 1);
        total += p.total_size();
        glued = disjoint_union(glued, p);
      }
      CHECK(total == s.total_size());
      CHECK(isomorphic(glued, s));
      for (std::size_t x = 0; x < c->num_objects(); ++x)
        for (std::size_t u = 0; u < s.size(x); ++u) {
          auto [p, i] = d.embedding[x][u];
          CHECK(d.part_elements[p][x][i] == u);
        }
    }
}

TEST_CASE("isomorphism agrees with brute force") {
  std::mt19937_64 rng(99);
  std::size_t agree = 0, iso_seen = 0;
  for (const CatPtr& c : gen::small_categories())
    for (int t = 0; t < 25; ++t) {
      CSet a = gen::random_cset(c, rng, 2, 7);
      CSet b = (t % 2) ? relabel(a, gen::random_perm(a.sizes(), rng)) : gen::random_cset(c, rng, 2, 7);
      if (a.sizes() != b.sizes()) continue;
      bool brute = oracle::isomorphic(a, b);
      auto found = iso_cset(a, b);
      CHECK(found.has_value() == brute);
      if (found) CHECK(is_cset_iso(a, b, *found));
      iso_seen += brute;
      ++agree;
    }
  CHECK(agree > 50);
  CHECK(iso_seen > 20);
}

TEST_CASE("decomposition is unique under relabelling") {
  std::mt19937_64 rng(7);
  for (const CatPtr& c : gen::small_categories()) {
    auto reg = make_registry(c);
    for (int t = 0; t < 12; ++t) {
      CSet s = gen::random_cset(c, rng);
      CSet r = relabel(s, gen::random_perm(s.sizes(), rng));
      CHECK(classify(reg, s) == classify(reg, r));
    }
  }
}

TEST_CASE("generated sub-C-sets are closed") {
  CSet k = product_cset(representable_at(kronecker(), 0), representable_at(kronecker(), 0));
  SubCSet g = generated_subcset(k, {{0, 0}});
  CHECK(g.set.sizes() == std::vector<std::size_t>{1, 2});
  CHECK(check_cset(*k.cat(), g.set.sizes(), g.set.tables()).empty());
}

TEST_CASE("representability") {
  CHECK(is_representable(representable_at(chain(3), 0)));
  CHECK(is_representable(point_cset(chain(2))));
  CHECK_FALSE(is_representable(point_cset(kronecker())));
  CHECK_FALSE(is_representable(point_cset(cyclic_group(2))));
  CHECK(is_representable(disjoint_union(representable_at(kronecker(), 0), representable_at(kronecker(), 1))));
  // Hom(y, -) on the split idempotent: generated at y but not at x.
  auto doc = dsl::parse(oracle::fixture("example53.fincat"));
  const CSet& hy = doc.get<dsl::CSetBlock>("Hy").set;
  CatPtr e = hy.cat();
  std::size_t x = e->find_object("x"), y = e->find_object("y");
  CHECK(is_representably_generated(hy, {y, 0}));
  CHECK_FALSE(is_representably_generated(hy, {x, 0}));
  CHECK(is_representable(hy));
  auto two = dsl::parse(oracle::fixture("monoid.fincat")).get<dsl::CSetBlock>("Two").set;
  CHECK(is_representable(two));
  CHECK_FALSE(is_representable(point_cset(two.cat())));
}
