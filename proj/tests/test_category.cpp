#include <catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"

using namespace fincat;

namespace {

CatPtr fixture_cat(const std::string& file, const std::string& name) {
  return dsl::parse(oracle::fixture(file)).get<dsl::CategoryBlock>(name).cat;
}

std::size_t factorial(std::size_t n) { return n <= 1 ? 1 : n * factorial(n - 1); }

}  // namespace

TEST_CASE("validation lists every broken law") {
  RawCategory raw = raw_with_identities({"o"});
  raw.morphisms.push_back({0, 0, "a"});
  raw.morphisms.push_back({0, 0, "b"});
  // aa = b, ab = a, ba = bb = b: (ab)a != a(ba).
  raw.comp = {0, 1, 2, 1, 2, 1, 2, 2, 2};
  auto issues = check_category(raw);
  REQUIRE_FALSE(issues.empty());
  bool nonassoc = false;
  for (const auto& i : issues) nonassoc |= i.kind == Issue::Kind::NonAssociative;
  CHECK(nonassoc);
  CHECK_THROWS_AS(FinCat::make(raw), ValidationError);

  RawCategory missing = raw_with_identities({"x", "y"});
  missing.morphisms.push_back({0, 1, "f"});
  missing.comp.assign(9, npos);
  auto mi = check_category(missing);
  REQUIRE_FALSE(mi.empty());
  CHECK(mi.front().kind == Issue::Kind::MissingComposite);
}

TEST_CASE("posets, chains and Boolean lattices") {
  CHECK_THROWS_AS(from_poset({{true, true}, {true, true}}), Error);
  CHECK_THROWS_AS(from_poset({{true, true, false}, {false, true, true}, {false, false, true}}), Error);
  CatPtr a3 = chain(3);
  CHECK(a3->num_objects() == 3);
  CHECK(a3->num_morphisms() == 6);
  CHECK(is_poset_category(*a3));
  CatPtr b2 = boolean_lattice(2);
  CHECK(b2->num_morphisms() == 9);
  CHECK(b2->object_name(1) == "{1}");
  CHECK(b2->object_name(3) == "{1,2}");
  CHECK(boolean_lattice(2) == b2);
  CHECK(subset_object(2, 2u) == 2);
  CHECK_FALSE(is_poset_category(*cyclic_group(2)));
}

TEST_CASE("monoid tables are checked") {
  CHECK_THROWS_AS(from_monoid({{0, 1}, {1, 0}}, 1), Error);
  CHECK_THROWS_AS(from_monoid({{0, 1, 2}, {1, 2, 1}, {2, 1, 0}}, 0), Error);
  CatPtr c3 = cyclic_group(3);
  CHECK(c3->compose(1, 2) == 0);
  CHECK(c3->is_iso(1));
  CatPtr m = idempotent_monoid();
  CHECK(m->compose(1, 1) == 1);
  CHECK_FALSE(m->is_iso(1));
}

TEST_CASE("opposite and product") {
  CatPtr k = kronecker();
  CatPtr ko = opposite(k);
  CHECK(ko->dom(2) == 1);
  CHECK(ko->cod(2) == 0);
  CHECK(opposite(ko)->same_structure(*k));
  ProductCat p = product(chain(2), cyclic_group(2));
  CHECK(p.cat->num_objects() == 2);
  CHECK(p.cat->num_morphisms() == 6);
  for (std::size_t f = 0; f < p.cat->num_morphisms(); ++f) {
    auto [a, b] = p.mor_pair[f];
    CHECK(p.morphism(a, b) == f);
  }
  CHECK(check_category(p.cat->raw()).empty());
  CoproductCat u = disjoint_union(chain(2), kronecker());
  CHECK(u.cat->num_objects() == 4);
  CHECK(check_category(u.cat->raw()).empty());
  CHECK_FALSE(is_connected(*u.cat));
}

TEST_CASE("functor enumeration matches brute force") {
  std::vector<CatPtr> cats = {one_category(), chain(2), chain(3), discrete(2), kronecker(), cyclic_group(2),
                              cyclic_group(3), idempotent_monoid(), boolean_lattice(1)};
  for (const auto& a : cats)
    for (const auto& b : cats) {
      if (a->num_morphisms() > 4 && b->num_morphisms() > 4) continue;
      CHECK(enumerate_functors(a, b).size() == oracle::count_functors(*a, *b));
    }
}

TEST_CASE("functors are validated") {
  CatPtr a2 = chain(2);
  CHECK_THROWS_AS(make_functor(a2, a2, {1, 0}, {1, 0, 2}), Error);
  CatFunctor F = make_functor(a2, a2, {0, 0}, {0, 0, 0});
  CHECK(check_functor(F).empty());
  CHECK_FALSE(is_fully_faithful(F));
  CHECK(is_fully_faithful(identity_functor(a2)));
}

TEST_CASE("Out of discrete categories and cyclic groups") {
  for (std::size_t m = 1; m <= 4; ++m) {
    OutGroup g = out_group(discrete(m));
    CHECK(g.reps.size() == factorial(m));
    CHECK(is_group_table(g.table));
  }
  CHECK(out_group(cyclic_group(3)).reps.size() == 2);
  CHECK(out_group(cyclic_group(2)).reps.size() == 1);
  CHECK(out_group(chain(3)).reps.size() == 1);
  CHECK(out_group(kronecker()).reps.size() == 2);
}

TEST_CASE("equivalences") {
  // The chain with a doubled top object is equivalent to A_2.
  RawCategory raw = raw_with_identities({"a", "b", "b'"});
  raw.morphisms.push_back({0, 1, "f"});
  raw.morphisms.push_back({0, 2, "f'"});
  raw.morphisms.push_back({1, 2, "i"});
  raw.morphisms.push_back({2, 1, "j"});
  const std::size_t m = 7;
  raw.comp.assign(m * m, npos);
  auto set = [&](std::size_t g, std::size_t f, std::size_t h) { raw.comp[g * m + f] = h; };
  for (std::size_t f = 0; f < m; ++f) {
    set(raw.morphisms[f].cod, f, f);
    set(f, raw.morphisms[f].dom, f);
  }
  set(5, 3, 4);
  set(6, 4, 3);
  set(6, 5, 1);
  set(5, 6, 2);
  CatPtr big = FinCat::make(raw);
  auto r = are_equivalent(big, chain(2));
  CHECK(r.status == Tri::Yes);
  REQUIRE(r.forward);
  CHECK(is_equivalence(*r.forward));
  CHECK(are_equivalent(chain(2), chain(3)).status == Tri::No);
  CHECK(are_equivalent(kronecker(), opposite(kronecker())).status == Tri::Yes);
  CHECK(are_isomorphic(chain(2), opposite(chain(2))).status == Tri::Yes);
  CHECK(are_isomorphic(big, chain(2)).status == Tri::No);
  CHECK(are_equivalent(chain(3), chain(3), Budget{1}).status == Tri::Unknown);
}

TEST_CASE("idempotent completion") {
  Completion c = idempotent_completion(idempotent_monoid());
  CHECK(c.cat->num_objects() == 2);
  CHECK(check_category(c.cat->raw()).empty());
  CHECK(check_functor(c.inclusion).empty());
  CHECK(is_fully_faithful(c.inclusion));
  // Example 5.3: the completion of {1, a} is equivalent to the u, v category.
  CatPtr e53 = fixture_cat("example53.fincat", "E53");
  CHECK(are_equivalent(c.cat, e53).status == Tri::Yes);
  CHECK(are_equivalent(idempotent_monoid(), e53).status == Tri::No);
  Completion g = idempotent_completion(cyclic_group(3));
  CHECK(g.cat->num_objects() == 1);
}

TEST_CASE("adjoints of the C4/C2 inclusion") {
  auto doc = dsl::parse(oracle::fixture("c4c2.fincat"));
  const CatFunctor& incl = doc.get<dsl::FunctorBlock>("incl").functor;
  AdjointResult left = find_left_adjoint(incl);
  AdjointResult right = find_right_adjoint(incl);
  CHECK(left.status == Tri::Yes);
  CHECK(right.status == Tri::No);
  // Full-subcategory inclusion of the terminal object of A_2.
  Subcategory top = full_subcategory(chain(2), {1});
  CHECK(find_left_adjoint(top.inclusion).status == Tri::Yes);
  CHECK(find_right_adjoint(top.inclusion).status == Tri::No);
}
