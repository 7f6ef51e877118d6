#include <catch_amalgamated.hpp>

#include "oracles.hpp"

using namespace fincat;

namespace {

// Value at (B, A) straight from the definition: a point iff ⁺U(A) ⊆ B.
bool oracle_point(const Correspondence& u, unsigned b, unsigned a) {
  for (auto y : oracle::plus(u, oracle::from_mask(a)))
    if (!(b >> y & 1u)) return false;
  return true;
}

void check_against_definition(const Correspondence& u) {
  Biset b = corresp_to_biset(u);
  LatticeIndex iy(u.to_size), ix(u.from_size);
  for (unsigned bm = 0; bm <= iy.full(); ++bm)
    for (unsigned am = 0; am <= ix.full(); ++am)
      REQUIRE(b.value_size(iy.object_of[bm], ix.object_of[am]) == (oracle_point(u, bm, am) ? 1u : 0u));
}

}  // namespace

TEST_CASE("relational composition and plus maps") {
  for (std::size_t code = 0; code < 64; ++code) {
    Correspondence u = corresp_from_code(2, 3, code);  // Z = 2, Y = 3
    Correspondence v = corresp_from_code(3, 2, (code * 37 + 5) % 64);
    Correspondence w = compose_corresp(u, v);
    for (std::size_t z = 0; z < 2; ++z)
      for (std::size_t x = 0; x < 2; ++x) {
        bool want = false;
        for (auto [z1, y] : oracle::pairs_of(u))
          if (z1 == z && v.contains(y, x)) want = true;
        CHECK(w.contains(z, x) == want);
      }
    auto t = plus_map(v);
    for (unsigned a = 0; a < 4; ++a) CHECK(t[a] == oracle::to_mask(oracle::plus(v, oracle::from_mask(a))));
  }
  CHECK_THROWS_AS(compose_corresp(Correspondence(2, 3), Correspondence(2, 2)), Error);
  CHECK(compose_corresp(diagonal(3), corresp_from_code(3, 2, 45)) == corresp_from_code(3, 2, 45));
}

TEST_CASE("correspondence bisets match the definition") {
  for (std::size_t ny = 0; ny <= 3; ++ny)
    for (std::size_t nx = 0; nx <= 3; ++nx) {
      if (ny * nx > 6) continue;
      for (const auto& u : all_correspondences(ny, nx)) check_against_definition(u);
    }
}

TEST_CASE("Example 8.4") {
  auto doc = dsl::parse(oracle::fixture("example84.fincat"));
  const Correspondence& u = doc.get<dsl::CorrespBlock>("U").corresp;
  CHECK(u == corresp_from_pairs(2, 2, {{0, 0}, {0, 1}, {1, 1}}));
  Biset b = corresp_to_biset(u);
  CHECK(pattern_matrix(b) ==
        "* ∅ ∅ ∅\n"
        "* * ∅ ∅\n"
        "* ∅ ∅ ∅\n"
        "* * * *\n");
  CHECK(is_correspondence_biset(b));
  CHECK(biset_to_corresp(b) == u);

  Biset upper = corresp_to_upper_biset(u);
  std::string why;
  CHECK_FALSE(is_correspondence_biset(upper, &why));
  CHECK(why.find("column {2}") != std::string::npos);
  CHECK_FALSE(is_left_representable(upper));
  CHECK(is_right_representable(upper));
  CHECK_THROWS_AS(biset_to_corresp(upper), Error);
}

TEST_CASE("sixteen correspondences on two points") {
  auto all = all_correspondences(2, 2);
  REQUIRE(all.size() == 16);
  std::vector<Biset> bisets;
  for (const auto& u : all) {
    Biset b = corresp_to_biset(u);
    CHECK(is_correspondence_biset(b));
    CHECK(is_birepresentable(b));
    CHECK(is_indecomposable(b.carrier()));
    CHECK(biset_to_corresp(b) == u);
    bisets.push_back(b);
  }
  for (std::size_t i = 0; i < 16; ++i)
    for (std::size_t j = i + 1; j < 16; ++j) CHECK_FALSE(isomorphic(bisets[i], bisets[j]));
}

TEST_CASE("correspondence biset counts") {
  CHECK(count_correspondence_bisets(2, 2) == 16);
  CHECK(count_correspondence_bisets(2, 3) == 64);
  CHECK(count_correspondence_bisets(3, 2) == 64);
  CHECK(count_correspondence_bisets(1, 1) == 2);
  CHECK(count_correspondence_bisets(0, 2) == 1);
  CHECK(count_correspondence_bisets(2, 0) == 1);
  for (const Biset& b : enumerate_correspondence_bisets(2, 3))
    CHECK(isomorphic(corresp_to_biset(biset_to_corresp(b)), b));
}

TEST_CASE("functoriality on two points") {
  auto all = all_correspondences(2, 2);
  for (const auto& u : all)
    for (const auto& v : all) {
      Biset p = compose_bisets(corresp_to_biset(u), corresp_to_biset(v));
      REQUIRE(isomorphic(p, corresp_to_biset(compose_corresp(u, v))));
    }
  Biset id = corresp_to_biset(diagonal(2));
  CHECK(isomorphic(id, identity_biset(boolean_lattice(2))));
}

TEST_CASE("functoriality across sizes") {
  for (std::size_t cu = 0; cu < 64; cu += 5)
    for (std::size_t cv = 0; cv < 64; cv += 7) {
      Correspondence u = corresp_from_code(2, 3, cu), v = corresp_from_code(3, 2, cv);
      CHECK(isomorphic(compose_bisets(corresp_to_biset(u), corresp_to_biset(v)),
                       corresp_to_biset(compose_corresp(u, v))));
    }
}

TEST_CASE("off-boundary bisets factor through a smaller lattice") {
  for (auto [ny, nx] : {std::pair<std::size_t, std::size_t>{1, 1}, {2, 2}, {2, 1}, {1, 2}, {2, 3}}) {
    std::size_t factored = 0, corresp = 0;
    for_each_birep_row_form(ny, nx, false, [&](const RowForm& rf) {
      Biset b = biset_from_row_form(rf, ny, nx);
      REQUIRE(is_birepresentable(b));
      auto f = factor_correspondence_candidate(b);
      if (!f) {
        CHECK(is_correspondence_biset(b));
        ++corresp;
        return;
      }
      CHECK_FALSE(is_correspondence_biset(b));
      CHECK(f->middle_size < (f->through == CorrespFactorization::Through::SmallerX ? nx : ny));
      CHECK(isomorphic(compose_bisets(f->first, f->second), b));
      ++factored;
    });
    CHECK(corresp == (std::size_t{1} << (nx * ny)));
    CHECK(factored > 0);
  }
}

TEST_CASE("recognition rejects non-lattice and multi-point bisets") {
  CHECK_THROWS_AS(is_correspondence_biset(identity_biset(chain(3))), Error);
  Biset two = poset_biset(boolean_lattice(1), boolean_lattice(1), {{true, false}, {true, true}});
  CHECK(is_correspondence_biset(two));
  Biset dbl = disjoint_union(two, two);
  std::string why;
  CHECK_FALSE(is_correspondence_biset(dbl, &why));
  CHECK(why.find("points") != std::string::npos);
}
