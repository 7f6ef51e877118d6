#include <catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"

using namespace fincat;

namespace {

CatPtr poset_fixture(const std::string& name) {
  return dsl::parse(oracle::fixture("posets.fincat")).get<dsl::CategoryBlock>(name).cat;
}

// Maximal chains of a partial order, as the facets of its order complex.
std::vector<std::vector<int>> maximal_chains(const std::vector<std::vector<bool>>& rel) {
  const std::size_t n = rel.size();
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t last) {
    bool extended = false;
    for (std::size_t y = 0; y < n; ++y)
      if (y != last && rel[last][y]) {
        bool cover_ok = true;
        for (int c : cur)
          if (static_cast<std::size_t>(c) == y) cover_ok = false;
        if (!cover_ok) continue;
        extended = true;
        cur.push_back(static_cast<int>(y));
        rec(y);
        cur.pop_back();
      }
    if (!extended) {
      // Keep it only if nothing fits below the start either.
      bool minimal = true;
      for (std::size_t z = 0; z < n; ++z)
        if (z != static_cast<std::size_t>(cur.front()) && rel[z][cur.front()]) minimal = false;
      if (minimal) out.push_back(cur);
    }
  };
  for (std::size_t x = 0; x < n; ++x) {
    cur = {static_cast<int>(x)};
    rec(x);
  }
  return out;
}

std::vector<std::size_t> bettis(const HomologyResult& h) {
  std::vector<std::size_t> b;
  for (const auto& d : h.degrees) b.push_back(d.betti);
  return b;
}

CatFunctor subdivision_last_vertex(const CatPtr& p, CatPtr& sd) {
  // Nonempty chains of p ordered by inclusion, sent to their top element.
  auto rel = order_relation(*p);
  auto facets = maximal_chains(rel);
  std::set<std::vector<int>> chains;
  for (auto f : facets)
    for (unsigned m = 1; m < (1u << f.size()); ++m) {
      std::vector<int> c;
      for (std::size_t i = 0; i < f.size(); ++i)
        if (m >> i & 1u) c.push_back(f[i]);
      chains.insert(c);
    }
  std::vector<std::vector<int>> list(chains.begin(), chains.end());
  std::vector<std::vector<bool>> inc(list.size(), std::vector<bool>(list.size()));
  for (std::size_t i = 0; i < list.size(); ++i)
    for (std::size_t j = 0; j < list.size(); ++j)
      inc[i][j] = std::includes(list[j].begin(), list[j].end(), list[i].begin(), list[i].end());
  sd = from_poset(inc);
  std::vector<std::size_t> obj;
  for (const auto& c : list) {
    // Chains are stored sorted by index; the top is the element above all others.
    std::size_t top = static_cast<std::size_t>(c.front());
    for (int v : c)
      if (rel[top][v]) top = static_cast<std::size_t>(v);
    obj.push_back(top);
  }
  return monotone_functor(sd, p, obj);
}

}  // namespace

TEST_CASE("hollow and solid triangles") {
  auto hollow = homology(poset_fixture("Hollow"), 3);
  auto solid = homology(poset_fixture("Solid"), 3);
  CHECK(bettis(hollow) == std::vector<std::size_t>{1, 1, 0, 0});
  CHECK(bettis(solid) == std::vector<std::size_t>{1, 0, 0, 0});
  CHECK(hollow.reliable_up_to() == 4);
  for (const auto& d : hollow.degrees) CHECK(d.torsion.empty());
}

TEST_CASE("poset homology matches the order complex") {
  std::mt19937_64 rng(101);
  for (int t = 0; t < 15; ++t) {
    std::size_t n = 3 + rng() % 4;
    auto rel = oracle::random_order(n, rng);
    auto want = oracle::simplicial_betti(maximal_chains(rel));
    auto h = homology(from_poset(rel), n);
    REQUIRE(h.nerve.top_is_last);
    for (std::size_t d = 0; d <= n; ++d) CHECK(h.degrees[d].betti == (d < want.size() ? want[d] : 0));
  }
  for (const char* name : {"Hollow", "Solid", "A3", "B2"}) {
    CatPtr p = poset_fixture(name);
    auto want = oracle::simplicial_betti(maximal_chains(order_relation(*p)));
    auto h = homology(p, 3);
    for (std::size_t d = 0; d < want.size(); ++d) CHECK(h.degrees[d].betti == want[d]);
  }
}

TEST_CASE("C_2 has 2-torsion in odd degrees") {
  auto h = homology(cyclic_group(2), 4);
  REQUIRE(h.degrees.size() == 5);
  CHECK(h.degrees[0].betti == 1);
  CHECK(h.degrees[1].torsion == std::vector<Integer>{2});
  CHECK(h.degrees[2].torsion.empty());
  CHECK(h.degrees[3].torsion == std::vector<Integer>{2});
  for (std::size_t d = 1; d <= 3; ++d) CHECK(h.degrees[d].betti == 0);
  CHECK_FALSE(h.nerve.top_is_last);
  CHECK(h.reliable_up_to() == 4);
  CHECK_FALSE(h.degrees[4].reliable);
  // Normalized nerve: one non-degenerate chain per degree.
  for (std::size_t d = 0; d <= 4; ++d) CHECK(h.nerve.chains[d].size() == 1);
}

TEST_CASE("boundary squares to zero on fixtures") {
  for (const char* f : {"c2.fincat", "c4c2.fincat", "example38.fincat", "example53.fincat", "kronecker.fincat",
                        "monoid.fincat", "posets.fincat"}) {
    auto doc = dsl::parse(oracle::fixture(f));
    for (const auto* b : doc.all<dsl::CategoryBlock>()) {
      INFO(f << " " << b->name);
      CHECK(boundary_squares_zero(build_nerve(b->cat, 4)));
    }
  }
}

TEST_CASE("induced maps") {
  CatPtr hollow = poset_fixture("Hollow");
  auto h = homology(hollow, 3);
  RatMatrix id = induced_map(identity_functor(hollow), h, h, 1);
  CHECK(id == RatMatrix::identity(1));
  RatMatrix k = induced_map(constant_functor(hollow, hollow, 0), h, h, 1);
  CHECK(k.is_zero());
  CHECK(induced_map(constant_functor(hollow, hollow, 0), h, h, 0) == RatMatrix::identity(1));

  auto doc = dsl::parse(oracle::fixture("posets.fincat"));
  CHECK(induced_map(doc.get<dsl::FunctorBlock>("collapse").functor, 1).rows() == 0);

  auto ends = enumerate_functors(hollow, hollow);
  std::size_t autos = 0;
  for (std::size_t i = 0; i < ends.size(); i += 7)
    for (std::size_t j = 0; j < ends.size(); j += 11) {
      RatMatrix lhs = induced_map(compose_functors(ends[i], ends[j]), h, h, 1);
      CHECK(lhs == induced_map(ends[i], h, h, 1) * induced_map(ends[j], h, h, 1));
    }
  for (const auto& F : ends)
    if (is_isomorphism(F)) {
      ++autos;
      RatMatrix m = induced_map(F, h, h, 1);
      CHECK((m(0, 0) == 1 || m(0, 0) == -1));
    }
  CHECK(autos == 6);
}

TEST_CASE("subdivision is a homology isomorphism") {
  CatPtr hollow = poset_fixture("Hollow");
  CatPtr sd;
  CatFunctor last = subdivision_last_vertex(hollow, sd);
  REQUIRE(check_functor(last).empty());
  auto hs = homology(sd, 3);
  auto hh = homology(hollow, 3);
  CHECK(bettis(hs) == bettis(hh));
  RatMatrix m = induced_map(last, hs, hh, 1);
  REQUIRE(m.rows() == 1);
  CHECK((m(0, 0) == 1 || m(0, 0) == -1));
}

TEST_CASE("truncation is reported") {
  auto h = homology(cyclic_group(2), 2);
  CHECK_THROWS_AS(induced_map(identity_functor(cyclic_group(2)), h, h, 2), Error);
  CHECK_NOTHROW(induced_map(identity_functor(cyclic_group(2)), h, h, 1));
}
