// One PASS/FAIL line per acceptance criterion, with wall-clock timings.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "generators.hpp"
#include "oracles.hpp"

using namespace fincat;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = "failed: " + what;
    pass = pass && ok;
  }
};

struct Criterion {
  int id;
  const char* name;
  double limit_s;  // 0 when there is no runtime bound
  std::function<void(Outcome&)> body;
};

std::vector<std::string> fixture_files() {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(FIXTURE_DIR))
    if (e.path().extension() == ".fincat") out.push_back(e.path().filename().string());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<CatPtr> fixture_categories() {
  std::vector<CatPtr> out;
  for (const auto& f : fixture_files()) {
    auto doc = dsl::parse(oracle::fixture(f));
    for (const auto* b : doc.all<dsl::CategoryBlock>()) out.push_back(b->cat);
  }
  return out;
}

void example38(Outcome& o) {
  Biset omega = biset_from_size_matrix(chain(2), chain(3), {{1, 1, 0}, {1, 1, 1}});
  Biset psi = biset_from_size_matrix(chain(3), chain(2), {{1, 0}, {1, 0}, {1, 1}});
  CompositionTrace trace;
  Biset c = compose_bisets(omega, psi, &trace);
  o.require(c.size_matrix() == SizeMatrix{{1, 0}, {1, 1}}, "size matrix");
  o.require(c.size_matrix() == oracle::compose_sizes(omega, psi), "pair-graph oracle");
  const auto& cell = trace.cell(1, 0);
  o.require(cell.candidate_pairs == 3 && cell.classes == 1, "trace of entry (2,1)");
  o.detail = "|Omega∘Psi| = [[1,0],[1,1]], entry (2,1): " + std::to_string(cell.candidate_pairs) + " pairs -> " +
             std::to_string(cell.classes) + " class";
}

void discrete_mat(Outcome& o) {
  std::size_t checked = 0;
  for (std::size_t m = 1; m <= 3; ++m)
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        for (std::size_t k = 0; k < m; ++k)
          for (std::size_t l = 0; l < m; ++l) {
            Biset p = compose_bisets(elementary_biset(m, m, i, j), elementary_biset(m, m, k, l));
            Biset want = j == k ? elementary_biset(m, m, i, l) : empty_biset(discrete(m), discrete(m));
            o.require(isomorphic(p, want), "E_ij∘E_kl");
            ++checked;
          }
  std::mt19937_64 rng(36);
  std::size_t products = 0;
  for (int t = 0; t < 100; ++t) {
    std::size_t r = 1 + rng() % 3, s = 1 + rng() % 3, u = 1 + rng() % 3;
    auto build = [&](std::size_t rows, std::size_t cols, SizeMatrix& sizes) {
      sizes.assign(rows, std::vector<std::size_t>(cols, 0));
      Biset b = empty_biset(discrete(rows), discrete(cols));
      for (std::size_t a = 0; a < rows; ++a)
        for (std::size_t c = 0; c < cols; ++c) {
          sizes[a][c] = rng() % 3;
          for (std::size_t n = 0; n < sizes[a][c]; ++n) b = disjoint_union(b, elementary_biset(rows, cols, a, c));
        }
      return b;
    };
    SizeMatrix a, b;
    Biset x = build(r, s, a), y = build(s, u, b);
    o.require(compose_bisets(x, y).size_matrix() == multiply(a, b), "matrix product");
    ++products;
  }
  o.detail = std::to_string(checked) + " elementary products, " + std::to_string(products) + " sums";
}

void rigidity(Outcome& o) {
  std::vector<std::pair<const char*, CatPtr>> cats = {{"1", one_category()},   {"[2]", discrete(2)},
                                                      {"A_2", chain(2)},       {"A_3", chain(3)},
                                                      {"C_2", cyclic_group(2)}, {"{1,a}", idempotent_monoid()}};
  std::string names;
  for (auto& [n, c] : cats) {
    o.require(dual_object_check(c), std::string("dual of ") + n);
    names += std::string(names.empty() ? "" : " ") + n;
  }
  o.detail = "zig-zag holds for " + names;
}

void corresp_bridge(Outcome& o) {
  auto all = all_correspondences(2, 2);
  std::vector<Biset> bs;
  for (const auto& u : all) {
    Biset b = corresp_to_biset(u);
    o.require(is_correspondence_biset(b), "recognition");
    o.require(biset_to_corresp(b) == u, "round trip");
    bs.push_back(b);
  }
  for (std::size_t i = 0; i < bs.size(); ++i)
    for (std::size_t j = i + 1; j < bs.size(); ++j) o.require(!isomorphic(bs[i], bs[j]), "pairwise non-isomorphic");
  std::size_t c22 = count_correspondence_bisets(2, 2), c23 = count_correspondence_bisets(2, 3);
  o.require(c22 == 16, "count at (2,2)");
  o.require(c23 == 64, "count at (2,3)");
  for (const auto& u : all)
    for (const auto& v : all)
      o.require(isomorphic(compose_bisets(corresp_to_biset(u), corresp_to_biset(v)),
                           corresp_to_biset(compose_corresp(u, v))),
                "functoriality");
  o.detail = "16 distinct, counts " + std::to_string(c22) + " and " + std::to_string(c23) + ", 256 products";
}

void example84(Outcome& o) {
  auto doc = dsl::parse(oracle::fixture("example84.fincat"));
  const Correspondence& u = doc.get<dsl::CorrespBlock>("U").corresp;
  std::string pat = pattern_matrix(corresp_to_biset(u));
  o.require(pat == "* ∅ ∅ ∅\n* * ∅ ∅\n* ∅ ∅ ∅\n* * * *\n", "first pattern matrix");
  std::string why;
  o.require(!is_correspondence_biset(corresp_to_upper_biset(u), &why), "upper biset rejected");
  o.detail = "pattern matches; upper biset rejected (" + why + ")";
}

void rank_posets(Outcome& o) {
  auto dim = [](const CatPtr& p) { return simple_value_dim(point_oracle(), poset_point_generators(p)); };
  auto pattern_ok = [](const CatPtr& p) {
    SizeMatrix pat = generator_pattern(poset_point_generators(p));
    for (std::size_t x = 0; x < p->num_objects(); ++x)
      for (std::size_t y = 0; y < p->num_objects(); ++y)
        if (pat[x][y] != p->hom(y, x).size()) return false;
    return true;
  };
  std::vector<CatPtr> ps;
  for (std::size_t n = 1; n <= 5; ++n) ps.push_back(chain(n));
  for (std::size_t m = 1; m <= 4; ++m) ps.push_back(discrete(m));
  ps.push_back(boolean_lattice(1));
  ps.push_back(boolean_lattice(2));
  std::mt19937_64 rng(55);
  for (int t = 0; t < 10; ++t) ps.push_back(from_poset(oracle::random_order(5, rng)));
  for (const auto& p : ps) {
    o.require(dim(p) == p->num_objects(), "dim = |P|");
    o.require(pattern_ok(p), "pattern = order");
  }
  o.detail = std::to_string(ps.size()) + " posets";
}

void essential(Outcome& o) {
  std::size_t n = 0;
  for (std::size_t m = 1; m <= 3; ++m)
    for (const auto& f : discrete_essential_witness(m)) {
      o.require(f.verified, "E_ij = E_i1∘E_1j");
      ++n;
    }
  o.detail = std::to_string(n) + " factorizations through 1";
}

void burnside(Outcome& o) {
  CatPtr a2 = chain(2);
  auto reg = make_registry(a2);
  auto fibre = [&](std::size_t m) {
    return make_cset(a2, {m, 1}, [](std::size_t f, std::size_t u) { return f == 2 ? std::size_t{0} : u; });
  };
  for (std::size_t m = 1; m <= 6; ++m)
    for (std::size_t n = 1; n <= 6; ++n)
      o.require(mul(classify(reg, fibre(m)), classify(reg, fibre(n))) == classify(reg, fibre(m * n)),
                "[Omega_m][Omega_n]");
  CatPtr c2 = cyclic_group(2);
  auto rc = make_registry(c2);
  auto pt = classify(rc, point_cset(c2)), fr = classify(rc, representable_at(c2, 0));
  o.require(mul(pt, pt) == pt && mul(pt, fr) == fr && mul(fr, pt) == fr, "unit");
  o.require(mul(fr, fr) == scale(fr, 2), "[C_2]^2 = 2[C_2]");
  o.detail = "36 fibre products, B(C_2) table";
}

void representability(Outcome& o) {
  auto cats = fixture_categories();
  for (const auto& c : cats) o.require(is_birepresentable(identity_biset(c)), "identity birepresentable");
  std::size_t functors = 0;
  for (const auto& a : cats)
    for (const auto& b : cats)
      for (const auto& F : enumerate_functors(a, b)) {
        o.require(is_left_representable(phi(F)), "phi left-representable");
        o.require(is_right_representable(hat_phi(F)), "hat-phi right-representable");
        ++functors;
      }
  auto doc = dsl::parse(oracle::fixture("c4c2.fincat"));
  CatPtr c = doc.get<dsl::CategoryBlock>("C4C2").cat;
  const CatFunctor& incl = doc.get<dsl::FunctorBlock>("incl").functor;
  o.require(is_birepresentable(identity_biset(c)), "C4/C2 birepresentable");
  Tri left = find_left_adjoint(incl).status, right = find_right_adjoint(incl).status;
  o.require(left == Tri::Yes, "left adjoint exists");
  o.require(right == Tri::No, "no right adjoint");
  o.detail = std::to_string(cats.size()) + " categories, " + std::to_string(functors) +
             " functors; C4/C2 inclusion: left adjoint yes, right adjoint no";
}

void homology_checks(Outcome& o) {
  auto posets = dsl::parse(oracle::fixture("posets.fincat"));
  auto bettis = [](const HomologyResult& h, std::size_t k) {
    std::vector<std::size_t> b;
    for (std::size_t d = 0; d < k; ++d) b.push_back(h.degrees[d].betti);
    return b;
  };
  auto hollow = homology(posets.get<dsl::CategoryBlock>("Hollow").cat, 3);
  auto solid = homology(posets.get<dsl::CategoryBlock>("Solid").cat, 3);
  o.require(bettis(hollow, 3) == std::vector<std::size_t>{1, 1, 0}, "hollow triangle");
  o.require(bettis(solid, 3) == std::vector<std::size_t>{1, 0, 0}, "solid triangle");
  auto c2 = homology(cyclic_group(2), 4);
  o.require(c2.degrees[1].betti == 0 && c2.degrees[1].torsion == std::vector<Integer>{2}, "H_1(C_2)");
  o.require(c2.degrees[2].betti == 0 && c2.degrees[2].torsion.empty(), "H_2(C_2)");
  o.require(c2.degrees[3].betti == 0 && c2.degrees[3].torsion == std::vector<Integer>{2}, "H_3(C_2)");
  std::size_t n = 0;
  for (const auto& c : fixture_categories()) {
    o.require(boundary_squares_zero(build_nerve(c, 4)), "boundary squared");
    ++n;
  }
  o.detail = "betti (1,1,0) and (1,0,0); C_2: Z/2, 0, Z/2; dd = 0 on " + std::to_string(n) + " categories";
}

void properties(Outcome& o) {
  std::mt19937_64 rng(11);
  std::vector<CatPtr> cats = {one_category(), chain(2), discrete(2), kronecker(), cyclic_group(2), idempotent_monoid()};
  auto pick = [&] { return cats[rng() % cats.size()]; };
  for (int t = 0; t < 50; ++t) {
    CatPtr a = pick(), b = pick(), c = pick(), d = pick();
    Biset x = gen::random_biset(a, b, rng), y = gen::random_biset(b, c, rng), z = gen::random_biset(c, d, rng);
    o.require(isomorphic(compose_bisets(compose_bisets(x, y), z), compose_bisets(x, compose_bisets(y, z))),
              "associativity");
  }
  auto all = gen::small_categories();
  for (int t = 0; t < 100; ++t) {
    CatPtr c = all[rng() % all.size()];
    CSet s = gen::random_cset(c, rng);
    CSet r = relabel(s, gen::random_perm(s.sizes(), rng));
    auto reg = make_registry(c);
    o.require(classify(reg, s) == classify(reg, r), "decomposition under relabelling");
    o.require(decompose(s).parts.size() == oracle::component_count(s), "component count");
  }
  std::size_t files = 0;
  for (const auto& f : fixture_files()) {
    auto d = dsl::parse(oracle::fixture(f));
    std::string once = dsl::serialize(d);
    auto back = dsl::parse(once);
    o.require(dsl::structurally_equal(d, back) && dsl::serialize(back) == once, "round trip of " + f);
    ++files;
  }
  o.detail = "50 triples, 100 relabellings, " + std::to_string(files) + " fixture files";
}

}  // namespace

int main() {
  std::vector<Criterion> cs = {
      {1, "Example 3.8 composition", 1, example38},
      {2, "discrete End = Mat", 5, discrete_mat},
      {3, "rigidity", 10, rigidity},
      {4, "correspondence bridge", 60, corresp_bridge},
      {5, "Example 8.4 golden", 0, example84},
      {6, "rank method on posets", 30, rank_posets},
      {7, "essential algebra of [m]", 0, essential},
      {8, "Burnside rings", 0, burnside},
      {9, "representability suite", 0, representability},
      {10, "homology", 30, homology_checks},
      {11, "property suite", 60, properties},
  };
  int failures = 0;
  for (const auto& c : cs) {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    try {
      c.body(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit_s > 0 && s >= c.limit_s) {
      if (o.pass) o.detail = "over time limit; " + o.detail;
      o.pass = false;
    }
    failures += !o.pass;
    char timing[64];
    if (c.limit_s > 0) std::snprintf(timing, sizeof timing, "%.3fs < %.0fs", s, c.limit_s);
    else std::snprintf(timing, sizeof timing, "%.3fs", s);
    std::printf("%s  %2d  %-28s [%s]  %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, timing, o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(cs.size()) - failures, cs.size());
  return failures == 0 ? 0 : 1;
}
