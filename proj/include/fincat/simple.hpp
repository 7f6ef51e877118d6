#pragma once

// Values of simple biset functors by the rank method, and the finite
// checks behind the essential algebras of [m] and of 2^X.

#include <cstddef>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "fincat/biset.hpp"
#include "fincat/constructions.hpp"
#include "fincat/corresp.hpp"
#include "fincat/linalg.hpp"

namespace fincat {

// A functor value S(C) of dimension dim, with bisets acting by matrices.
struct EvaluationOracle {
  CatPtr base;
  std::size_t dim = 0;
  std::function<RatMatrix(const Biset&)> eval;
};

// omega: (D,C)-bisets, psi: (C,D)-bisets.
struct GeneratorLists {
  std::vector<Biset> omega;
  std::vector<Biset> psi;
};

enum class Variant { All, LeftRep, RightRep, Birep };

inline const char* to_string(Variant v) {
  switch (v) {
    case Variant::All: return "all";
    case Variant::LeftRep: return "left-rep";
    case Variant::RightRep: return "right-rep";
    case Variant::Birep: return "birep";
  }
  return "?";
}

inline Variant parse_variant(const std::string& s) {
  if (s == "all") return Variant::All;
  if (s == "left-rep") return Variant::LeftRep;
  if (s == "right-rep") return Variant::RightRep;
  if (s == "birep") return Variant::Birep;
  throw Error(ErrorKind::PreconditionFails, "unknown variant '" + s + "'");
}

inline bool admits(Variant v, const Biset& b) {
  switch (v) {
    case Variant::All: return true;
    case Variant::LeftRep: return is_left_representable(b);
    case Variant::RightRep: return is_right_representable(b);
    case Variant::Birep: return is_birepresentable(b);
  }
  return false;
}

inline void check_generators(const GeneratorLists& gens, Variant v) {
  for (const auto* list : {&gens.omega, &gens.psi})
    for (std::size_t i = 0; i < list->size(); ++i)
      if (!admits(v, (*list)[i]))
        throw Error(ErrorKind::NotBirepresentable, std::string(list == &gens.omega ? "omega" : "psi") + "[" +
                                                       std::to_string(i) + "] is outside the " + to_string(v) + " variant");
}

// Block (i, j) is eval(psi_i ∘ omega_j).
inline RatMatrix rank_method_matrix(const EvaluationOracle& oracle, const GeneratorLists& gens) {
  const std::size_t d = oracle.dim;
  RatMatrix a(gens.psi.size() * d, gens.omega.size() * d);
  for (std::size_t i = 0; i < gens.psi.size(); ++i)
    for (std::size_t j = 0; j < gens.omega.size(); ++j) {
      Biset c = compose_bisets(gens.psi[i], gens.omega[j]);
      if (!same_structure(c.left_cat(), oracle.base) || !same_structure(c.right_cat(), oracle.base))
        throw Error(ErrorKind::CategoryMismatch, "generators do not return to the oracle's category");
      RatMatrix block = oracle.eval(c);
      if (block.rows() != d || block.cols() != d) throw Error(ErrorKind::SizeMismatch, "oracle block has the wrong shape");
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t s = 0; s < d; ++s) a(i * d + r, j * d + s) = block(r, s);
    }
  return a;
}

// A lower bound in general; exact when the lists are complete for the
// variant.
inline std::size_t simple_value_dim(const EvaluationOracle& oracle, const GeneratorLists& gens, Variant v = Variant::All) {
  check_generators(gens, v);
  return rank(rank_method_matrix(oracle, gens));
}

inline bool is_point_category(const FinCat& c) { return c.num_objects() == 1 && c.num_morphisms() == 1; }

// psi[x] = Hom_P(-, x) as a (1,P)-biset, omega[y] = Hom_P(y, -) as a
// (P,1)-biset.
inline GeneratorLists poset_point_generators(const CatPtr& p) {
  if (!is_poset_category(*p)) throw Error(ErrorKind::NotAPoset, "category is not a poset");
  CatPtr one = one_category();
  const std::size_t n = p->num_objects();
  GeneratorLists g;
  for (std::size_t x = 0; x < n; ++x) {
    SizeMatrix sizes(1, std::vector<std::size_t>(n));
    for (std::size_t y = 0; y < n; ++y) sizes[0][y] = p->hom(y, x).size();
    g.psi.push_back(make_biset(one, p, sizes, [](std::size_t, std::size_t, std::size_t) -> std::size_t { return 0; }));
  }
  for (std::size_t y = 0; y < n; ++y) {
    SizeMatrix sizes(n, std::vector<std::size_t>(1));
    for (std::size_t z = 0; z < n; ++z) sizes[z][0] = p->hom(y, z).size();
    g.omega.push_back(make_biset(p, one, sizes, [](std::size_t, std::size_t, std::size_t) -> std::size_t { return 0; }));
  }
  return g;
}

// S(1) = Q with a (1,1)-biset acting by its cardinality.
inline EvaluationOracle point_oracle() {
  EvaluationOracle o;
  o.base = one_category();
  o.dim = 1;
  o.eval = [](const Biset& b) {
    if (!is_point_category(*b.left_cat()) || !is_point_category(*b.right_cat()))
      throw Error(ErrorKind::NotBirepresentable, "point oracle takes (1,1)-bisets only");
    RatMatrix m(1, 1);
    m(0, 0) = Rational(static_cast<unsigned long>(b.value_size(0, 0)));
    return m;
  };
  return o;
}

// Entry (i, j) is |psi_i ∘ omega_j| for (1,1)-valued composites.
inline SizeMatrix generator_pattern(const GeneratorLists& gens) {
  SizeMatrix m(gens.psi.size(), std::vector<std::size_t>(gens.omega.size()));
  for (std::size_t i = 0; i < gens.psi.size(); ++i)
    for (std::size_t j = 0; j < gens.omega.size(); ++j) {
      Biset c = compose_bisets(gens.psi[i], gens.omega[j]);
      if (c.left_cat()->num_objects() != 1 || c.right_cat()->num_objects() != 1)
        throw Error(ErrorKind::CategoryMismatch, "pattern needs composites over one object");
      m[i][j] = c.value_size(0, 0);
    }
  return m;
}

// Bisets between discrete categories: any size matrix, trivial actions.
inline Biset discrete_biset(const CatPtr& left, const CatPtr& right, const SizeMatrix& sizes) {
  return make_biset(left, right, sizes, [](std::size_t, std::size_t, std::size_t u) { return u; });
}

// A single point at (i, j).
inline Biset elementary_biset(std::size_t rows, std::size_t cols, std::size_t i, std::size_t j) {
  SizeMatrix s(rows, std::vector<std::size_t>(cols, 0));
  s[i][j] = 1;
  return discrete_biset(discrete(rows), discrete(cols), s);
}

struct DiscreteFactor {
  std::size_t i = 0, j = 0;
  Biset e_ij, e_i1, e_1j;
  bool verified = false;
};

// E_ij = E_i1 ∘ E_1j for every i, j in [m].
inline std::vector<DiscreteFactor> discrete_essential_witness(std::size_t m) {
  if (m == 0) throw Error(ErrorKind::PreconditionFails, "m must be positive");
  std::vector<DiscreteFactor> out;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      DiscreteFactor f;
      f.i = i;
      f.j = j;
      f.e_ij = elementary_biset(m, m, i, j);
      f.e_i1 = elementary_biset(m, 1, i, 0);
      f.e_1j = elementary_biset(1, m, 0, j);
      f.verified = isomorphic(compose_bisets(f.e_i1, f.e_1j), f.e_ij);
      out.push_back(std::move(f));
    }
  return out;
}

struct CorrespEssentialReport {
  std::size_t set_size = 0;
  std::size_t correspondences = 0;
  std::size_t indecomposable_birep = 0;
  std::size_t boundary_failures = 0;
  std::size_t factored = 0;            // factorizations verified
  std::size_t correspondence_bisets = 0;
  std::size_t recovered = 0;           // round trips through biset_to_corresp
  std::size_t product_pairs = 0;
  std::size_t products_recovered = 0;
  std::vector<std::string> problems;

  bool clean() const {
    return problems.empty() && factored == boundary_failures && recovered == correspondence_bisets &&
           products_recovered == product_pairs && correspondence_bisets == correspondences;
  }
};

// (a) birepresentable indecomposables on 2^X off the boundary factor
// through a smaller lattice, and the rest come from correspondences;
// (b) products of correspondence bisets recover the product correspondence.
// All pairs are checked when |X| <= 2, `samples` random pairs otherwise.
inline CorrespEssentialReport corresp_essential_check(std::size_t nx, std::size_t samples = 200, Budget budget = {}) {
  if (nx > 3) throw Error(ErrorKind::BudgetExceeded, "sets of size above 3 are out of range");
  CorrespEssentialReport rep;
  rep.set_size = nx;
  rep.correspondences = std::size_t{1} << (nx * nx);

  std::vector<Correspondence> seen;
  for_each_birep_row_form(nx, nx, false, [&](const RowForm& rf) {
    Biset b = biset_from_row_form(rf, nx, nx);
    if (!is_birepresentable(b) || !is_indecomposable(b.carrier())) {
      rep.problems.push_back("row form outside the birepresentable indecomposables");
      return;
    }
    ++rep.indecomposable_birep;
    auto f = factor_correspondence_candidate(b);
    if (f) {
      ++rep.boundary_failures;
      if (f->middle_size < nx && isomorphic(compose_bisets(f->first, f->second), b, budget)) ++rep.factored;
      else rep.problems.push_back("factorization failed");
      return;
    }
    ++rep.correspondence_bisets;
    Correspondence u = biset_to_corresp(b);
    if (isomorphic(corresp_to_biset(u), b, budget)) ++rep.recovered;
    else rep.problems.push_back("round trip failed");
    for (const auto& v : seen)
      if (v == u) rep.problems.push_back("two correspondence bisets share a correspondence");
    seen.push_back(u);
  }, budget);

  auto check_pair = [&](const Correspondence& u, const Correspondence& v) {
    ++rep.product_pairs;
    Biset prod = compose_bisets(corresp_to_biset(u), corresp_to_biset(v));
    if (is_correspondence_biset(prod) && biset_to_corresp(prod) == compose_corresp(u, v)) ++rep.products_recovered;
    else rep.problems.push_back("product of correspondence bisets is off");
  };
  if (nx <= 2) {
    auto all = all_correspondences(nx, nx);
    for (const auto& u : all)
      for (const auto& v : all) check_pair(u, v);
  } else {
    std::mt19937_64 rng(nx * 7919u + samples);
    std::uniform_int_distribution<std::size_t> pick(0, rep.correspondences - 1);
    for (std::size_t k = 0; k < samples; ++k) check_pair(corresp_from_code(nx, nx, pick(rng)), corresp_from_code(nx, nx, pick(rng)));
  }
  return rep;
}

}  // namespace fincat
