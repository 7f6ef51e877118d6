#pragma once

// Homology of the nerve with normalized chains.

#include <algorithm>
#include <cstddef>
#include <string>
#include <optional>
#include <vector>

#include "fincat/category.hpp"
#include "fincat/error.hpp"
#include "fincat/functor.hpp"
#include "fincat/linalg.hpp"

namespace fincat {

using Chain = std::vector<std::size_t>;

struct NerveComplex {
  CatPtr cat;
  std::size_t max_degree = 0;
  // chains[0][k] = {object}; chains[d] holds composable tuples (f_1..f_d)
  // of non-identities with cod f_i = dom f_{i+1}.
  std::vector<std::vector<Chain>> chains;
  // boundaries[d] : C_d -> C_{d-1}; boundaries[0] is 0 x |C_0|.
  std::vector<IntMatrix> boundaries;
  bool top_is_last = false;  // no chains above max_degree

  std::size_t index_of(std::size_t d, const Chain& c) const {
    auto it = std::lower_bound(chains[d].begin(), chains[d].end(), c);
    return it != chains[d].end() && *it == c ? static_cast<std::size_t>(it - chains[d].begin()) : npos;
  }
};

namespace detail {

inline std::vector<Chain> extend_chains(const FinCat& c, const std::vector<Chain>& prev, StepCounter& steps) {
  std::vector<Chain> out;
  for (const Chain& t : prev) {
    std::size_t x = c.cod(t.back());
    for (std::size_t f = c.num_objects(); f < c.num_morphisms(); ++f) {
      if (c.dom(f) != x) continue;
      steps.tick();
      Chain n = t;
      n.push_back(f);
      out.push_back(std::move(n));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline bool has_extension(const FinCat& c, const std::vector<Chain>& chains) {
  for (const Chain& t : chains)
    for (std::size_t f = c.num_objects(); f < c.num_morphisms(); ++f)
      if (c.dom(f) == c.cod(t.back())) return true;
  return false;
}

}  // namespace detail

inline NerveComplex build_nerve(const CatPtr& cat, std::size_t d_max, Budget budget = {}) {
  const FinCat& c = *cat;
  StepCounter steps(budget, "nerve");
  NerveComplex n;
  n.cat = cat;
  n.max_degree = d_max;
  n.chains.resize(d_max + 1);
  for (std::size_t x = 0; x < c.num_objects(); ++x) n.chains[0].push_back({x});
  if (d_max >= 1)
    for (std::size_t f = c.num_objects(); f < c.num_morphisms(); ++f) n.chains[1].push_back({f});
  for (std::size_t d = 2; d <= d_max; ++d) n.chains[d] = detail::extend_chains(c, n.chains[d - 1], steps);
  if (d_max == 0) n.top_is_last = c.num_morphisms() == c.num_objects();
  else n.top_is_last = !detail::has_extension(c, n.chains[d_max]);

  n.boundaries.resize(d_max + 1);
  n.boundaries[0] = IntMatrix(0, n.chains[0].size());
  for (std::size_t d = 1; d <= d_max; ++d) {
    IntMatrix m(n.chains[d - 1].size(), n.chains[d].size());
    for (std::size_t k = 0; k < n.chains[d].size(); ++k) {
      const Chain& t = n.chains[d][k];
      if (d == 1) {
        m(c.cod(t[0]), k) += 1;
        m(c.dom(t[0]), k) -= 1;
        continue;
      }
      for (std::size_t i = 0; i <= d; ++i) {
        Chain face;
        if (i == 0) face.assign(t.begin() + 1, t.end());
        else if (i == d) face.assign(t.begin(), t.end() - 1);
        else {
          face.assign(t.begin(), t.begin() + (i - 1));
          face.push_back(c.compose(t[i], t[i - 1]));
          face.insert(face.end(), t.begin() + (i + 1), t.end());
        }
        bool degenerate = false;
        for (std::size_t f : face) degenerate |= c.is_identity(f);
        if (degenerate) continue;
        std::size_t row = n.index_of(d - 1, face);
        if (i % 2 == 0) m(row, k) += 1;
        else m(row, k) -= 1;
      }
    }
    n.boundaries[d] = std::move(m);
  }
  return n;
}

// True when every ∂_d ∘ ∂_{d+1} vanishes.
inline bool boundary_squares_zero(const NerveComplex& n) {
  for (std::size_t d = 1; d + 1 <= n.max_degree; ++d)
    if (!(n.boundaries[d] * n.boundaries[d + 1]).is_zero()) return false;
  return true;
}

struct HomologyDegree {
  std::size_t betti = 0;
  std::vector<Integer> torsion;  // invariant factors > 1
  RatMatrix cycles;              // columns: representatives of a basis of H_d(Q)
  bool reliable = false;
};

struct HomologyResult {
  NerveComplex nerve;
  std::vector<HomologyDegree> degrees;
  std::size_t reliable_up_to() const {
    std::size_t k = 0;
    while (k < degrees.size() && degrees[k].reliable) ++k;
    return k;  // degrees [0, k) are exact
  }
};

inline HomologyResult homology(const CatPtr& cat, std::size_t d_max, Budget budget = {}) {
  HomologyResult h;
  h.nerve = build_nerve(cat, d_max, budget);
  const NerveComplex& n = h.nerve;
  std::vector<std::size_t> ranks(d_max + 2, 0);
  for (std::size_t d = 1; d <= d_max; ++d) ranks[d] = rank(n.boundaries[d]);
  h.degrees.resize(d_max + 1);
  for (std::size_t d = 0; d <= d_max; ++d) {
    HomologyDegree& hd = h.degrees[d];
    hd.reliable = d < d_max || n.top_is_last;
    std::size_t cd = n.chains[d].size();
    hd.betti = cd - ranks[d] - ranks[d + 1];
    if (d < d_max)
      for (const Integer& f : invariant_factors(n.boundaries[d + 1]))
        if (f > 1) hd.torsion.push_back(f);
    // Kernel vectors that enlarge the image of ∂_{d+1}, greedily.
    RatMatrix kernel = d == 0 ? RatMatrix::identity(cd) : nullspace(to_rational(n.boundaries[d]));
    RatMatrix span = d < d_max ? to_rational(n.boundaries[d + 1]) : RatMatrix(cd, 0);
    std::size_t r = ranks[d + 1];
    std::vector<std::size_t> picked;
    for (std::size_t k = 0; k < kernel.cols() && picked.size() < hd.betti; ++k) {
      RatMatrix trial = hconcat(span, kernel.column(k));
      std::size_t tr = rank(trial);
      if (tr > r) {
        span = std::move(trial);
        r = tr;
        picked.push_back(k);
      }
    }
    hd.cycles = RatMatrix(cd, picked.size());
    for (std::size_t j = 0; j < picked.size(); ++j)
      for (std::size_t i = 0; i < cd; ++i) hd.cycles(i, j) = kernel(i, picked[j]);
  }
  return h;
}

// The chain map of F in degree d as a matrix C_d(C) -> C_d(D).
inline IntMatrix chain_map(const CatFunctor& F, const NerveComplex& src, const NerveComplex& dst, std::size_t d) {
  IntMatrix m(dst.chains[d].size(), src.chains[d].size());
  for (std::size_t k = 0; k < src.chains[d].size(); ++k) {
    const Chain& t = src.chains[d][k];
    Chain img;
    bool degenerate = false;
    for (std::size_t f : t) {
      std::size_t g = d == 0 ? F.obj(f) : F.mor(f);
      if (d > 0 && F.target->is_identity(g)) degenerate = true;
      img.push_back(g);
    }
    if (degenerate) continue;
    m(dst.index_of(d, img), k) += 1;
  }
  return m;
}

// Matrix of H_d(F) in the cycle bases of the two results.
inline RatMatrix induced_map(const CatFunctor& F, const HomologyResult& hc, const HomologyResult& hd, std::size_t d) {
  if (d >= hc.degrees.size() || d >= hd.degrees.size() || !hc.degrees[d].reliable || !hd.degrees[d].reliable)
    throw Error(ErrorKind::TruncationUnreliable, "degree " + std::to_string(d) + " is beyond the computed range");
  if (!same_structure(F.source, hc.nerve.cat) || !same_structure(F.target, hd.nerve.cat))
    throw Error(ErrorKind::CategoryMismatch, "functor does not match the homology results");
  RatMatrix pushed = to_rational(chain_map(F, hc.nerve, hd.nerve, d)) * hc.degrees[d].cycles;
  const auto& target = hd.degrees[d];
  RatMatrix basis = d < hd.nerve.max_degree ? hconcat(target.cycles, to_rational(hd.nerve.boundaries[d + 1])) : target.cycles;
  auto x = solve(basis, pushed);
  if (!x) throw Error(ErrorKind::PreconditionFails, "image of a cycle is not a cycle");
  RatMatrix out(target.betti, pushed.cols());
  for (std::size_t i = 0; i < target.betti; ++i)
    for (std::size_t j = 0; j < pushed.cols(); ++j) out(i, j) = (*x)(i, j);
  return out;
}

inline RatMatrix induced_map(const CatFunctor& F, std::size_t d, Budget budget = {}) {
  return induced_map(F, homology(F.source, d + 1, budget), homology(F.target, d + 1, budget), d);
}

}  // namespace fincat
