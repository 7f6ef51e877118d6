#pragma once

// Random inputs for property tests.

#include <random>
#include <vector>

#include "fincat/fincat.hpp"

namespace gen {

using namespace fincat;

inline std::vector<std::vector<std::size_t>> random_perm(const std::vector<std::size_t>& sizes, std::mt19937_64& rng) {
  std::vector<std::vector<std::size_t>> p(sizes.size());
  for (std::size_t x = 0; x < sizes.size(); ++x) {
    p[x].resize(sizes[x]);
    for (std::size_t i = 0; i < sizes[x]; ++i) p[x][i] = i;
    std::shuffle(p[x].begin(), p[x].end(), rng);
  }
  return p;
}

// One random indecomposable-ish piece: a representable, a point, a product
// of representables, or a generated piece of such a product.
inline CSet random_piece(const CatPtr& c, std::mt19937_64& rng) {
  const std::size_t n = c->num_objects();
  switch (rng() % 4) {
    case 0: return representable_at(c, rng() % n);
    case 1: return point_cset(c);
    case 2: return product_cset(representable_at(c, rng() % n), representable_at(c, rng() % n));
    default: {
      CSet p = product_cset(representable_at(c, rng() % n), representable_at(c, rng() % n));
      if (p.total_size() == 0) return point_cset(c);
      return generated_subcset(p, {p.unflat(rng() % p.total_size())}).set;
    }
  }
}

// A relabelled disjoint union of up to `pieces` random pieces, kept below
// `max_total` elements.
inline CSet random_cset(const CatPtr& c, std::mt19937_64& rng, std::size_t pieces = 3, std::size_t max_total = 12) {
  CSet s = empty_cset(c);
  std::size_t k = 1 + rng() % pieces;
  for (std::size_t i = 0; i < k; ++i) {
    CSet p = random_piece(c, rng);
    if (s.total_size() + p.total_size() > max_total) continue;
    s = disjoint_union(s, p);
  }
  return relabel(s, random_perm(s.sizes(), rng));
}

inline Biset random_biset(const CatPtr& left, const CatPtr& right, std::mt19937_64& rng, std::size_t max_total = 6) {
  auto frame = make_frame(left, right);
  return Biset(frame, random_cset(frame->prod.cat, rng, 3, max_total));
}

inline std::vector<CatPtr> small_categories() {
  return {one_category(), chain(2), chain(3), discrete(2), kronecker(), cyclic_group(2), cyclic_group(3),
          idempotent_monoid(), boolean_lattice(2)};
}

}  // namespace gen
