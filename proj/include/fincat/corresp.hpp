#pragma once

// Correspondences U ⊆ Y×X and their bisets over Boolean lattices.

#include <bit>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fincat/biset.hpp"
#include "fincat/constructions.hpp"
#include "fincat/functor.hpp"

namespace fincat {

struct Correspondence {
  std::size_t from_size = 0;  // |X|
  std::size_t to_size = 0;    // |Y|
  std::vector<std::vector<bool>> incidence;  // [y][x]

  Correspondence() = default;
  Correspondence(std::size_t to, std::size_t from)
      : from_size(from), to_size(to), incidence(to, std::vector<bool>(from, false)) {}

  bool contains(std::size_t y, std::size_t x) const { return incidence[y][x]; }
  void set(std::size_t y, std::size_t x, bool v = true) { incidence[y][x] = v; }
  friend bool operator==(const Correspondence&, const Correspondence&) = default;
};

// Zero-based pairs (y, x).
inline Correspondence corresp_from_pairs(std::size_t to, std::size_t from,
                                         const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  Correspondence u(to, from);
  for (auto [y, x] : pairs) {
    if (y >= to || x >= from) throw Error(ErrorKind::SizeMismatch, "pair outside Y×X");
    u.set(y, x);
  }
  return u;
}

inline Correspondence diagonal(std::size_t n) {
  Correspondence u(n, n);
  for (std::size_t i = 0; i < n; ++i) u.set(i, i);
  return u;
}

inline Correspondence full_corresp(std::size_t to, std::size_t from) {
  Correspondence u(to, from);
  for (auto& row : u.incidence) row.assign(from, true);
  return u;
}

// The k-th correspondence Y×X, bit y*|X|+x of k giving (y, x).
inline Correspondence corresp_from_code(std::size_t to, std::size_t from, std::size_t code) {
  Correspondence u(to, from);
  for (std::size_t y = 0; y < to; ++y)
    for (std::size_t x = 0; x < from; ++x) u.set(y, x, (code >> (y * from + x)) & 1u);
  return u;
}

inline std::vector<Correspondence> all_correspondences(std::size_t to, std::size_t from) {
  if (to * from >= 20) throw Error(ErrorKind::BudgetExceeded, "too many correspondences to list");
  std::vector<Correspondence> out;
  for (std::size_t code = 0; code < (std::size_t{1} << (to * from)); ++code) out.push_back(corresp_from_code(to, from, code));
  return out;
}

// U ⊆ Z×Y after V ⊆ Y×X.
inline Correspondence compose_corresp(const Correspondence& u, const Correspondence& v) {
  if (u.from_size != v.to_size) throw Error(ErrorKind::SizeMismatch, "middle sets differ in size");
  Correspondence w(u.to_size, v.from_size);
  for (std::size_t z = 0; z < u.to_size; ++z)
    for (std::size_t x = 0; x < v.from_size; ++x)
      for (std::size_t y = 0; y < u.from_size; ++y)
        if (u.contains(z, y) && v.contains(y, x)) {
          w.set(z, x);
          break;
        }
  return w;
}

// ⁺U as a table over masks of X.
inline std::vector<unsigned> plus_map(const Correspondence& u) {
  std::vector<unsigned> t(std::size_t{1} << u.from_size, 0);
  for (unsigned a = 0; a < t.size(); ++a)
    for (std::size_t y = 0; y < u.to_size; ++y)
      for (std::size_t x = 0; x < u.from_size; ++x)
        if ((a >> x & 1u) && u.contains(y, x)) t[a] |= 1u << y;
  return t;
}

// U⁺ as a table over masks of Y.
inline std::vector<unsigned> u_plus(const Correspondence& u) {
  std::vector<unsigned> t(std::size_t{1} << u.to_size, 0);
  for (unsigned b = 0; b < t.size(); ++b)
    for (std::size_t y = 0; y < u.to_size; ++y)
      for (std::size_t x = 0; x < u.from_size; ++x)
        if ((b >> y & 1u) && u.contains(y, x)) t[b] |= 1u << x;
  return t;
}

// Mask <-> object index in boolean_lattice(n).
struct LatticeIndex {
  std::size_t n = 0;
  std::vector<unsigned> mask_of;      // object -> mask
  std::vector<std::size_t> object_of; // mask -> object

  explicit LatticeIndex(std::size_t n_) : n(n_), mask_of(subsets_in_order(n_)), object_of(mask_of.size()) {
    for (std::size_t i = 0; i < mask_of.size(); ++i) object_of[mask_of[i]] = i;
  }
  unsigned full() const { return static_cast<unsigned>((std::size_t{1} << n) - 1); }
};

// Functor 2^X -> 2^Y given by a monotone table over masks.
inline CatFunctor lattice_functor(std::size_t nx, std::size_t ny, const std::vector<unsigned>& table) {
  LatticeIndex ix(nx), iy(ny);
  std::vector<std::size_t> obj(ix.mask_of.size());
  for (std::size_t i = 0; i < obj.size(); ++i) obj[i] = iy.object_of[table[ix.mask_of[i]]];
  return monotone_functor(boolean_lattice(nx), boolean_lattice(ny), obj);
}

// Value at (B, A) is a point iff ⁺U(A) ⊆ B.
inline Biset corresp_to_biset(const Correspondence& u) {
  return phi(lattice_functor(u.from_size, u.to_size, plus_map(u)));
}

// The biset with U⁺ acting on the left: value at (B, A) is a point iff
// A ⊆ U⁺(B).
inline Biset corresp_to_upper_biset(const Correspondence& u) {
  return hat_phi(lattice_functor(u.to_size, u.from_size, u_plus(u)));
}

// 0/1 biset over two posets from its support; the actions are forced.
inline Biset poset_biset(const CatPtr& left, const CatPtr& right, const std::vector<std::vector<bool>>& support) {
  SizeMatrix sizes(left->num_objects(), std::vector<std::size_t>(right->num_objects(), 0));
  for (std::size_t x = 0; x < sizes.size(); ++x)
    for (std::size_t y = 0; y < sizes[x].size(); ++y) sizes[x][y] = support[x][y] ? 1 : 0;
  return make_biset(left, right, sizes, [](std::size_t, std::size_t, std::size_t) -> std::size_t { return 0; });
}

inline std::optional<std::size_t> lattice_rank(const FinCat& c) {
  std::size_t n = c.num_objects();
  if (n == 0 || !std::has_single_bit(n)) return std::nullopt;
  std::size_t k = static_cast<std::size_t>(std::countr_zero(n));
  if (k > 20 || !c.same_structure(*boolean_lattice(k))) return std::nullopt;
  return k;
}

struct LatticeShape {
  std::size_t ny = 0, nx = 0;
};

inline LatticeShape lattice_shape(const Biset& b) {
  auto ny = lattice_rank(*b.left_cat());
  auto nx = lattice_rank(*b.right_cat());
  if (!ny || !nx) throw Error(ErrorKind::WrongBaseCategories, "biset is not over Boolean lattices");
  return {*ny, *nx};
}

// Support of a 0/1 biset as masks: row[B] is the largest A with a point
// at (B, A), or nullopt for an empty row. Fails when some row is not a
// principal down-set or some value has two points.
struct RowForm {
  std::vector<std::optional<unsigned>> row;  // indexed by mask of Y
};

inline std::optional<RowForm> row_form(const Biset& b, std::string* why = nullptr) {
  auto [ny, nx] = lattice_shape(b);
  LatticeIndex iy(ny), ix(nx);
  auto fail = [&](std::string msg) -> std::optional<RowForm> {
    if (why) *why = std::move(msg);
    return std::nullopt;
  };
  RowForm rf;
  rf.row.resize(iy.mask_of.size());
  for (unsigned bm = 0; bm < iy.mask_of.size(); ++bm) {
    unsigned top = 0;
    bool any = false;
    for (unsigned am = 0; am < ix.mask_of.size(); ++am) {
      std::size_t s = b.value_size(iy.object_of[bm], ix.object_of[am]);
      if (s > 1) return fail("value at (" + subset_name(bm) + "," + subset_name(am) + ") has " + std::to_string(s) + " points");
      if (s == 1) {
        top |= am;
        any = true;
      }
    }
    if (!any) continue;
    for (unsigned am = 0; am < ix.mask_of.size(); ++am) {
      bool in = (am & ~top) == 0;
      if (in != (b.value_size(iy.object_of[bm], ix.object_of[am]) == 1))
        return fail("row " + subset_name(bm) + " is not the subsets of one set");
    }
    rf.row[bm] = top;
  }
  return rf;
}

// Columns of a row form must be the supersets of one set.
inline bool columns_principal(const RowForm& rf, std::size_t ny, std::size_t nx, std::string* why = nullptr) {
  for (unsigned am = 0; am < (1u << nx); ++am) {
    unsigned meet = (1u << ny) - 1;
    bool any = false;
    for (unsigned bm = 0; bm < rf.row.size(); ++bm)
      if (rf.row[bm] && (am & ~*rf.row[bm]) == 0) {
        meet &= bm;
        any = true;
      }
    if (!any) continue;
    for (unsigned bm = 0; bm < rf.row.size(); ++bm) {
      bool in = rf.row[bm] && (am & ~*rf.row[bm]) == 0;
      if (in != ((meet & ~bm) == 0)) {
        if (why) *why = "column " + subset_name(am) + " is not the supersets of one set";
        return false;
      }
    }
  }
  return true;
}

inline bool is_correspondence_biset(const Biset& b, std::string* why = nullptr) {
  auto [ny, nx] = lattice_shape(b);
  auto rf = row_form(b, why);
  if (!rf || !columns_principal(*rf, ny, nx, why)) return false;
  unsigned full_y = (1u << ny) - 1, full_x = (1u << nx) - 1;
  if (!rf->row[full_y] || *rf->row[full_y] != full_x) {
    if (why) *why = "row Y is not a point everywhere";
    return false;
  }
  for (unsigned bm = 0; bm <= full_y; ++bm)
    if (!rf->row[bm]) {
      if (why) *why = "column ∅ is empty at " + subset_name(bm);
      return false;
    }
  return true;
}

inline Correspondence biset_to_corresp(const Biset& b) {
  std::string why;
  if (!is_correspondence_biset(b, &why)) throw Error(ErrorKind::NotACorrespondenceBiset, why);
  auto [ny, nx] = lattice_shape(b);
  LatticeIndex iy(ny), ix(nx);
  Correspondence u(ny, nx);
  for (std::size_t y = 0; y < ny; ++y)
    for (std::size_t x = 0; x < nx; ++x)
      u.set(y, x, b.value_size(iy.object_of[iy.full() & ~(1u << y)], ix.object_of[1u << x]) == 0);
  return u;
}

// Rows B, columns A, both in lattice order; "*" for a point, "∅" else.
inline std::string pattern_matrix(const Biset& b) {
  std::string s;
  for (std::size_t x = 0; x < b.left_cat()->num_objects(); ++x) {
    for (std::size_t y = 0; y < b.right_cat()->num_objects(); ++y) {
      if (y) s += " ";
      std::size_t k = b.value_size(x, y);
      s += k == 0 ? "∅" : k == 1 ? "*" : std::to_string(k);
    }
    s += "\n";
  }
  return s;
}

// Sends a mask over {0..k-1} to the subset of the listed elements.
inline unsigned embed_mask(unsigned m, const std::vector<std::size_t>& elems) {
  unsigned out = 0;
  for (std::size_t i = 0; i < elems.size(); ++i)
    if (m >> i & 1u) out |= 1u << elems[i];
  return out;
}

inline std::vector<std::size_t> mask_elements(unsigned m) {
  std::vector<std::size_t> v;
  for (std::size_t i = 0; i < 32; ++i)
    if (m >> i & 1u) v.push_back(i);
  return v;
}

struct CorrespFactorization {
  enum class Through { SmallerX, SmallerY } through = Through::SmallerX;
  std::size_t middle_size = 0;  // the lattice in the middle is 2^middle_size
  Biset first;                  // Omega ≅ first ∘ second
  Biset second;
};

// For an indecomposable birepresentable biset over Boolean lattices that
// misses a point in row Y or in column ∅, a factorization through a
// smaller lattice; nothing for correspondence bisets.
inline std::optional<CorrespFactorization> factor_correspondence_candidate(const Biset& b) {
  auto [ny, nx] = lattice_shape(b);
  std::string why;
  auto rf = row_form(b, &why);
  if (!rf || !columns_principal(*rf, ny, nx, &why)) throw Error(ErrorKind::PreconditionFails, "not birepresentable: " + why);
  unsigned full_y = (1u << ny) - 1, full_x = (1u << nx) - 1;
  if (!rf->row[full_y]) throw Error(ErrorKind::PreconditionFails, "biset is empty");
  LatticeIndex iy(ny), ix(nx);

  if (*rf->row[full_y] != full_x) {
    unsigned xp = *rf->row[full_y];
    auto elems = mask_elements(xp);
    std::size_t k = elems.size();
    LatticeIndex ik(k);
    std::vector<std::vector<bool>> sup(iy.mask_of.size(), std::vector<bool>(ik.mask_of.size()));
    for (std::size_t i = 0; i < iy.mask_of.size(); ++i)
      for (std::size_t j = 0; j < ik.mask_of.size(); ++j)
        sup[i][j] = b.value_size(i, ix.object_of[embed_mask(ik.mask_of[j], elems)]) == 1;
    std::vector<unsigned> incl(std::size_t{1} << k);
    for (unsigned m = 0; m < incl.size(); ++m) incl[m] = embed_mask(m, elems);
    CorrespFactorization f;
    f.through = CorrespFactorization::Through::SmallerX;
    f.middle_size = k;
    f.first = poset_biset(boolean_lattice(ny), boolean_lattice(k), sup);
    f.second = hat_phi(lattice_functor(k, nx, incl));
    return f;
  }

  for (unsigned bm = 0; bm <= full_y; ++bm) {
    if (rf->row[bm]) continue;
    unsigned yp = full_y;
    for (unsigned c = 0; c <= full_y; ++c)
      if (rf->row[c]) yp &= c;
    auto rest = mask_elements(full_y & ~yp);
    std::size_t k = rest.size();
    LatticeIndex ik(k);
    std::vector<std::vector<bool>> sup(ik.mask_of.size(), std::vector<bool>(ix.mask_of.size()));
    for (std::size_t i = 0; i < ik.mask_of.size(); ++i)
      for (std::size_t j = 0; j < ix.mask_of.size(); ++j)
        sup[i][j] = b.value_size(iy.object_of[embed_mask(ik.mask_of[i], rest) | yp], j) == 1;
    std::vector<unsigned> shift(std::size_t{1} << k);
    for (unsigned m = 0; m < shift.size(); ++m) shift[m] = embed_mask(m, rest) | yp;
    CorrespFactorization f;
    f.through = CorrespFactorization::Through::SmallerY;
    f.middle_size = k;
    f.first = phi(lattice_functor(k, ny, shift));
    f.second = poset_biset(boolean_lattice(k), boolean_lattice(nx), sup);
    return f;
  }
  return std::nullopt;
}

// Visits every indecomposable birepresentable (2^Y,2^X)-biset up to iso
// through its row form. With boundary set, only correspondence bisets.
inline void for_each_birep_row_form(std::size_t ny, std::size_t nx, bool boundary,
                                    const std::function<void(const RowForm&)>& fn, Budget budget = {}) {
  LatticeIndex iy(ny);
  StepCounter steps(budget, "birepresentable enumeration");
  const unsigned full_x = (1u << nx) - 1;
  RowForm rf;
  rf.row.assign(iy.mask_of.size(), std::nullopt);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    steps.tick();
    if (i == iy.mask_of.size()) {
      if (!rf.row[iy.full()]) return;
      if (boundary && *rf.row[iy.full()] != full_x) return;
      if (columns_principal(rf, ny, nx)) fn(rf);
      return;
    }
    unsigned bm = iy.mask_of[i];
    // Rows of subsets are already fixed; they bound this one from below.
    bool need = boundary;
    unsigned below = 0;
    for (unsigned sub = bm;; sub = (sub - 1) & bm) {
      if (sub != bm && rf.row[sub]) {
        need = true;
        below |= *rf.row[sub];
      }
      if (sub == 0) break;
    }
    if (!need) {
      rf.row[bm] = std::nullopt;
      rec(i + 1);
    }
    for (unsigned a = 0; a <= full_x; ++a) {
      if ((below & ~a) != 0) continue;
      rf.row[bm] = a;
      rec(i + 1);
    }
    rf.row[bm] = std::nullopt;
  };
  rec(0);
}

inline Biset biset_from_row_form(const RowForm& rf, std::size_t ny, std::size_t nx) {
  LatticeIndex iy(ny), ix(nx);
  std::vector<std::vector<bool>> sup(iy.mask_of.size(), std::vector<bool>(ix.mask_of.size()));
  for (std::size_t i = 0; i < sup.size(); ++i) {
    auto r = rf.row[iy.mask_of[i]];
    for (std::size_t j = 0; j < sup[i].size(); ++j) sup[i][j] = r && (ix.mask_of[j] & ~*r) == 0;
  }
  return poset_biset(boolean_lattice(ny), boolean_lattice(nx), sup);
}

// Correspondence bisets over (2^Y, 2^X) up to iso, found without going
// through correspondences.
inline std::vector<Biset> enumerate_correspondence_bisets(std::size_t nx, std::size_t ny, Budget budget = {}) {
  std::vector<Biset> reps;
  for_each_birep_row_form(ny, nx, true, [&](const RowForm& rf) {
    Biset b = biset_from_row_form(rf, ny, nx);
    if (!is_correspondence_biset(b)) return;
    for (const Biset& r : reps)
      if (isomorphic(r, b, budget)) return;
    reps.push_back(std::move(b));
  }, budget);
  return reps;
}

inline std::size_t count_correspondence_bisets(std::size_t nx, std::size_t ny, Budget budget = {}) {
  return enumerate_correspondence_bisets(nx, ny, budget).size();
}

}  // namespace fincat
