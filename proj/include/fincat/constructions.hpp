#pragma once

// Standard finite categories and the opposite / product / coproduct
// constructions.

#include <bit>
#include <cstddef>
#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "fincat/category.hpp"

namespace fincat {

using Relation = std::vector<std::vector<bool>>;

inline void check_partial_order(const Relation& rel) {
  const std::size_t n = rel.size();
  for (const auto& row : rel)
    if (row.size() != n) throw Error(ErrorKind::NotAPartialOrder, "relation is not square");
  for (std::size_t x = 0; x < n; ++x)
    if (!rel[x][x]) throw Error(ErrorKind::NotAPartialOrder, "not reflexive at " + std::to_string(x));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (x != y && rel[x][y] && rel[y][x])
        throw Error(ErrorKind::NotAPartialOrder, "not antisymmetric at " + std::to_string(x) + "," + std::to_string(y));
      if (!rel[x][y]) continue;
      for (std::size_t z = 0; z < n; ++z)
        if (rel[y][z] && !rel[x][z])
          throw Error(ErrorKind::NotAPartialOrder, "not transitive at " + std::to_string(x) + "," + std::to_string(y) + "," + std::to_string(z));
    }
}

// One morphism x -> y whenever x <= y.
inline CatPtr from_poset(const Relation& rel, std::vector<std::string> names = {}) {
  check_partial_order(rel);
  const std::size_t n = rel.size();
  if (names.empty())
    for (std::size_t x = 0; x < n; ++x) names.push_back("p" + std::to_string(x));
  if (names.size() != n) throw Error(ErrorKind::SizeMismatch, "poset names");
  RawCategory raw = raw_with_identities(names);
  std::vector<std::size_t> mor(n * n, npos);
  for (std::size_t x = 0; x < n; ++x) mor[x * n + x] = x;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (x != y && rel[x][y]) {
        mor[x * n + y] = raw.morphisms.size();
        raw.morphisms.push_back({x, y, names[x] + "_" + names[y]});
      }
  const std::size_t m = raw.morphisms.size();
  raw.comp.assign(m * m, npos);
  for (std::size_t g = 0; g < m; ++g)
    for (std::size_t f = 0; f < m; ++f)
      if (raw.morphisms[g].dom == raw.morphisms[f].cod)
        raw.comp[g * m + f] = mor[raw.morphisms[f].dom * n + raw.morphisms[g].cod];
  return FinCat::make_unchecked(std::move(raw));
}

// Partial order of a category in which every hom set has at most one
// element and no two distinct objects are isomorphic; empty otherwise.
inline bool is_poset_category(const FinCat& c) {
  for (std::size_t x = 0; x < c.num_objects(); ++x)
    for (std::size_t y = 0; y < c.num_objects(); ++y) {
      if (c.hom(x, y).size() > 1) return false;
      if (x != y && !c.hom(x, y).empty() && !c.hom(y, x).empty()) return false;
    }
  return true;
}

inline Relation order_relation(const FinCat& c) {
  Relation r(c.num_objects(), std::vector<bool>(c.num_objects(), false));
  for (std::size_t x = 0; x < c.num_objects(); ++x)
    for (std::size_t y = 0; y < c.num_objects(); ++y) r[x][y] = !c.hom(x, y).empty();
  return r;
}

inline CatPtr one_category() { return from_poset({{true}}, {"x"}); }

inline CatPtr empty_category() { return FinCat::make_unchecked(RawCategory{}); }

inline CatPtr discrete(std::size_t m) {
  Relation r(m, std::vector<bool>(m, false));
  std::vector<std::string> names;
  for (std::size_t i = 0; i < m; ++i) {
    r[i][i] = true;
    names.push_back("d" + std::to_string(i + 1));
  }
  return from_poset(r, names);
}

// A_n: x1 -> x2 -> ... -> xn.
inline CatPtr chain(std::size_t n) {
  Relation r(n, std::vector<bool>(n, false));
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back("x" + std::to_string(i + 1));
    for (std::size_t j = i; j < n; ++j) r[i][j] = true;
  }
  return from_poset(r, names);
}

inline CatPtr antichain(std::size_t m) { return discrete(m); }

// Subsets of {1..n} as bitmasks, listed by (popcount, value).
inline std::vector<unsigned> subsets_in_order(std::size_t n) {
  std::vector<unsigned> s;
  for (unsigned k = 0; k <= n; ++k)
    for (unsigned mask = 0; mask < (1u << n); ++mask)
      if (static_cast<unsigned>(std::popcount(mask)) == k) s.push_back(mask);
  return s;
}

inline std::string subset_name(unsigned mask) {
  std::string s = "{";
  bool first = true;
  for (unsigned i = 0; i < 32; ++i)
    if (mask >> i & 1u) {
      if (!first) s += ",";
      s += std::to_string(i + 1);
      first = false;
    }
  return s + "}";
}

inline CatPtr boolean_lattice_uncached(std::size_t n) {
  auto subs = subsets_in_order(n);
  Relation r(subs.size(), std::vector<bool>(subs.size(), false));
  std::vector<std::string> names;
  for (std::size_t i = 0; i < subs.size(); ++i) {
    names.push_back(subset_name(subs[i]));
    for (std::size_t j = 0; j < subs.size(); ++j) r[i][j] = (subs[i] & ~subs[j]) == 0;
  }
  return from_poset(r, names);
}

// One shared instance per n, so bisets over the same lattices share frames.
inline CatPtr boolean_lattice(std::size_t n) {
  static std::mutex mu;
  static std::map<std::size_t, CatPtr> cache;
  std::lock_guard lock(mu);
  auto& c = cache[n];
  if (!c) c = boolean_lattice_uncached(n);
  return c;
}

// Object index of a subset in boolean_lattice(n).
inline std::size_t subset_object(std::size_t n, unsigned mask) {
  auto subs = subsets_in_order(n);
  for (std::size_t i = 0; i < subs.size(); ++i)
    if (subs[i] == mask) return i;
  return npos;
}

struct MonoidCategory {
  CatPtr cat;
  std::vector<std::size_t> morphism_of;  // monoid element -> morphism id
};

// One-object category from a multiplication table; table[a][b] = a*b, with
// b acting first.
inline MonoidCategory from_monoid(const std::vector<std::vector<std::size_t>>& table, std::size_t unit,
                                  std::vector<std::string> names = {}) {
  const std::size_t n = table.size();
  if (unit >= n) throw Error(ErrorKind::UnitFails, "unit out of range");
  for (const auto& row : table) {
    if (row.size() != n) throw Error(ErrorKind::SizeMismatch, "monoid table not square");
    for (auto v : row)
      if (v >= n) throw Error(ErrorKind::SizeMismatch, "monoid table entry out of range");
  }
  for (std::size_t a = 0; a < n; ++a)
    if (table[unit][a] != a || table[a][unit] != a) throw Error(ErrorKind::UnitFails, "unit law fails at " + std::to_string(a));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (table[a][table[b][c]] != table[table[a][b]][c])
          throw Error(ErrorKind::NotAssociative,
                      "triple " + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c));
  if (names.empty())
    for (std::size_t a = 0; a < n; ++a) names.push_back("m" + std::to_string(a));
  MonoidCategory out;
  out.morphism_of.assign(n, npos);
  RawCategory raw = raw_with_identities({"x"});
  out.morphism_of[unit] = 0;
  for (std::size_t a = 0; a < n; ++a) {
    if (a == unit) continue;
    out.morphism_of[a] = raw.morphisms.size();
    raw.morphisms.push_back({0, 0, names[a]});
  }
  std::vector<std::size_t> element_of(n);
  for (std::size_t a = 0; a < n; ++a) element_of[out.morphism_of[a]] = a;
  raw.comp.assign(n * n, npos);
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t f = 0; f < n; ++f) raw.comp[g * n + f] = out.morphism_of[table[element_of[g]][element_of[f]]];
  out.cat = FinCat::make_unchecked(std::move(raw));
  return out;
}

// Cyclic group of order n; element k is g^k, morphism k.
inline CatPtr cyclic_group(std::size_t n) {
  std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
  std::vector<std::string> names;
  for (std::size_t a = 0; a < n; ++a) {
    names.push_back(a == 0 ? "e" : "g" + std::to_string(a));
    for (std::size_t b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  }
  return from_monoid(t, 0, names).cat;
}

// The monoid {1, a} with a*a = a.
inline CatPtr idempotent_monoid() {
  return from_monoid({{0, 1}, {1, 1}}, 0, {"1", "a"}).cat;
}

// Two parallel morphisms alpha, beta: x -> y.
inline CatPtr kronecker() {
  RawCategory raw = raw_with_identities({"x", "y"});
  raw.morphisms.push_back({0, 1, "alpha"});
  raw.morphisms.push_back({0, 1, "beta"});
  const std::size_t m = 4;
  raw.comp.assign(m * m, npos);
  for (std::size_t g = 0; g < m; ++g)
    for (std::size_t f = 0; f < m; ++f) {
      if (raw.morphisms[g].dom != raw.morphisms[f].cod) continue;
      raw.comp[g * m + f] = g < 2 ? f : g;
    }
  return FinCat::make_unchecked(std::move(raw));
}

inline CatPtr opposite(const CatPtr& c) {
  RawCategory raw;
  raw.objects = c->raw().objects;
  const std::size_t m = c->num_morphisms();
  for (std::size_t f = 0; f < m; ++f) raw.morphisms.push_back({c->cod(f), c->dom(f), c->morphism_name(f)});
  raw.comp.assign(m * m, npos);
  for (std::size_t g = 0; g < m; ++g)
    for (std::size_t f = 0; f < m; ++f) raw.comp[g * m + f] = c->compose(f, g);
  return FinCat::make_unchecked(std::move(raw));
}

struct ProductCat {
  CatPtr cat;
  CatPtr left;
  CatPtr right;
  std::vector<std::size_t> mor_index;  // f * |Mor right| + g
  std::vector<std::pair<std::size_t, std::size_t>> mor_pair;

  std::size_t object(std::size_t a, std::size_t b) const { return a * right->num_objects() + b; }
  std::pair<std::size_t, std::size_t> object_pair(std::size_t x) const {
    return {x / right->num_objects(), x % right->num_objects()};
  }
  std::size_t morphism(std::size_t f, std::size_t g) const { return mor_index[f * right->num_morphisms() + g]; }
};

inline ProductCat product(const CatPtr& a, const CatPtr& b) {
  ProductCat p;
  p.left = a;
  p.right = b;
  const std::size_t na = a->num_objects(), nb = b->num_objects();
  const std::size_t ma = a->num_morphisms(), mb = b->num_morphisms();
  std::vector<std::string> objs;
  for (std::size_t x = 0; x < na; ++x)
    for (std::size_t y = 0; y < nb; ++y) objs.push_back("(" + a->object_name(x) + "," + b->object_name(y) + ")");
  RawCategory raw = raw_with_identities(objs);
  p.mor_index.assign(ma * mb, npos);
  p.mor_pair.resize(na * nb);
  for (std::size_t x = 0; x < na; ++x)
    for (std::size_t y = 0; y < nb; ++y) {
      p.mor_index[x * mb + y] = x * nb + y;
      p.mor_pair[x * nb + y] = {x, y};
    }
  for (std::size_t f = 0; f < ma; ++f)
    for (std::size_t g = 0; g < mb; ++g) {
      if (a->is_identity(f) && b->is_identity(g)) continue;
      p.mor_index[f * mb + g] = raw.morphisms.size();
      p.mor_pair.push_back({f, g});
      raw.morphisms.push_back({a->dom(f) * nb + b->dom(g), a->cod(f) * nb + b->cod(g),
                               "(" + a->morphism_name(f) + "," + b->morphism_name(g) + ")"});
    }
  const std::size_t m = raw.morphisms.size();
  raw.comp.assign(m * m, npos);
  for (std::size_t u = 0; u < m; ++u)
    for (std::size_t v = 0; v < m; ++v) {
      auto [f1, g1] = p.mor_pair[u];
      auto [f2, g2] = p.mor_pair[v];
      std::size_t f = a->compose(f1, f2), g = b->compose(g1, g2);
      if (f != npos && g != npos) raw.comp[u * m + v] = p.mor_index[f * mb + g];
    }
  p.cat = FinCat::make_unchecked(std::move(raw));
  return p;
}

struct CoproductCat {
  CatPtr cat;
  std::vector<std::size_t> left_obj, right_obj, left_mor, right_mor;
};

inline CoproductCat disjoint_union(const CatPtr& a, const CatPtr& b) {
  CoproductCat out;
  std::vector<std::string> objs = a->raw().objects;
  objs.insert(objs.end(), b->raw().objects.begin(), b->raw().objects.end());
  const std::size_t na = a->num_objects();
  RawCategory raw = raw_with_identities(objs);
  for (std::size_t x = 0; x < na; ++x) out.left_obj.push_back(x);
  for (std::size_t y = 0; y < b->num_objects(); ++y) out.right_obj.push_back(na + y);
  out.left_mor.assign(a->num_morphisms(), npos);
  out.right_mor.assign(b->num_morphisms(), npos);
  for (std::size_t x = 0; x < na; ++x) out.left_mor[x] = x;
  for (std::size_t y = 0; y < b->num_objects(); ++y) out.right_mor[y] = na + y;
  for (std::size_t f = na; f < a->num_morphisms(); ++f) {
    out.left_mor[f] = raw.morphisms.size();
    raw.morphisms.push_back({a->dom(f), a->cod(f), a->morphism_name(f)});
  }
  for (std::size_t g = b->num_objects(); g < b->num_morphisms(); ++g) {
    out.right_mor[g] = raw.morphisms.size();
    raw.morphisms.push_back({na + b->dom(g), na + b->cod(g), b->morphism_name(g)});
  }
  const std::size_t m = raw.morphisms.size();
  raw.comp.assign(m * m, npos);
  for (std::size_t g = 0; g < a->num_morphisms(); ++g)
    for (std::size_t f = 0; f < a->num_morphisms(); ++f) {
      std::size_t c = a->compose(g, f);
      if (c != npos) raw.comp[out.left_mor[g] * m + out.left_mor[f]] = out.left_mor[c];
    }
  for (std::size_t g = 0; g < b->num_morphisms(); ++g)
    for (std::size_t f = 0; f < b->num_morphisms(); ++f) {
      std::size_t c = b->compose(g, f);
      if (c != npos) raw.comp[out.right_mor[g] * m + out.right_mor[f]] = out.right_mor[c];
    }
  out.cat = FinCat::make_unchecked(std::move(raw));
  return out;
}

}  // namespace fincat
