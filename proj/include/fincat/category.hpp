#pragma once

// Finite categories as dense composition tables.
//
// Morphisms 0..n-1 are always the identities of objects 0..n-1; the rest
// follow in declaration order. comp(g, f) is g∘f, f applied first.

#include <algorithm>
#include <cstddef>
#include <memory>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "fincat/error.hpp"

namespace fincat {

struct MorphismInfo {
  std::size_t dom = 0;
  std::size_t cod = 0;
  std::string name;
};

struct RawCategory {
  std::vector<std::string> objects;
  std::vector<MorphismInfo> morphisms;
  std::vector<std::size_t> comp;  // (g, f) at g * |Mor| + f, npos if undefined
};

// Every violated law; empty means the data is a category.
inline std::vector<Issue> check_category(const RawCategory& raw) {
  std::vector<Issue> out;
  const std::size_t n = raw.objects.size();
  const std::size_t m = raw.morphisms.size();
  if (m < n) {
    out.push_back({Issue::Kind::DanglingIndex, {}, "fewer morphisms than objects"});
    return out;
  }
  if (raw.comp.size() != m * m) {
    out.push_back({Issue::Kind::DanglingIndex, {}, "composition table has wrong size"});
    return out;
  }
  for (std::size_t f = 0; f < m; ++f) {
    const auto& mi = raw.morphisms[f];
    if (mi.dom >= n || mi.cod >= n) out.push_back({Issue::Kind::DanglingIndex, {f}, "morphism endpoint out of range"});
  }
  for (std::size_t x = 0; x < n; ++x)
    if (raw.morphisms[x].dom != x || raw.morphisms[x].cod != x)
      out.push_back({Issue::Kind::IdentityLawFails, {x}, "identity slot has wrong endpoints"});
  for (auto c : raw.comp)
    if (c != npos && c >= m) {
      out.push_back({Issue::Kind::DanglingIndex, {c}, "composite out of range"});
      return out;
    }
  if (!out.empty()) return out;

  auto comp = [&](std::size_t g, std::size_t f) { return raw.comp[g * m + f]; };
  for (std::size_t g = 0; g < m; ++g)
    for (std::size_t f = 0; f < m; ++f) {
      std::size_t c = comp(g, f);
      bool composable = raw.morphisms[g].dom == raw.morphisms[f].cod;
      if (composable && c == npos) {
        out.push_back({Issue::Kind::MissingComposite, {g, f}, "composable pair without composite"});
      } else if (!composable && c != npos) {
        out.push_back({Issue::Kind::UnexpectedComposite, {g, f}, "composite for non-composable pair"});
      } else if (composable && (raw.morphisms[c].dom != raw.morphisms[f].dom || raw.morphisms[c].cod != raw.morphisms[g].cod)) {
        out.push_back({Issue::Kind::DanglingIndex, {g, f}, "composite has wrong endpoints"});
      }
    }
  if (!out.empty()) return out;
  for (std::size_t f = 0; f < m; ++f) {
    if (comp(raw.morphisms[f].cod, f) != f || comp(f, raw.morphisms[f].dom) != f)
      out.push_back({Issue::Kind::IdentityLawFails, {f}, "identity law fails for '" + raw.morphisms[f].name + "'"});
  }
  for (std::size_t h = 0; h < m; ++h)
    for (std::size_t g = 0; g < m; ++g) {
      if (raw.morphisms[h].dom != raw.morphisms[g].cod) continue;
      std::size_t hg = comp(h, g);
      for (std::size_t f = 0; f < m; ++f) {
        if (raw.morphisms[g].dom != raw.morphisms[f].cod) continue;
        if (comp(h, comp(g, f)) != comp(hg, f))
          out.push_back({Issue::Kind::NonAssociative, {h, g, f}, "associativity fails"});
      }
    }
  return out;
}

class FinCat;
using CatPtr = std::shared_ptr<const FinCat>;

class FinCat {
 public:
  struct Unchecked {};

  // Throws ValidationError listing every violated law.
  explicit FinCat(RawCategory raw) : raw_(std::move(raw)) {
    auto issues = check_category(raw_);
    if (!issues.empty()) throw ValidationError(std::move(issues));
    index();
  }
  // For constructions whose output is valid by construction.
  FinCat(RawCategory raw, Unchecked) : raw_(std::move(raw)) { index(); }

  static CatPtr make(RawCategory raw) { return std::make_shared<const FinCat>(std::move(raw)); }
  static CatPtr make_unchecked(RawCategory raw) { return std::make_shared<const FinCat>(std::move(raw), Unchecked{}); }

  std::size_t num_objects() const { return raw_.objects.size(); }
  std::size_t num_morphisms() const { return raw_.morphisms.size(); }
  bool empty() const { return raw_.objects.empty(); }

  std::size_t dom(std::size_t f) const { return raw_.morphisms[f].dom; }
  std::size_t cod(std::size_t f) const { return raw_.morphisms[f].cod; }
  std::size_t id(std::size_t x) const { return x; }
  bool is_identity(std::size_t f) const { return f < num_objects(); }
  std::size_t compose(std::size_t g, std::size_t f) const { return raw_.comp[g * num_morphisms() + f]; }

  const std::vector<std::size_t>& hom(std::size_t x, std::size_t y) const { return hom_[x * num_objects() + y]; }
  // Position of f inside hom(dom f, cod f).
  std::size_t hom_index(std::size_t f) const { return hom_pos_[f]; }
  // Two-sided inverse, or npos.
  std::size_t inverse(std::size_t f) const { return inverse_[f]; }
  bool is_iso(std::size_t f) const { return inverse_[f] != npos; }

  const std::string& object_name(std::size_t x) const { return raw_.objects[x]; }
  const std::string& morphism_name(std::size_t f) const { return raw_.morphisms[f].name; }
  std::size_t find_object(const std::string& name) const {
    for (std::size_t x = 0; x < num_objects(); ++x)
      if (raw_.objects[x] == name) return x;
    return npos;
  }
  std::size_t find_morphism(const std::string& name) const {
    for (std::size_t f = 0; f < num_morphisms(); ++f)
      if (raw_.morphisms[f].name == name) return f;
    return npos;
  }

  const RawCategory& raw() const { return raw_; }

  // Structural equality: names are ignored.
  bool same_structure(const FinCat& o) const {
    if (num_objects() != o.num_objects() || num_morphisms() != o.num_morphisms()) return false;
    for (std::size_t f = 0; f < num_morphisms(); ++f)
      if (dom(f) != o.dom(f) || cod(f) != o.cod(f)) return false;
    return raw_.comp == o.raw_.comp;
  }

 private:
  void index() {
    const std::size_t n = num_objects(), m = num_morphisms();
    hom_.assign(n * n, {});
    hom_pos_.assign(m, 0);
    for (std::size_t f = 0; f < m; ++f) {
      auto& h = hom_[dom(f) * n + cod(f)];
      hom_pos_[f] = h.size();
      h.push_back(f);
    }
    inverse_.assign(m, npos);
    for (std::size_t f = 0; f < m; ++f)
      for (std::size_t g : hom(cod(f), dom(f)))
        if (compose(g, f) == dom(f) && compose(f, g) == cod(f)) { inverse_[f] = g; break; }
  }

  RawCategory raw_;
  std::vector<std::vector<std::size_t>> hom_;
  std::vector<std::size_t> hom_pos_;
  std::vector<std::size_t> inverse_;
};

inline bool same_structure(const CatPtr& a, const CatPtr& b) {
  return a == b || a->same_structure(*b);
}

// Undirected connectivity of the object graph; the empty category is not
// connected.
inline bool is_connected(const FinCat& c) {
  const std::size_t n = c.num_objects();
  if (n == 0) return false;
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t f = 0; f < c.num_morphisms(); ++f) parent[find(c.dom(f))] = find(c.cod(f));
  std::size_t r = find(0);
  for (std::size_t x = 1; x < n; ++x)
    if (find(x) != r) return false;
  return true;
}

// Helper for builders: fills identities and returns a raw category with an
// empty composition table.
inline RawCategory raw_with_identities(std::vector<std::string> objects) {
  RawCategory raw;
  raw.objects = std::move(objects);
  for (std::size_t x = 0; x < raw.objects.size(); ++x) raw.morphisms.push_back({x, x, "id_" + raw.objects[x]});
  return raw;
}

}  // namespace fincat
