#pragma once

// C-sets: functors from a finite category to finite sets.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fincat/category.hpp"
#include "fincat/functor.hpp"
#include "fincat/union_find.hpp"

namespace fincat {

struct ElemRef {
  std::size_t object = 0;
  std::size_t index = 0;
  friend bool operator==(const ElemRef&, const ElemRef&) = default;
  friend auto operator<=>(const ElemRef&, const ElemRef&) = default;
};

// act[f][u] is the image of u in Omega(dom f) under f.
using ActionTables = std::vector<std::vector<std::size_t>>;

inline std::vector<Issue> check_cset(const FinCat& c, const std::vector<std::size_t>& sizes, const ActionTables& act) {
  std::vector<Issue> out;
  if (sizes.size() != c.num_objects() || act.size() != c.num_morphisms()) {
    out.push_back({Issue::Kind::DanglingIndex, {}, "table lengths do not match the category"});
    return out;
  }
  for (std::size_t f = 0; f < c.num_morphisms(); ++f) {
    if (act[f].size() != sizes[c.dom(f)]) {
      out.push_back({Issue::Kind::DanglingIndex, {f}, "action table of '" + c.morphism_name(f) + "' has wrong length"});
      continue;
    }
    for (auto v : act[f])
      if (v >= sizes[c.cod(f)]) {
        out.push_back({Issue::Kind::DanglingIndex, {f}, "action of '" + c.morphism_name(f) + "' leaves its codomain"});
        break;
      }
  }
  if (!out.empty()) return out;
  for (std::size_t x = 0; x < c.num_objects(); ++x)
    for (std::size_t u = 0; u < sizes[x]; ++u)
      if (act[x][u] != u) {
        out.push_back({Issue::Kind::IdentityNotIdentity, {x}, "identity of '" + c.object_name(x) + "' moves an element"});
        break;
      }
  for (std::size_t g = 0; g < c.num_morphisms(); ++g)
    for (std::size_t f = 0; f < c.num_morphisms(); ++f) {
      std::size_t k = c.compose(g, f);
      if (k == npos) continue;
      for (std::size_t u = 0; u < sizes[c.dom(f)]; ++u)
        if (act[g][act[f][u]] != act[k][u]) {
          out.push_back({Issue::Kind::CompositionFails, {g, f, u},
                         "'" + c.morphism_name(g) + "' after '" + c.morphism_name(f) + "' differs at element " + std::to_string(u)});
          break;
        }
    }
  return out;
}

class CSet {
 public:
  struct Unchecked {};

  CSet() = default;
  CSet(CatPtr cat, std::vector<std::size_t> sizes, ActionTables act)
      : cat_(std::move(cat)), sizes_(std::move(sizes)), act_(std::move(act)) {
    auto issues = check_cset(*cat_, sizes_, act_);
    if (!issues.empty()) throw ValidationError(std::move(issues));
    index();
  }
  CSet(CatPtr cat, std::vector<std::size_t> sizes, ActionTables act, Unchecked)
      : cat_(std::move(cat)), sizes_(std::move(sizes)), act_(std::move(act)) {
#ifndef NDEBUG
    auto issues = check_cset(*cat_, sizes_, act_);
    if (!issues.empty()) throw ValidationError(std::move(issues));
#endif
    index();
  }

  const CatPtr& cat() const { return cat_; }
  std::size_t size(std::size_t x) const { return sizes_[x]; }
  const std::vector<std::size_t>& sizes() const { return sizes_; }
  std::size_t total_size() const { return offset_.empty() ? 0 : offset_.back(); }
  std::size_t act(std::size_t f, std::size_t u) const { return act_[f][u]; }
  const std::vector<std::size_t>& table(std::size_t f) const { return act_[f]; }
  const ActionTables& tables() const { return act_; }

  // Flat numbering of all elements, object by object.
  std::size_t flat(ElemRef e) const { return offset_[e.object] + e.index; }
  ElemRef unflat(std::size_t k) const {
    std::size_t x = static_cast<std::size_t>(std::upper_bound(offset_.begin(), offset_.end(), k) - offset_.begin()) - 1;
    return {x, k - offset_[x]};
  }

  bool same_data(const CSet& o) const {
    return same_structure(cat_, o.cat_) && sizes_ == o.sizes_ && act_ == o.act_;
  }

 private:
  void index() {
    offset_.assign(sizes_.size() + 1, 0);
    for (std::size_t x = 0; x < sizes_.size(); ++x) offset_[x + 1] = offset_[x] + sizes_[x];
  }

  CatPtr cat_;
  std::vector<std::size_t> sizes_;
  ActionTables act_;
  std::vector<std::size_t> offset_;
};

// Builds a C-set from sizes and an action function act(f, u).
inline CSet make_cset(const CatPtr& c, std::vector<std::size_t> sizes,
                      const std::function<std::size_t(std::size_t, std::size_t)>& act, bool trusted = false) {
  ActionTables t(c->num_morphisms());
  for (std::size_t f = 0; f < c->num_morphisms(); ++f) {
    t[f].resize(sizes[c->dom(f)]);
    for (std::size_t u = 0; u < t[f].size(); ++u) t[f][u] = act(f, u);
  }
  if (trusted) return CSet(c, std::move(sizes), std::move(t), CSet::Unchecked{});
  return CSet(c, std::move(sizes), std::move(t));
}

inline CSet empty_cset(const CatPtr& c) {
  return make_cset(c, std::vector<std::size_t>(c->num_objects(), 0), [](std::size_t, std::size_t) { return npos; }, true);
}

// The constant one-point C-set *.
inline CSet point_cset(const CatPtr& c) {
  return make_cset(c, std::vector<std::size_t>(c->num_objects(), 1), [](std::size_t, std::size_t) { return std::size_t{0}; }, true);
}

// Hom(x, -); the element at y with index k is hom(x, y)[k].
inline CSet representable_at(const CatPtr& c, std::size_t x) {
  std::vector<std::size_t> sizes;
  for (std::size_t y = 0; y < c->num_objects(); ++y) sizes.push_back(c->hom(x, y).size());
  return make_cset(c, sizes, [&](std::size_t f, std::size_t u) {
    std::size_t phi = c->hom(x, c->dom(f))[u];
    return c->hom_index(c->compose(f, phi));
  }, true);
}

inline CSet disjoint_union(const CSet& a, const CSet& b) {
  if (!same_structure(a.cat(), b.cat())) throw Error(ErrorKind::CategoryMismatch, "disjoint union over different categories");
  const FinCat& c = *a.cat();
  std::vector<std::size_t> sizes;
  for (std::size_t x = 0; x < c.num_objects(); ++x) sizes.push_back(a.size(x) + b.size(x));
  return make_cset(a.cat(), sizes, [&](std::size_t f, std::size_t u) {
    std::size_t na = a.size(c.dom(f));
    return u < na ? a.act(f, u) : a.size(c.cod(f)) + b.act(f, u - na);
  }, true);
}

// Pointwise product; (u, v) has index u * |b(x)| + v.
inline CSet product_cset(const CSet& a, const CSet& b) {
  if (!same_structure(a.cat(), b.cat())) throw Error(ErrorKind::CategoryMismatch, "product over different categories");
  const FinCat& c = *a.cat();
  std::vector<std::size_t> sizes;
  for (std::size_t x = 0; x < c.num_objects(); ++x) sizes.push_back(a.size(x) * b.size(x));
  return make_cset(a.cat(), sizes, [&](std::size_t f, std::size_t w) {
    std::size_t nb = b.size(c.dom(f));
    std::size_t u = w / nb, v = w % nb;
    return a.act(f, u) * b.size(c.cod(f)) + b.act(f, v);
  }, true);
}

// Restriction of a C-set along F: A -> C.
inline CSet restrict_along(const CSet& s, const CatFunctor& F) {
  if (!same_structure(F.target, s.cat())) throw Error(ErrorKind::CategoryMismatch, "restriction along functor");
  std::vector<std::size_t> sizes;
  for (std::size_t a = 0; a < F.source->num_objects(); ++a) sizes.push_back(s.size(F.obj(a)));
  return make_cset(F.source, sizes, [&](std::size_t f, std::size_t u) { return s.act(F.mor(f), u); }, true);
}

// Moves a C-set along an isomorphism of categories F: C -> D.
inline CSet transport(const CSet& s, const CatFunctor& F) {
  if (!same_structure(F.source, s.cat()) || !is_isomorphism(F)) throw Error(ErrorKind::CategoryMismatch, "transport needs an isomorphism");
  const FinCat& d = *F.target;
  std::vector<std::size_t> inv_obj(d.num_objects()), inv_mor(d.num_morphisms());
  for (std::size_t x = 0; x < F.obj_map.size(); ++x) inv_obj[F.obj(x)] = x;
  for (std::size_t f = 0; f < F.mor_map.size(); ++f) inv_mor[F.mor(f)] = f;
  std::vector<std::size_t> sizes;
  for (std::size_t y = 0; y < d.num_objects(); ++y) sizes.push_back(s.size(inv_obj[y]));
  return make_cset(F.target, sizes, [&](std::size_t g, std::size_t u) { return s.act(inv_mor[g], u); }, true);
}

// Renames elements: perm[x][old] = new.
inline CSet relabel(const CSet& s, const std::vector<std::vector<std::size_t>>& perm) {
  const FinCat& c = *s.cat();
  std::vector<std::vector<std::size_t>> inv(c.num_objects());
  for (std::size_t x = 0; x < c.num_objects(); ++x) {
    inv[x].resize(s.size(x));
    for (std::size_t u = 0; u < s.size(x); ++u) inv[x][perm[x][u]] = u;
  }
  return make_cset(s.cat(), s.sizes(), [&](std::size_t f, std::size_t u) {
    return perm[c.cod(f)][s.act(f, inv[c.dom(f)][u])];
  });
}

struct SubCSet {
  CSet set;
  std::vector<std::vector<std::size_t>> embedding;  // per object: local index -> index in the whole
};

// Sub-C-set on the given elements, which must be closed under the action.
// Local numbering follows the whole's numbering.
inline SubCSet sub_cset_on(const CSet& s, const std::vector<bool>& member) {
  const FinCat& c = *s.cat();
  SubCSet out;
  out.embedding.resize(c.num_objects());
  std::vector<std::size_t> local(s.total_size(), npos);
  std::vector<std::size_t> sizes(c.num_objects(), 0);
  for (std::size_t x = 0; x < c.num_objects(); ++x)
    for (std::size_t u = 0; u < s.size(x); ++u) {
      std::size_t k = s.flat({x, u});
      if (!member[k]) continue;
      local[k] = sizes[x]++;
      out.embedding[x].push_back(u);
    }
  out.set = make_cset(s.cat(), sizes, [&](std::size_t f, std::size_t u) {
    std::size_t img = s.act(f, out.embedding[c.dom(f)][u]);
    return local[s.flat({c.cod(f), img})];
  }, true);
  return out;
}

inline SubCSet generated_subcset(const CSet& s, const std::vector<ElemRef>& gens) {
  const FinCat& c = *s.cat();
  std::vector<bool> member(s.total_size(), false);
  std::vector<ElemRef> stack;
  for (auto e : gens) {
    if (e.object >= c.num_objects() || e.index >= s.size(e.object)) throw Error(ErrorKind::SizeMismatch, "element reference out of range");
    if (!member[s.flat(e)]) { member[s.flat(e)] = true; stack.push_back(e); }
  }
  while (!stack.empty()) {
    ElemRef e = stack.back();
    stack.pop_back();
    for (std::size_t y = 0; y < c.num_objects(); ++y)
      for (std::size_t f : c.hom(e.object, y)) {
        ElemRef t{y, s.act(f, e.index)};
        if (!member[s.flat(t)]) { member[s.flat(t)] = true; stack.push_back(t); }
      }
  }
  return sub_cset_on(s, member);
}

struct OrbitDecomposition {
  std::vector<CSet> parts;
  // Per object of the whole: element -> (part, index in part).
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> embedding;
  // Per part and object: local index -> index in the whole.
  std::vector<std::vector<std::vector<std::size_t>>> part_elements;
};

// Connected components of the element graph; parts ordered by their first
// element in (object, index) order.
inline OrbitDecomposition decompose(const CSet& s) {
  const FinCat& c = *s.cat();
  const std::size_t total = s.total_size();
  UnionFind uf(total);
  for (std::size_t f = c.num_objects(); f < c.num_morphisms(); ++f)
    for (std::size_t u = 0; u < s.size(c.dom(f)); ++u) uf.unite(s.flat({c.dom(f), u}), s.flat({c.cod(f), s.act(f, u)}));
  OrbitDecomposition out;
  std::vector<std::size_t> part_of_root(total, npos);
  std::vector<std::vector<bool>> members;
  for (std::size_t k = 0; k < total; ++k) {
    std::size_t r = uf.find(k);
    if (part_of_root[r] == npos) {
      part_of_root[r] = members.size();
      members.emplace_back(total, false);
    }
    members[part_of_root[r]][k] = true;
  }
  out.embedding.resize(c.num_objects());
  for (std::size_t x = 0; x < c.num_objects(); ++x) out.embedding[x].resize(s.size(x));
  for (std::size_t p = 0; p < members.size(); ++p) {
    SubCSet sub = sub_cset_on(s, members[p]);
    for (std::size_t x = 0; x < c.num_objects(); ++x)
      for (std::size_t i = 0; i < sub.embedding[x].size(); ++i) out.embedding[x][sub.embedding[x][i]] = {p, i};
    out.parts.push_back(std::move(sub.set));
    out.part_elements.push_back(std::move(sub.embedding));
  }
  return out;
}

inline bool is_indecomposable(const CSet& s) { return decompose(s).parts.size() == 1; }

// Per object: the permutation old index -> image index.
using CSetIso = std::vector<std::vector<std::size_t>>;

namespace detail {

// Colour refinement over both sets at once so colours are comparable.
inline std::pair<std::vector<std::size_t>, std::vector<std::size_t>> refine_colours(const CSet& a, const CSet& b) {
  const FinCat& c = *a.cat();
  auto preimages = [&](const CSet& s) {
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> in(s.total_size());
    for (std::size_t f = c.num_objects(); f < c.num_morphisms(); ++f)
      for (std::size_t u = 0; u < s.size(c.dom(f)); ++u)
        in[s.flat({c.cod(f), s.act(f, u)})].push_back({f, s.flat({c.dom(f), u})});
    return in;
  };
  auto in_a = preimages(a), in_b = preimages(b);
  std::vector<std::size_t> col_a(a.total_size()), col_b(b.total_size());
  for (std::size_t k = 0; k < a.total_size(); ++k) col_a[k] = a.unflat(k).object;
  for (std::size_t k = 0; k < b.total_size(); ++k) col_b[k] = b.unflat(k).object;
  std::size_t classes = c.num_objects();
  for (;;) {
    std::map<std::vector<std::size_t>, std::size_t> ids;
    auto signature = [&](const CSet& s, const std::vector<std::size_t>& col,
                         const std::vector<std::vector<std::pair<std::size_t, std::size_t>>>& in, std::size_t k) {
      ElemRef e = s.unflat(k);
      std::vector<std::size_t> sig{col[k]};
      for (std::size_t y = 0; y < c.num_objects(); ++y)
        for (std::size_t f : c.hom(e.object, y)) {
          if (c.is_identity(f)) continue;
          sig.push_back(f);
          sig.push_back(col[s.flat({y, s.act(f, e.index)})]);
        }
      sig.push_back(npos);
      std::vector<std::pair<std::size_t, std::size_t>> back;
      for (auto [f, w] : in[k]) back.push_back({f, col[w]});
      std::sort(back.begin(), back.end());
      for (auto [f, cw] : back) {
        sig.push_back(f);
        sig.push_back(cw);
      }
      return sig;
    };
    std::vector<std::size_t> na(a.total_size()), nb(b.total_size());
    for (std::size_t k = 0; k < a.total_size(); ++k) na[k] = ids.emplace(signature(a, col_a, in_a, k), ids.size()).first->second;
    for (std::size_t k = 0; k < b.total_size(); ++k) nb[k] = ids.emplace(signature(b, col_b, in_b, k), ids.size()).first->second;
    col_a.swap(na);
    col_b.swap(nb);
    if (ids.size() == classes) break;
    classes = ids.size();
  }
  return {col_a, col_b};
}

// Isomorphism search between two sets, typically indecomposable.
inline std::optional<CSetIso> iso_search(const CSet& a, const CSet& b, StepCounter& steps) {
  const FinCat& c = *a.cat();
  if (a.sizes() != b.sizes()) return std::nullopt;
  const std::size_t total = a.total_size();
  auto [ca, cb] = refine_colours(a, b);
  {
    std::vector<std::size_t> ha = ca, hb = cb;
    std::sort(ha.begin(), ha.end());
    std::sort(hb.begin(), hb.end());
    if (ha != hb) return std::nullopt;
  }
  std::vector<std::size_t> map(total, npos), used(total, 0);
  std::vector<std::size_t> trail;

  // Maps u -> v and everything forced by forward actions; false on conflict.
  auto assign = [&](std::size_t u, std::size_t v) {
    std::vector<std::pair<std::size_t, std::size_t>> stack{{u, v}};
    while (!stack.empty()) {
      auto [p, q] = stack.back();
      stack.pop_back();
      if (map[p] != npos) {
        if (map[p] != q) return false;
        continue;
      }
      if (used[q] || ca[p] != cb[q]) return false;
      map[p] = q;
      used[q] = 1;
      trail.push_back(p);
      ElemRef ep = a.unflat(p), eq = b.unflat(q);
      for (std::size_t y = 0; y < c.num_objects(); ++y)
        for (std::size_t f : c.hom(ep.object, y)) {
          if (c.is_identity(f)) continue;
          stack.push_back({a.flat({y, a.act(f, ep.index)}), b.flat({y, b.act(f, eq.index)})});
        }
    }
    return true;
  };
  auto undo = [&](std::size_t mark) {
    while (trail.size() > mark) {
      std::size_t p = trail.back();
      trail.pop_back();
      used[map[p]] = 0;
      map[p] = npos;
    }
  };

  std::function<bool()> rec = [&]() -> bool {
    steps.tick();
    // Unmapped element with the fewest candidates.
    std::size_t best = npos, best_count = npos;
    for (std::size_t p = 0; p < total; ++p) {
      if (map[p] != npos) continue;
      std::size_t cnt = 0;
      for (std::size_t q = 0; q < total; ++q)
        if (!used[q] && cb[q] == ca[p]) ++cnt;
      if (cnt < best_count) { best = p; best_count = cnt; }
      if (cnt <= 1) break;
    }
    if (best == npos) return true;
    for (std::size_t q = 0; q < total; ++q) {
      if (used[q] || cb[q] != ca[best]) continue;
      std::size_t mark = trail.size();
      if (assign(best, q) && rec()) return true;
      undo(mark);
    }
    return false;
  };
  if (!rec()) return std::nullopt;
  CSetIso iso(c.num_objects());
  for (std::size_t x = 0; x < c.num_objects(); ++x)
    for (std::size_t u = 0; u < a.size(x); ++u) iso[x].push_back(b.unflat(map[a.flat({x, u})]).index);
  return iso;
}

}  // namespace detail

// Object-wise bijections commuting with the action, or nullopt. Parts are
// matched first, then each pair of parts is searched.
inline std::optional<CSetIso> iso_cset(const CSet& a, const CSet& b, Budget budget = {}) {
  if (!same_structure(a.cat(), b.cat())) throw Error(ErrorKind::CategoryMismatch, "iso test over different categories");
  if (a.sizes() != b.sizes()) return std::nullopt;
  StepCounter steps(budget, "C-set isomorphism search");
  auto da = decompose(a), db = decompose(b);
  if (da.parts.size() != db.parts.size()) return std::nullopt;
  const FinCat& c = *a.cat();
  CSetIso iso(c.num_objects());
  for (std::size_t x = 0; x < c.num_objects(); ++x) iso[x].assign(a.size(x), npos);
  std::vector<bool> taken(db.parts.size(), false);
  for (std::size_t i = 0; i < da.parts.size(); ++i) {
    bool matched = false;
    for (std::size_t j = 0; j < db.parts.size() && !matched; ++j) {
      if (taken[j] || da.parts[i].sizes() != db.parts[j].sizes()) continue;
      auto w = detail::iso_search(da.parts[i], db.parts[j], steps);
      if (!w) continue;
      taken[j] = true;
      matched = true;
      for (std::size_t x = 0; x < c.num_objects(); ++x)
        for (std::size_t u = 0; u < (*w)[x].size(); ++u)
          iso[x][da.part_elements[i][x][u]] = db.part_elements[j][x][(*w)[x][u]];
    }
    if (!matched) return std::nullopt;
  }
  return iso;
}

inline bool isomorphic(const CSet& a, const CSet& b, Budget budget = {}) { return iso_cset(a, b, budget).has_value(); }

// Checks that iso is a C-set isomorphism a -> b.
inline bool is_cset_iso(const CSet& a, const CSet& b, const CSetIso& iso) {
  const FinCat& c = *a.cat();
  if (a.sizes() != b.sizes() || iso.size() != c.num_objects()) return false;
  for (std::size_t x = 0; x < c.num_objects(); ++x) {
    if (iso[x].size() != a.size(x)) return false;
    std::vector<bool> hit(b.size(x), false);
    for (auto v : iso[x]) {
      if (v >= b.size(x) || hit[v]) return false;
      hit[v] = true;
    }
  }
  for (std::size_t f = 0; f < c.num_morphisms(); ++f)
    for (std::size_t u = 0; u < a.size(c.dom(f)); ++u)
      if (iso[c.cod(f)][a.act(f, u)] != b.act(f, iso[c.dom(f)][u])) return false;
  return true;
}

// For every y, f -> f·e is a bijection Hom(x, y) -> Omega(y).
inline bool is_representably_generated(const CSet& s, ElemRef e) {
  const FinCat& c = *s.cat();
  for (std::size_t y = 0; y < c.num_objects(); ++y) {
    const auto& h = c.hom(e.object, y);
    if (h.size() != s.size(y)) return false;
    std::vector<bool> hit(s.size(y), false);
    for (auto f : h) {
      std::size_t v = s.act(f, e.index);
      if (hit[v]) return false;
      hit[v] = true;
    }
  }
  return true;
}

// One representable generator per indecomposable part, or nullopt.
inline std::optional<std::vector<ElemRef>> representable_witnesses(const CSet& s) {
  auto d = decompose(s);
  std::vector<ElemRef> out;
  const std::size_t n = s.cat()->num_objects();
  for (std::size_t p = 0; p < d.parts.size(); ++p) {
    const CSet& part = d.parts[p];
    std::optional<ElemRef> hit;
    for (std::size_t x = 0; x < n && !hit; ++x)
      for (std::size_t u = 0; u < part.size(x); ++u)
        if (is_representably_generated(part, {x, u})) {
          hit = ElemRef{x, d.part_elements[p][x][u]};
          break;
        }
    if (!hit) return std::nullopt;
    out.push_back(*hit);
  }
  return out;
}

inline bool is_representable(const CSet& s) { return representable_witnesses(s).has_value(); }

}  // namespace fincat
