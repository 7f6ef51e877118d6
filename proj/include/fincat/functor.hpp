#pragma once

// Functors, natural transformations and the searches built on them:
// enumeration, equivalence, Out(C), adjoints, idempotent completion.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "fincat/category.hpp"
#include "fincat/constructions.hpp"

namespace fincat {

struct CatFunctor {
  CatPtr source;
  CatPtr target;
  std::vector<std::size_t> obj_map;
  std::vector<std::size_t> mor_map;

  std::size_t obj(std::size_t x) const { return obj_map[x]; }
  std::size_t mor(std::size_t f) const { return mor_map[f]; }
};

inline bool same_maps(const CatFunctor& a, const CatFunctor& b) {
  return a.obj_map == b.obj_map && a.mor_map == b.mor_map;
}

inline std::vector<Issue> check_functor(const CatFunctor& F) {
  std::vector<Issue> out;
  const FinCat& C = *F.source;
  const FinCat& D = *F.target;
  if (F.obj_map.size() != C.num_objects() || F.mor_map.size() != C.num_morphisms()) {
    out.push_back({Issue::Kind::DanglingIndex, {}, "functor tables have wrong length"});
    return out;
  }
  for (auto y : F.obj_map)
    if (y >= D.num_objects()) { out.push_back({Issue::Kind::DanglingIndex, {y}, "object image out of range"}); return out; }
  for (auto g : F.mor_map)
    if (g >= D.num_morphisms()) { out.push_back({Issue::Kind::DanglingIndex, {g}, "morphism image out of range"}); return out; }
  for (std::size_t f = 0; f < C.num_morphisms(); ++f)
    if (D.dom(F.mor(f)) != F.obj(C.dom(f)) || D.cod(F.mor(f)) != F.obj(C.cod(f)))
      out.push_back({Issue::Kind::NotFunctorial, {f}, "image of '" + C.morphism_name(f) + "' has wrong endpoints"});
  for (std::size_t x = 0; x < C.num_objects(); ++x)
    if (F.mor(x) != F.obj(x)) out.push_back({Issue::Kind::IdentityNotIdentity, {x}, "identity not preserved"});
  if (!out.empty()) return out;
  for (std::size_t g = 0; g < C.num_morphisms(); ++g)
    for (std::size_t f = 0; f < C.num_morphisms(); ++f) {
      std::size_t c = C.compose(g, f);
      if (c != npos && D.compose(F.mor(g), F.mor(f)) != F.mor(c))
        out.push_back({Issue::Kind::CompositionFails, {g, f}, "composition not preserved"});
    }
  return out;
}

inline CatFunctor make_functor(CatPtr source, CatPtr target, std::vector<std::size_t> obj_map,
                               std::vector<std::size_t> mor_map) {
  CatFunctor F{std::move(source), std::move(target), std::move(obj_map), std::move(mor_map)};
  auto issues = check_functor(F);
  if (!issues.empty()) throw ValidationError(std::move(issues));
  return F;
}

inline CatFunctor identity_functor(const CatPtr& c) {
  CatFunctor F{c, c, {}, {}};
  for (std::size_t x = 0; x < c->num_objects(); ++x) F.obj_map.push_back(x);
  for (std::size_t f = 0; f < c->num_morphisms(); ++f) F.mor_map.push_back(f);
  return F;
}

// G∘F.
inline CatFunctor compose_functors(const CatFunctor& G, const CatFunctor& F) {
  if (!same_structure(F.target, G.source)) throw Error(ErrorKind::CategoryMismatch, "functor composition");
  CatFunctor H{F.source, G.target, {}, {}};
  for (auto y : F.obj_map) H.obj_map.push_back(G.obj(y));
  for (auto g : F.mor_map) H.mor_map.push_back(G.mor(g));
  return H;
}

inline CatFunctor constant_functor(const CatPtr& c, const CatPtr& d, std::size_t y) {
  CatFunctor F{c, d, std::vector<std::size_t>(c->num_objects(), y), std::vector<std::size_t>(c->num_morphisms(), y)};
  return F;
}

// Functor between poset categories determined by a monotone object map.
inline CatFunctor monotone_functor(const CatPtr& p, const CatPtr& q, std::vector<std::size_t> obj_map) {
  CatFunctor F{p, q, std::move(obj_map), {}};
  for (std::size_t f = 0; f < p->num_morphisms(); ++f) {
    const auto& h = q->hom(F.obj(p->dom(f)), F.obj(p->cod(f)));
    if (h.size() != 1) throw Error(ErrorKind::NotAPoset, "object map is not monotone into a poset");
    F.mor_map.push_back(h.front());
  }
  return F;
}

struct Subcategory {
  CatPtr cat;
  CatFunctor inclusion;
};

inline Subcategory full_subcategory(const CatPtr& c, const std::vector<std::size_t>& objects) {
  std::vector<std::size_t> local(c->num_objects(), npos);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < objects.size(); ++i) {
    local[objects[i]] = i;
    names.push_back(c->object_name(objects[i]));
  }
  RawCategory raw = raw_with_identities(names);
  for (std::size_t i = 0; i < objects.size(); ++i) raw.morphisms[i].name = c->morphism_name(objects[i]);
  std::vector<std::size_t> back(objects.begin(), objects.end());
  std::vector<std::size_t> fwd(c->num_morphisms(), npos);
  for (std::size_t i = 0; i < objects.size(); ++i) fwd[objects[i]] = i;
  for (std::size_t f = c->num_objects(); f < c->num_morphisms(); ++f)
    if (local[c->dom(f)] != npos && local[c->cod(f)] != npos) {
      fwd[f] = raw.morphisms.size();
      back.push_back(f);
      raw.morphisms.push_back({local[c->dom(f)], local[c->cod(f)], c->morphism_name(f)});
    }
  const std::size_t m = raw.morphisms.size();
  raw.comp.assign(m * m, npos);
  for (std::size_t g = 0; g < m; ++g)
    for (std::size_t f = 0; f < m; ++f) {
      std::size_t k = c->compose(back[g], back[f]);
      if (k != npos) raw.comp[g * m + f] = fwd[k];
    }
  Subcategory s;
  s.cat = FinCat::make_unchecked(std::move(raw));
  s.inclusion = CatFunctor{s.cat, c, objects, back};
  return s;
}

struct FunctorSearchOptions {
  Budget budget{};
  bool fully_faithful = false;  // prune to fully faithful functors
};

// Calls fn on every functor source -> target in deterministic order until fn
// returns false. Backtracks over objects, then non-identity morphisms.
inline void for_each_functor(const CatPtr& src, const CatPtr& tgt, const FunctorSearchOptions& opt,
                             const std::function<bool(const CatFunctor&)>& fn) {
  const FinCat& C = *src;
  const FinCat& D = *tgt;
  const std::size_t n = C.num_objects(), m = C.num_morphisms();
  StepCounter steps(opt.budget, "functor enumeration");
  if (n > 0 && D.num_objects() == 0) return;

  // Composition constraints, keyed by the last non-identity morphism that
  // must be assigned before they can be checked.
  std::vector<std::vector<std::tuple<std::size_t, std::size_t, std::size_t>>> checks(m);
  for (std::size_t g = 0; g < m; ++g)
    for (std::size_t f = 0; f < m; ++f) {
      std::size_t c = C.compose(g, f);
      if (c == npos) continue;
      std::size_t key = std::max({g, f, c});
      if (key < n) continue;
      checks[key].emplace_back(g, f, c);
    }
  std::vector<std::vector<std::size_t>> obj_checks(n);
  for (std::size_t f = 0; f < m; ++f) obj_checks[std::max(C.dom(f), C.cod(f))].push_back(f);

  CatFunctor F{src, tgt, std::vector<std::size_t>(n, npos), std::vector<std::size_t>(m, npos)};
  bool stop = false;

  std::function<void(std::size_t)> assign_mor = [&](std::size_t f) {
    if (stop) return;
    steps.tick();
    if (f == m) {
      if (!fn(F)) stop = true;
      return;
    }
    for (std::size_t cand : D.hom(F.obj(C.dom(f)), F.obj(C.cod(f)))) {
      if (opt.fully_faithful) {
        bool clash = false;
        for (std::size_t h : C.hom(C.dom(f), C.cod(f))) {
          if (h >= f) break;
          if (F.mor(h) == cand) { clash = true; break; }
        }
        if (clash) continue;
      }
      F.mor_map[f] = cand;
      bool ok = true;
      for (auto [g, h, c] : checks[f])
        if (D.compose(F.mor(g), F.mor(h)) != F.mor(c)) { ok = false; break; }
      if (ok) assign_mor(f + 1);
      if (stop) return;
    }
    F.mor_map[f] = npos;
  };

  std::function<void(std::size_t)> assign_obj = [&](std::size_t x) {
    if (stop) return;
    steps.tick();
    if (x == n) {
      for (std::size_t y = 0; y < n; ++y) F.mor_map[y] = F.obj(y);
      assign_mor(n);
      return;
    }
    for (std::size_t y = 0; y < D.num_objects(); ++y) {
      F.obj_map[x] = y;
      bool ok = true;
      for (std::size_t f : obj_checks[x]) {
        const auto& h = D.hom(F.obj(C.dom(f)), F.obj(C.cod(f)));
        if (h.empty()) { ok = false; break; }
      }
      if (ok && opt.fully_faithful) {
        for (std::size_t z = 0; z <= x && ok; ++z) {
          if (C.hom(x, z).size() != D.hom(y, F.obj(z)).size() || C.hom(z, x).size() != D.hom(F.obj(z), y).size())
            ok = false;
        }
      }
      if (ok) assign_obj(x + 1);
      if (stop) return;
    }
    F.obj_map[x] = npos;
  };
  assign_obj(0);
}

inline std::vector<CatFunctor> enumerate_functors(const CatPtr& src, const CatPtr& tgt, Budget budget = {}) {
  std::vector<CatFunctor> out;
  FunctorSearchOptions opt;
  opt.budget = budget;
  for_each_functor(src, tgt, opt, [&](const CatFunctor& F) {
    out.push_back(F);
    return true;
  });
  return out;
}

struct NatTransf {
  CatFunctor from;
  CatFunctor to;
  std::vector<std::size_t> components;
};

inline bool is_natural(const NatTransf& t) {
  const FinCat& C = *t.from.source;
  const FinCat& D = *t.from.target;
  for (std::size_t a = 0; a < C.num_morphisms(); ++a) {
    std::size_t x = C.dom(a), y = C.cod(a);
    if (D.compose(t.to.mor(a), t.components[x]) != D.compose(t.components[y], t.from.mor(a))) return false;
  }
  return true;
}

// Natural transformations F => G, optionally restricted to invertible ones.
inline void for_each_nat_transf(const CatFunctor& F, const CatFunctor& G, bool only_isos, Budget budget,
                                const std::function<bool(const NatTransf&)>& fn) {
  const FinCat& C = *F.source;
  const FinCat& D = *F.target;
  const std::size_t n = C.num_objects();
  StepCounter steps(budget, "natural transformation search");
  std::vector<std::vector<std::size_t>> squares(n);
  for (std::size_t a = 0; a < C.num_morphisms(); ++a) squares[std::max(C.dom(a), C.cod(a))].push_back(a);
  NatTransf t{F, G, std::vector<std::size_t>(n, npos)};
  bool stop = false;
  std::function<void(std::size_t)> rec = [&](std::size_t x) {
    if (stop) return;
    steps.tick();
    if (x == n) {
      if (!fn(t)) stop = true;
      return;
    }
    for (std::size_t eta : D.hom(F.obj(x), G.obj(x))) {
      if (only_isos && !D.is_iso(eta)) continue;
      t.components[x] = eta;
      bool ok = true;
      for (std::size_t a : squares[x]) {
        std::size_t s = C.dom(a), r = C.cod(a);
        if (D.compose(G.mor(a), t.components[s]) != D.compose(t.components[r], F.mor(a))) { ok = false; break; }
      }
      if (ok) rec(x + 1);
      if (stop) return;
    }
    t.components[x] = npos;
  };
  rec(0);
}

inline std::vector<NatTransf> natural_isos(const CatFunctor& F, const CatFunctor& G, Budget budget = {}) {
  std::vector<NatTransf> out;
  for_each_nat_transf(F, G, true, budget, [&](const NatTransf& t) {
    out.push_back(t);
    return true;
  });
  return out;
}

inline bool naturally_isomorphic(const CatFunctor& F, const CatFunctor& G, Budget budget = {}) {
  bool found = false;
  for_each_nat_transf(F, G, true, budget, [&](const NatTransf&) {
    found = true;
    return false;
  });
  return found;
}

inline bool is_fully_faithful(const CatFunctor& F) {
  const FinCat& C = *F.source;
  const FinCat& D = *F.target;
  for (std::size_t x = 0; x < C.num_objects(); ++x)
    for (std::size_t y = 0; y < C.num_objects(); ++y) {
      const auto& h = C.hom(x, y);
      const auto& k = D.hom(F.obj(x), F.obj(y));
      if (h.size() != k.size()) return false;
      std::vector<bool> hit(D.num_morphisms(), false);
      for (auto f : h) {
        if (hit[F.mor(f)]) return false;
        hit[F.mor(f)] = true;
      }
    }
  return true;
}

// For each target object, a source object and an iso F(a) -> b, if any.
inline std::optional<std::vector<std::pair<std::size_t, std::size_t>>> essential_preimages(const CatFunctor& F) {
  const FinCat& C = *F.source;
  const FinCat& D = *F.target;
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t b = 0; b < D.num_objects(); ++b) {
    std::pair<std::size_t, std::size_t> hit{npos, npos};
    for (std::size_t a = 0; a < C.num_objects() && hit.first == npos; ++a)
      for (std::size_t t : D.hom(F.obj(a), b))
        if (D.is_iso(t)) { hit = {a, t}; break; }
    if (hit.first == npos) return std::nullopt;
    out.push_back(hit);
  }
  return out;
}

inline bool is_essentially_surjective(const CatFunctor& F) { return essential_preimages(F).has_value(); }

inline bool is_isomorphism(const CatFunctor& F) {
  auto bij = [](const std::vector<std::size_t>& v, std::size_t n) {
    if (v.size() != n) return false;
    std::vector<bool> hit(n, false);
    for (auto x : v) {
      if (hit[x]) return false;
      hit[x] = true;
    }
    return true;
  };
  return bij(F.obj_map, F.target->num_objects()) && bij(F.mor_map, F.target->num_morphisms());
}

// A quasi-inverse built from chosen isos F(a_b) -> b; requires F fully
// faithful and essentially surjective.
inline std::optional<CatFunctor> quasi_inverse(const CatFunctor& F) {
  if (!is_fully_faithful(F)) return std::nullopt;
  auto pre = essential_preimages(F);
  if (!pre) return std::nullopt;
  const FinCat& C = *F.source;
  const FinCat& D = *F.target;
  CatFunctor G{F.target, F.source, std::vector<std::size_t>(D.num_objects()), std::vector<std::size_t>(D.num_morphisms())};
  for (std::size_t b = 0; b < D.num_objects(); ++b) G.obj_map[b] = (*pre)[b].first;
  for (std::size_t beta = 0; beta < D.num_morphisms(); ++beta) {
    std::size_t b = D.dom(beta), b2 = D.cod(beta);
    std::size_t t = (*pre)[b].second, t2 = (*pre)[b2].second;
    std::size_t want = D.compose(D.inverse(t2), D.compose(beta, t));
    std::size_t found = npos;
    for (std::size_t g : C.hom(G.obj(b), G.obj(b2)))
      if (F.mor(g) == want) { found = g; break; }
    if (found == npos) return std::nullopt;
    G.mor_map[beta] = found;
  }
  return G;
}

// Equivalence in the sense of a quasi-inverse G with FG ≅ id and GF ≅ id.
inline std::optional<CatFunctor> equivalence_inverse(const CatFunctor& F, Budget budget = {}) {
  auto G = quasi_inverse(F);
  if (!G) return std::nullopt;
  if (!naturally_isomorphic(compose_functors(*G, F), identity_functor(F.source), budget)) return std::nullopt;
  if (!naturally_isomorphic(compose_functors(F, *G), identity_functor(F.target), budget)) return std::nullopt;
  return G;
}

inline bool is_equivalence(const CatFunctor& F, Budget budget = {}) { return equivalence_inverse(F, budget).has_value(); }

inline std::size_t count_iso_classes(const FinCat& c) {
  std::vector<bool> seen(c.num_objects(), false);
  std::size_t k = 0;
  for (std::size_t x = 0; x < c.num_objects(); ++x) {
    if (seen[x]) continue;
    ++k;
    for (std::size_t y = x; y < c.num_objects(); ++y)
      for (auto f : c.hom(x, y))
        if (c.is_iso(f)) { seen[y] = true; break; }
  }
  return k;
}

struct EquivalenceResult {
  Tri status = Tri::Unknown;
  std::optional<CatFunctor> forward;
  std::optional<CatFunctor> backward;
};

inline EquivalenceResult are_equivalent(const CatPtr& c, const CatPtr& d, Budget budget = {}) {
  EquivalenceResult r;
  if (count_iso_classes(*c) != count_iso_classes(*d)) {
    r.status = Tri::No;
    return r;
  }
  FunctorSearchOptions opt;
  opt.budget = budget;
  opt.fully_faithful = true;
  try {
    for_each_functor(c, d, opt, [&](const CatFunctor& F) {
      auto G = equivalence_inverse(F, budget);
      if (!G) return true;
      r.forward = F;
      r.backward = *G;
      return false;
    });
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::BudgetExceeded) throw;
    r.status = Tri::Unknown;
    return r;
  }
  r.status = r.forward ? Tri::Yes : Tri::No;
  return r;
}

inline EquivalenceResult are_isomorphic(const CatPtr& c, const CatPtr& d, Budget budget = {}) {
  EquivalenceResult r;
  if (c->num_objects() != d->num_objects() || c->num_morphisms() != d->num_morphisms()) {
    r.status = Tri::No;
    return r;
  }
  FunctorSearchOptions opt;
  opt.budget = budget;
  opt.fully_faithful = true;
  try {
    for_each_functor(c, d, opt, [&](const CatFunctor& F) {
      if (!is_isomorphism(F)) return true;
      r.forward = F;
      CatFunctor G{d, c, std::vector<std::size_t>(d->num_objects()), std::vector<std::size_t>(d->num_morphisms())};
      for (std::size_t x = 0; x < c->num_objects(); ++x) G.obj_map[F.obj(x)] = x;
      for (std::size_t f = 0; f < c->num_morphisms(); ++f) G.mor_map[F.mor(f)] = f;
      r.backward = G;
      return false;
    });
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::BudgetExceeded) throw;
    r.status = Tri::Unknown;
    return r;
  }
  r.status = r.forward ? Tri::Yes : Tri::No;
  return r;
}

struct OutGroup {
  std::vector<CatFunctor> reps;                 // reps[0] is the identity class
  std::vector<std::vector<std::size_t>> table;  // table[i][j] = class of reps[i]∘reps[j]
};

inline OutGroup out_group(const CatPtr& c, Budget budget = {}) {
  OutGroup g;
  FunctorSearchOptions opt;
  opt.budget = budget;
  opt.fully_faithful = true;
  g.reps.push_back(identity_functor(c));
  auto class_of = [&](const CatFunctor& F) {
    for (std::size_t i = 0; i < g.reps.size(); ++i)
      if (naturally_isomorphic(F, g.reps[i], budget)) return i;
    return npos;
  };
  for_each_functor(c, c, opt, [&](const CatFunctor& F) {
    if (!is_equivalence(F, budget)) return true;
    if (class_of(F) == npos) g.reps.push_back(F);
    return true;
  });
  const std::size_t k = g.reps.size();
  g.table.assign(k, std::vector<std::size_t>(k, npos));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) g.table[i][j] = class_of(compose_functors(g.reps[i], g.reps[j]));
  return g;
}

// Closure, associativity, identity and inverses of a finite operation table.
inline bool is_group_table(const std::vector<std::vector<std::size_t>>& t, std::size_t e = 0) {
  const std::size_t n = t.size();
  if (n == 0 || e >= n) return false;
  for (const auto& row : t) {
    if (row.size() != n) return false;
    for (auto v : row)
      if (v >= n) return false;
  }
  for (std::size_t a = 0; a < n; ++a) {
    if (t[e][a] != a || t[a][e] != a) return false;
    bool inv = false;
    for (std::size_t b = 0; b < n; ++b)
      if (t[a][b] == e && t[b][a] == e) inv = true;
    if (!inv) return false;
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (t[a][t[b][c]] != t[t[a][b]][c]) return false;
  }
  return true;
}

struct Completion {
  CatPtr cat;
  CatFunctor inclusion;
  std::vector<std::size_t> idempotent;  // object of the completion -> idempotent of C
  std::vector<std::size_t> underlying;  // morphism of the completion -> morphism of C
};

// Objects are the idempotents e; Hom(e, f) = {m : f m e = m}.
inline Completion idempotent_completion(const CatPtr& c) {
  Completion out;
  const FinCat& C = *c;
  for (std::size_t f = 0; f < C.num_morphisms(); ++f)
    if (C.dom(f) == C.cod(f) && C.compose(f, f) == f) out.idempotent.push_back(f);
  const std::size_t k = out.idempotent.size();
  std::vector<std::string> names;
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t e = out.idempotent[i];
    names.push_back(C.is_identity(e) ? C.object_name(e) : C.morphism_name(e));
  }
  RawCategory raw = raw_with_identities(names);
  struct Triple { std::size_t e, f, m; };
  std::vector<Triple> mors;
  for (std::size_t i = 0; i < k; ++i) mors.push_back({i, i, out.idempotent[i]});
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      std::size_t e = out.idempotent[i], f = out.idempotent[j];
      for (std::size_t m : C.hom(C.dom(e), C.dom(f))) {
        if (i == j && m == e) continue;
        if (C.compose(f, C.compose(m, e)) != m) continue;
        mors.push_back({i, j, m});
        raw.morphisms.push_back({i, j, C.morphism_name(m) + "@" + names[i] + ">" + names[j]});
      }
    }
  const std::size_t nm = mors.size();
  auto find = [&](std::size_t e, std::size_t f, std::size_t m) {
    for (std::size_t t = 0; t < nm; ++t)
      if (mors[t].e == e && mors[t].f == f && mors[t].m == m) return t;
    return npos;
  };
  raw.comp.assign(nm * nm, npos);
  for (std::size_t g = 0; g < nm; ++g)
    for (std::size_t h = 0; h < nm; ++h)
      if (mors[g].e == mors[h].f) raw.comp[g * nm + h] = find(mors[h].e, mors[g].f, C.compose(mors[g].m, mors[h].m));
  out.cat = FinCat::make_unchecked(std::move(raw));
  for (const auto& t : mors) out.underlying.push_back(t.m);
  out.inclusion = CatFunctor{c, out.cat, {}, {}};
  for (std::size_t x = 0; x < C.num_objects(); ++x) out.inclusion.obj_map.push_back(x);
  for (std::size_t m = 0; m < C.num_morphisms(); ++m) out.inclusion.mor_map.push_back(find(C.dom(m), C.cod(m), m));
  return out;
}

struct AdjointResult {
  Tri status = Tri::Unknown;
  std::optional<CatFunctor> adjoint;
  std::vector<std::size_t> unit_or_counit;
};

// Searches L: B -> A with a unit id => F L whose components are universal.
inline AdjointResult find_left_adjoint(const CatFunctor& F, Budget budget = {}) {
  const FinCat& A = *F.source;
  const FinCat& B = *F.target;
  AdjointResult r;
  auto universal = [&](const CatFunctor& L, std::size_t b, std::size_t eta) {
    for (std::size_t a = 0; a < A.num_objects(); ++a) {
      const auto& src = A.hom(L.obj(b), a);
      const auto& dst = B.hom(b, F.obj(a));
      if (src.size() != dst.size()) return false;
      std::vector<bool> hit(B.num_morphisms(), false);
      for (auto f : src) {
        std::size_t img = B.compose(F.mor(f), eta);
        if (hit[img]) return false;
        hit[img] = true;
      }
    }
    return true;
  };
  FunctorSearchOptions opt;
  opt.budget = budget;
  try {
    for_each_functor(F.target, F.source, opt, [&](const CatFunctor& L) {
      CatFunctor FL = compose_functors(F, L);
      std::vector<std::size_t> comps(B.num_objects(), npos);
      bool found = false;
      std::function<void(std::size_t)> rec = [&](std::size_t b) {
        if (found) return;
        if (b == B.num_objects()) { found = true; return; }
        for (std::size_t eta : B.hom(b, FL.obj(b))) {
          if (!universal(L, b, eta)) continue;
          comps[b] = eta;
          bool ok = true;
          for (std::size_t beta = 0; beta < B.num_morphisms() && ok; ++beta) {
            std::size_t s = B.dom(beta), t = B.cod(beta);
            if (std::max(s, t) != b) continue;
            if (B.compose(FL.mor(beta), comps[s]) != B.compose(comps[t], beta)) ok = false;
          }
          if (ok) rec(b + 1);
          if (found) return;
        }
      };
      rec(0);
      if (!found) return true;
      r.adjoint = L;
      r.unit_or_counit = comps;
      return false;
    });
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::BudgetExceeded) throw;
    return r;
  }
  r.status = r.adjoint ? Tri::Yes : Tri::No;
  return r;
}

// Searches R: B -> A with a counit F R => id whose components are universal.
inline AdjointResult find_right_adjoint(const CatFunctor& F, Budget budget = {}) {
  const FinCat& A = *F.source;
  const FinCat& B = *F.target;
  AdjointResult r;
  auto universal = [&](const CatFunctor& R, std::size_t b, std::size_t eps) {
    for (std::size_t a = 0; a < A.num_objects(); ++a) {
      const auto& src = A.hom(a, R.obj(b));
      const auto& dst = B.hom(F.obj(a), b);
      if (src.size() != dst.size()) return false;
      std::vector<bool> hit(B.num_morphisms(), false);
      for (auto g : src) {
        std::size_t img = B.compose(eps, F.mor(g));
        if (hit[img]) return false;
        hit[img] = true;
      }
    }
    return true;
  };
  FunctorSearchOptions opt;
  opt.budget = budget;
  try {
    for_each_functor(F.target, F.source, opt, [&](const CatFunctor& R) {
      CatFunctor FR = compose_functors(F, R);
      std::vector<std::size_t> comps(B.num_objects(), npos);
      bool found = false;
      std::function<void(std::size_t)> rec = [&](std::size_t b) {
        if (found) return;
        if (b == B.num_objects()) { found = true; return; }
        for (std::size_t eps : B.hom(FR.obj(b), b)) {
          if (!universal(R, b, eps)) continue;
          comps[b] = eps;
          bool ok = true;
          for (std::size_t beta = 0; beta < B.num_morphisms() && ok; ++beta) {
            std::size_t s = B.dom(beta), t = B.cod(beta);
            if (std::max(s, t) != b) continue;
            if (B.compose(beta, comps[s]) != B.compose(comps[t], FR.mor(beta))) ok = false;
          }
          if (ok) rec(b + 1);
          if (found) return;
        }
      };
      rec(0);
      if (!found) return true;
      r.adjoint = R;
      r.unit_or_counit = comps;
      return false;
    });
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::BudgetExceeded) throw;
    return r;
  }
  r.status = r.adjoint ? Tri::Yes : Tri::No;
  return r;
}

}  // namespace fincat
