#pragma once

// (C,D)-bisets stored as C×D^op-sets.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fincat/catset.hpp"
#include "fincat/constructions.hpp"
#include "fincat/functor.hpp"
#include "fincat/union_find.hpp"

namespace fincat {

// The category C×D^op together with its factors.
struct BisetFrame {
  CatPtr left;
  CatPtr right;
  CatPtr right_op;
  ProductCat prod;
};

// Frames are shared per (left, right) pointer pair while some biset holds
// them; a live frame keeps both categories alive, so the key stays valid.
inline std::shared_ptr<const BisetFrame> make_frame(const CatPtr& left, const CatPtr& right) {
  static std::mutex mu;
  static std::map<std::pair<const FinCat*, const FinCat*>, std::weak_ptr<const BisetFrame>> cache;
  std::lock_guard lock(mu);
  auto key = std::make_pair(left.get(), right.get());
  if (auto it = cache.find(key); it != cache.end()) {
    if (auto live = it->second.lock()) return live;
  }
  auto f = std::make_shared<BisetFrame>();
  f->left = left;
  f->right = right;
  f->right_op = opposite(right);
  f->prod = product(left, f->right_op);
  if (cache.size() > 4096) {
    for (auto it = cache.begin(); it != cache.end();) it = it->second.expired() ? cache.erase(it) : std::next(it);
  }
  cache[key] = f;
  return f;
}

using SizeMatrix = std::vector<std::vector<std::size_t>>;

class Biset {
 public:
  Biset() = default;
  Biset(std::shared_ptr<const BisetFrame> frame, CSet carrier) : frame_(std::move(frame)), carrier_(std::move(carrier)) {
    if (!same_structure(frame_->prod.cat, carrier_.cat()))
      throw Error(ErrorKind::CategoryMismatch, "carrier is not over C×D^op");
  }

  const CatPtr& left_cat() const { return frame_->left; }
  const CatPtr& right_cat() const { return frame_->right; }
  const std::shared_ptr<const BisetFrame>& frame() const { return frame_; }
  const CSet& carrier() const { return carrier_; }

  std::size_t object(std::size_t x, std::size_t y) const { return frame_->prod.object(x, y); }
  std::size_t value_size(std::size_t x, std::size_t y) const { return carrier_.size(object(x, y)); }

  // alpha: x -> x1 in C, beta: y1 -> y in D; u in Omega(x, y) goes to
  // alpha·u·beta in Omega(x1, y1).
  std::size_t act(std::size_t alpha, std::size_t beta, std::size_t u) const {
    return carrier_.act(frame_->prod.morphism(alpha, beta), u);
  }
  std::size_t left_act(std::size_t alpha, std::size_t y, std::size_t u) const { return act(alpha, y, u); }
  std::size_t right_act(std::size_t x, std::size_t u, std::size_t beta) const { return act(x, beta, u); }

  SizeMatrix size_matrix() const {
    SizeMatrix m(left_cat()->num_objects(), std::vector<std::size_t>(right_cat()->num_objects()));
    for (std::size_t x = 0; x < m.size(); ++x)
      for (std::size_t y = 0; y < m[x].size(); ++y) m[x][y] = value_size(x, y);
    return m;
  }

 private:
  std::shared_ptr<const BisetFrame> frame_;
  CSet carrier_;
};

// Builds a biset from value sizes and act(alpha, beta, x, y, u).
inline Biset make_biset(const std::shared_ptr<const BisetFrame>& frame, const SizeMatrix& sizes,
                        const std::function<std::size_t(std::size_t, std::size_t, std::size_t)>& act, bool trusted = false) {
  const ProductCat& p = frame->prod;
  std::vector<std::size_t> flat(p.cat->num_objects());
  for (std::size_t x = 0; x < frame->left->num_objects(); ++x)
    for (std::size_t y = 0; y < frame->right->num_objects(); ++y) flat[p.object(x, y)] = sizes.at(x).at(y);
  CSet carrier = make_cset(p.cat, flat, [&](std::size_t m, std::size_t u) {
    auto [a, b] = p.mor_pair[m];
    return act(a, b, u);
  }, trusted);
  return Biset(frame, std::move(carrier));
}

inline Biset make_biset(const CatPtr& left, const CatPtr& right, const SizeMatrix& sizes,
                        const std::function<std::size_t(std::size_t, std::size_t, std::size_t)>& act, bool trusted = false) {
  return make_biset(make_frame(left, right), sizes, act, trusted);
}

inline bool isomorphic(const Biset& a, const Biset& b, Budget budget = {}) {
  if (!same_structure(a.left_cat(), b.left_cat()) || !same_structure(a.right_cat(), b.right_cat())) return false;
  return isomorphic(a.carrier(), b.carrier(), budget);
}

inline bool same_biset(const Biset& a, const Biset& b) {
  return same_structure(a.left_cat(), b.left_cat()) && same_structure(a.right_cat(), b.right_cat()) &&
         a.carrier().sizes() == b.carrier().sizes() && a.carrier().tables() == b.carrier().tables();
}

// Value at (x, y) is Hom(y, x).
inline Biset identity_biset(const CatPtr& c) {
  auto frame = make_frame(c, c);
  SizeMatrix sizes(c->num_objects(), std::vector<std::size_t>(c->num_objects()));
  for (std::size_t x = 0; x < c->num_objects(); ++x)
    for (std::size_t y = 0; y < c->num_objects(); ++y) sizes[x][y] = c->hom(y, x).size();
  return make_biset(frame, sizes, [&](std::size_t a, std::size_t b, std::size_t u) {
    std::size_t phi = c->hom(c->cod(b), c->dom(a))[u];
    return c->hom_index(c->compose(a, c->compose(phi, b)));
  }, true);
}

// Value at (x, y) is Hom_E(G y, F x), acted on by F(alpha) ∘ - ∘ G(beta).
inline Biset biset_from_functors(const CatFunctor& F, const CatFunctor& G) {
  if (!same_structure(F.target, G.target)) throw Error(ErrorKind::CategoryMismatch, "functors need a shared target");
  const FinCat& E = *F.target;
  const FinCat& C = *F.source;
  const FinCat& D = *G.source;
  SizeMatrix sizes(C.num_objects(), std::vector<std::size_t>(D.num_objects()));
  for (std::size_t x = 0; x < C.num_objects(); ++x)
    for (std::size_t y = 0; y < D.num_objects(); ++y) sizes[x][y] = E.hom(G.obj(y), F.obj(x)).size();
  return make_biset(F.source, G.source, sizes, [&](std::size_t a, std::size_t b, std::size_t u) {
    std::size_t phi = E.hom(G.obj(D.cod(b)), F.obj(C.dom(a)))[u];
    return E.hom_index(E.compose(F.mor(a), E.compose(phi, G.mor(b))));
  }, true);
}

// The (D,C)-biset D with C acting through F on the right.
inline Biset phi(const CatFunctor& F) { return biset_from_functors(identity_functor(F.target), F); }

// The (C,D)-biset D with C acting through F on the left.
inline Biset hat_phi(const CatFunctor& F) { return biset_from_functors(F, identity_functor(F.target)); }

struct CellTrace {
  std::size_t candidate_pairs = 0;
  std::size_t classes = 0;
  std::vector<std::pair<std::size_t, std::size_t>> unions;  // pair indices merged
};

struct CompositionTrace {
  std::size_t rows = 0, cols = 0;
  std::vector<CellTrace> cells;  // row-major over (x, z)
  const CellTrace& cell(std::size_t x, std::size_t z) const { return cells[x * cols + z]; }
};

// Omega∘Psi: pairs over the middle category modulo (u·b, v) ~ (u, b·v).
inline Biset compose_bisets(const Biset& omega, const Biset& psi, CompositionTrace* trace = nullptr) {
  if (!same_structure(omega.right_cat(), psi.left_cat()))
    throw Error(ErrorKind::CategoryMismatch, "middle categories differ");
  const FinCat& C = *omega.left_cat();
  const FinCat& D = *omega.right_cat();
  const FinCat& E = *psi.right_cat();
  const std::size_t nc = C.num_objects(), nd = D.num_objects(), ne = E.num_objects();

  struct Cell {
    std::vector<std::size_t> offset;   // per middle object
    std::vector<std::size_t> class_of; // pair index -> class
    std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> rep;  // class -> (y, u, v)
  };
  std::vector<Cell> cells(nc * ne);
  if (trace) {
    trace->rows = nc;
    trace->cols = ne;
    trace->cells.assign(nc * ne, {});
  }
  for (std::size_t x = 0; x < nc; ++x)
    for (std::size_t z = 0; z < ne; ++z) {
      Cell& cell = cells[x * ne + z];
      cell.offset.assign(nd + 1, 0);
      for (std::size_t y = 0; y < nd; ++y) cell.offset[y + 1] = cell.offset[y] + omega.value_size(x, y) * psi.value_size(y, z);
      const std::size_t total = cell.offset[nd];
      auto pair_index = [&](std::size_t y, std::size_t u, std::size_t v) {
        return cell.offset[y] + u * psi.value_size(y, z) + v;
      };
      UnionFind uf(total);
      CellTrace* ct = trace ? &trace->cells[x * ne + z] : nullptr;
      for (std::size_t b = nd; b < D.num_morphisms(); ++b) {
        std::size_t y2 = D.dom(b), y1 = D.cod(b);
        for (std::size_t u = 0; u < omega.value_size(x, y1); ++u)
          for (std::size_t v = 0; v < psi.value_size(y2, z); ++v) {
            std::size_t p = pair_index(y2, omega.right_act(x, u, b), v);
            std::size_t q = pair_index(y1, u, psi.left_act(b, z, v));
            if (uf.unite(p, q) && ct) ct->unions.push_back({std::min(p, q), std::max(p, q)});
          }
      }
      // Classes numbered by their least pair index.
      cell.class_of.assign(total, npos);
      std::vector<std::size_t> root_class(total, npos);
      for (std::size_t y = 0; y < nd; ++y)
        for (std::size_t u = 0; u < omega.value_size(x, y); ++u)
          for (std::size_t v = 0; v < psi.value_size(y, z); ++v) {
            std::size_t k = pair_index(y, u, v);
            std::size_t r = uf.find(k);
            if (root_class[r] == npos) {
              root_class[r] = cell.rep.size();
              cell.rep.push_back({y, u, v});
            }
            cell.class_of[k] = root_class[r];
          }
      if (ct) {
        ct->candidate_pairs = total;
        ct->classes = cell.rep.size();
      }
    }

  auto frame = make_frame(omega.left_cat(), psi.right_cat());
  SizeMatrix sizes(nc, std::vector<std::size_t>(ne));
  for (std::size_t x = 0; x < nc; ++x)
    for (std::size_t z = 0; z < ne; ++z) sizes[x][z] = cells[x * ne + z].rep.size();
  return make_biset(frame, sizes, [&](std::size_t a, std::size_t g, std::size_t k) {
    std::size_t x = C.dom(a), x1 = C.cod(a), z = E.cod(g), z1 = E.dom(g);
    (void)z;
    auto [y, u, v] = cells[x * ne + z].rep[k];
    const Cell& target = cells[x1 * ne + z1];
    std::size_t u2 = omega.left_act(a, y, u);
    std::size_t v2 = psi.right_act(y, v, g);
    return target.class_of[target.offset[y] + u2 * psi.value_size(y, z1) + v2];
  });
}

// Entrywise |Omega∘Psi| <= |Omega||Psi| and equal zero patterns.
struct SizeBoundReport {
  SizeMatrix actual;
  SizeMatrix bound;
  bool within_bound = true;
  bool zero_pattern_matches = true;
};

inline SizeMatrix multiply(const SizeMatrix& a, const SizeMatrix& b) {
  std::size_t inner = b.size();
  std::size_t cols = inner ? b[0].size() : 0;
  SizeMatrix c(a.size(), std::vector<std::size_t>(cols, 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < inner; ++k)
      for (std::size_t j = 0; j < cols; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

inline SizeBoundReport size_bound_check(const Biset& omega, const Biset& psi) {
  SizeBoundReport r;
  r.actual = compose_bisets(omega, psi).size_matrix();
  r.bound = multiply(omega.size_matrix(), psi.size_matrix());
  for (std::size_t i = 0; i < r.actual.size(); ++i)
    for (std::size_t j = 0; j < r.actual[i].size(); ++j) {
      if (r.actual[i][j] > r.bound[i][j]) r.within_bound = false;
      if ((r.actual[i][j] == 0) != (r.bound[i][j] == 0)) r.zero_pattern_matches = false;
    }
  return r;
}

inline Biset empty_biset(const CatPtr& left, const CatPtr& right) {
  SizeMatrix sizes(left->num_objects(), std::vector<std::size_t>(right->num_objects(), 0));
  return make_biset(left, right, sizes, [](std::size_t, std::size_t, std::size_t) { return npos; }, true);
}

inline Biset disjoint_union(const Biset& a, const Biset& b) {
  if (!same_structure(a.left_cat(), b.left_cat()) || !same_structure(a.right_cat(), b.right_cat()))
    throw Error(ErrorKind::CategoryMismatch, "disjoint union of bisets");
  return Biset(a.frame(), disjoint_union(a.carrier(), b.carrier()));
}

// Sizes per (x, y) for every filling of the given size matrix; stops after
// `limit` solutions. Exhaustive over action tables of non-identity
// morphisms of C×D^op.
inline std::vector<CSet> enumerate_cset_structures(const CatPtr& cat, const std::vector<std::size_t>& sizes,
                                                   std::size_t limit, Budget budget = {}) {
  const FinCat& c = *cat;
  const std::size_t n = c.num_objects(), m = c.num_morphisms();
  StepCounter steps(budget, "C-set enumeration");
  ActionTables act(m);
  for (std::size_t f = 0; f < m; ++f) act[f].assign(sizes[c.dom(f)], npos);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t u = 0; u < sizes[x]; ++u) act[x][u] = u;
  // Composition constraints keyed by the last table they depend on.
  std::vector<std::vector<std::tuple<std::size_t, std::size_t, std::size_t>>> checks(m);
  for (std::size_t g = 0; g < m; ++g)
    for (std::size_t f = 0; f < m; ++f) {
      std::size_t k = c.compose(g, f);
      if (k == npos) continue;
      std::size_t key = std::max({g, f, k});
      if (key < n) continue;
      checks[key].emplace_back(g, f, k);
    }
  std::vector<CSet> out;
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t f, std::size_t u) {
    if (out.size() >= limit) return;
    steps.tick();
    if (f == m) {
      out.emplace_back(cat, sizes, act, CSet::Unchecked{});
      return;
    }
    if (u == sizes[c.dom(f)]) {
      for (auto [g, h, k] : checks[f])
        for (std::size_t w = 0; w < sizes[c.dom(h)]; ++w)
          if (act[g][act[h][w]] != act[k][w]) return;
      rec(f + 1, 0);
      return;
    }
    for (std::size_t v = 0; v < sizes[c.cod(f)]; ++v) {
      act[f][u] = v;
      rec(f, u + 1);
      if (out.size() >= limit) return;
    }
    act[f][u] = npos;
  };
  rec(n, 0);
  return out;
}

// The unique biset with the given size matrix; throws if there is none or
// more than one.
inline Biset biset_from_size_matrix(const CatPtr& left, const CatPtr& right, const SizeMatrix& sizes, Budget budget = {}) {
  auto frame = make_frame(left, right);
  std::vector<std::size_t> flat(frame->prod.cat->num_objects());
  for (std::size_t x = 0; x < left->num_objects(); ++x)
    for (std::size_t y = 0; y < right->num_objects(); ++y) flat[frame->prod.object(x, y)] = sizes.at(x).at(y);
  auto fills = enumerate_cset_structures(frame->prod.cat, flat, 2, budget);
  if (fills.empty()) throw Error(ErrorKind::AmbiguousFilling, "no biset has this size matrix");
  if (fills.size() > 1) throw Error(ErrorKind::AmbiguousFilling, "size matrix does not determine the biset");
  return Biset(frame, std::move(fills.front()));
}

// Omega as a C-set: value at x is the disjoint union over y of Omega(x, y).
inline CSet left_restrict(const Biset& b) {
  const FinCat& C = *b.left_cat();
  const FinCat& D = *b.right_cat();
  std::vector<std::size_t> sizes(C.num_objects(), 0);
  std::vector<std::vector<std::size_t>> off(C.num_objects(), std::vector<std::size_t>(D.num_objects() + 1, 0));
  for (std::size_t x = 0; x < C.num_objects(); ++x) {
    for (std::size_t y = 0; y < D.num_objects(); ++y) off[x][y + 1] = off[x][y] + b.value_size(x, y);
    sizes[x] = off[x][D.num_objects()];
  }
  return make_cset(b.left_cat(), sizes, [&](std::size_t a, std::size_t k) {
    std::size_t x = C.dom(a);
    std::size_t y = static_cast<std::size_t>(std::upper_bound(off[x].begin(), off[x].end(), k) - off[x].begin()) - 1;
    return off[C.cod(a)][y] + b.left_act(a, y, k - off[x][y]);
  }, true);
}

// Omega as a D^op-set: value at y is the disjoint union over x of Omega(x, y).
inline CSet right_restrict(const Biset& b) {
  const FinCat& C = *b.left_cat();
  const FinCat& D = *b.right_cat();
  std::vector<std::size_t> sizes(D.num_objects(), 0);
  std::vector<std::vector<std::size_t>> off(D.num_objects(), std::vector<std::size_t>(C.num_objects() + 1, 0));
  for (std::size_t y = 0; y < D.num_objects(); ++y) {
    for (std::size_t x = 0; x < C.num_objects(); ++x) off[y][x + 1] = off[y][x] + b.value_size(x, y);
    sizes[y] = off[y][C.num_objects()];
  }
  // A morphism of D^op with id beta goes from cod_D(beta) to dom_D(beta).
  return make_cset(b.frame()->right_op, sizes, [&](std::size_t beta, std::size_t k) {
    std::size_t y = D.cod(beta);
    std::size_t x = static_cast<std::size_t>(std::upper_bound(off[y].begin(), off[y].end(), k) - off[y].begin()) - 1;
    return off[D.dom(beta)][x] + b.right_act(x, k - off[y][x], beta);
  }, true);
}

inline bool is_left_representable(const Biset& b) { return is_representable(left_restrict(b)); }
inline bool is_right_representable(const Biset& b) { return is_representable(right_restrict(b)); }
inline bool is_birepresentable(const Biset& b) { return is_left_representable(b) && is_right_representable(b); }

struct Cograph {
  CatPtr cat;
  CatFunctor left_inclusion;   // C -> E
  CatFunctor right_inclusion;  // D -> E
};

namespace detail {
// base, or base with primes appended until it is unused.
inline std::string fresh_name(std::set<std::string>& used, std::string base) {
  while (used.count(base)) base += "'";
  used.insert(base);
  return base;
}
}  // namespace detail

// Objects of C then D; a cross morphism x -> y (x in D, y in C) for each
// element of Omega(y, x). Clashing D-side names get primes.
inline Cograph cograph(const Biset& b) {
  const CatPtr& cp = b.left_cat();
  const CatPtr& dp = b.right_cat();
  const FinCat& C = *cp;
  const FinCat& D = *dp;
  const std::size_t nc = C.num_objects(), nd = D.num_objects();
  std::set<std::string> used_obj, used_mor;
  std::vector<std::string> names;
  for (const auto& n : C.raw().objects) names.push_back(detail::fresh_name(used_obj, n));
  for (const auto& n : D.raw().objects) names.push_back(detail::fresh_name(used_obj, n));
  RawCategory raw = raw_with_identities(names);
  struct Tag { int kind; std::size_t a, b, c; };  // 0: C mor, 1: D mor, 2: cross (y, x, u)
  std::vector<Tag> tags;
  std::vector<std::size_t> cmor(C.num_morphisms()), dmor(D.num_morphisms());
  for (std::size_t x = 0; x < nc; ++x) { tags.push_back({0, x, 0, 0}); cmor[x] = x; }
  for (std::size_t y = 0; y < nd; ++y) { tags.push_back({1, y, 0, 0}); dmor[y] = nc + y; }
  for (std::size_t f = nc; f < C.num_morphisms(); ++f) {
    cmor[f] = raw.morphisms.size();
    raw.morphisms.push_back({C.dom(f), C.cod(f), detail::fresh_name(used_mor, C.morphism_name(f))});
    tags.push_back({0, f, 0, 0});
  }
  for (std::size_t g = nd; g < D.num_morphisms(); ++g) {
    dmor[g] = raw.morphisms.size();
    raw.morphisms.push_back({nc + D.dom(g), nc + D.cod(g), detail::fresh_name(used_mor, D.morphism_name(g))});
    tags.push_back({1, g, 0, 0});
  }
  std::vector<std::vector<std::size_t>> cross(nc * nd);
  for (std::size_t y = 0; y < nc; ++y)
    for (std::size_t x = 0; x < nd; ++x)
      for (std::size_t u = 0; u < b.value_size(y, x); ++u) {
        cross[y * nd + x].push_back(raw.morphisms.size());
        raw.morphisms.push_back({nc + x, y, detail::fresh_name(used_mor, "e" + std::to_string(raw.morphisms.size()))});
        tags.push_back({2, y, x, u});
      }
  const std::size_t m = raw.morphisms.size();
  raw.comp.assign(m * m, npos);
  for (std::size_t g = 0; g < m; ++g)
    for (std::size_t f = 0; f < m; ++f) {
      if (raw.morphisms[g].dom != raw.morphisms[f].cod) continue;
      const Tag& tg = tags[g];
      const Tag& tf = tags[f];
      std::size_t r = npos;
      if (tg.kind == 0 && tf.kind == 0) r = cmor[C.compose(tg.a, tf.a)];
      else if (tg.kind == 1 && tf.kind == 1) r = dmor[D.compose(tg.a, tf.a)];
      else if (tg.kind == 0 && tf.kind == 2) r = cross[C.cod(tg.a) * nd + tf.b][b.left_act(tg.a, tf.b, tf.c)];
      else if (tg.kind == 2 && tf.kind == 1) r = cross[tg.a * nd + D.dom(tf.a)][b.right_act(tg.a, tg.c, tf.a)];
      raw.comp[g * m + f] = r;
    }
  Cograph out;
  out.cat = FinCat::make_unchecked(std::move(raw));
  std::vector<std::size_t> cobj(nc), dobj(nd);
  for (std::size_t x = 0; x < nc; ++x) cobj[x] = x;
  for (std::size_t y = 0; y < nd; ++y) dobj[y] = nc + y;
  out.left_inclusion = CatFunctor{cp, out.cat, cobj, cmor};
  out.right_inclusion = CatFunctor{dp, out.cat, dobj, dmor};
  return out;
}

// Transport along isomorphisms F: C -> C' and G: D -> D'.
inline Biset transport(const Biset& b, const CatFunctor& F, const CatFunctor& G) {
  if (!is_isomorphism(F) || !is_isomorphism(G)) throw Error(ErrorKind::CategoryMismatch, "transport needs isomorphisms");
  const FinCat& C2 = *F.target;
  const FinCat& D2 = *G.target;
  std::vector<std::size_t> fo(C2.num_objects()), fm(C2.num_morphisms()), go(D2.num_objects()), gm(D2.num_morphisms());
  for (std::size_t x = 0; x < F.obj_map.size(); ++x) fo[F.obj(x)] = x;
  for (std::size_t f = 0; f < F.mor_map.size(); ++f) fm[F.mor(f)] = f;
  for (std::size_t y = 0; y < G.obj_map.size(); ++y) go[G.obj(y)] = y;
  for (std::size_t g = 0; g < G.mor_map.size(); ++g) gm[G.mor(g)] = g;
  SizeMatrix sizes(C2.num_objects(), std::vector<std::size_t>(D2.num_objects()));
  for (std::size_t x = 0; x < C2.num_objects(); ++x)
    for (std::size_t y = 0; y < D2.num_objects(); ++y) sizes[x][y] = b.value_size(fo[x], go[y]);
  return make_biset(F.target, G.target, sizes, [&](std::size_t a, std::size_t g, std::size_t u) {
    return b.act(fm[a], gm[g], u);
  }, true);
}

// (D^op, C^op)-biset with the same values.
inline Biset tau(const Biset& b) {
  auto frame = make_frame(b.frame()->right_op, opposite(b.left_cat()));
  const FinCat& C = *b.left_cat();
  const FinCat& D = *b.right_cat();
  SizeMatrix sizes(D.num_objects(), std::vector<std::size_t>(C.num_objects()));
  for (std::size_t y = 0; y < D.num_objects(); ++y)
    for (std::size_t x = 0; x < C.num_objects(); ++x) sizes[y][x] = b.value_size(x, y);
  return make_biset(frame, sizes, [&](std::size_t beta, std::size_t alpha, std::size_t u) { return b.act(alpha, beta, u); }, true);
}

struct ExternalProduct {
  Biset biset;
  ProductCat left;   // C1×C2
  ProductCat right;  // D1×D2
};

// (C1×C2, D1×D2)-biset with values Omega1(c1,d1) × Omega2(c2,d2).
inline ExternalProduct external_product(const Biset& a, const Biset& b) {
  ExternalProduct out;
  out.left = product(a.left_cat(), b.left_cat());
  out.right = product(a.right_cat(), b.right_cat());
  const ProductCat& L = out.left;
  const ProductCat& R = out.right;
  SizeMatrix sizes(L.cat->num_objects(), std::vector<std::size_t>(R.cat->num_objects()));
  for (std::size_t x = 0; x < L.cat->num_objects(); ++x)
    for (std::size_t y = 0; y < R.cat->num_objects(); ++y) {
      auto [c1, c2] = L.object_pair(x);
      auto [d1, d2] = R.object_pair(y);
      sizes[x][y] = a.value_size(c1, d1) * b.value_size(c2, d2);
    }
  const FinCat& RC = *R.cat;
  out.biset = make_biset(L.cat, R.cat, sizes, [&](std::size_t alpha, std::size_t beta, std::size_t w) {
    auto [a1, a2] = L.mor_pair[alpha];
    auto [b1, b2] = R.mor_pair[beta];
    auto [c1, c2] = L.object_pair(L.cat->dom(alpha));
    auto [d1, d2] = R.object_pair(RC.cod(beta));
    auto [c1n, c2n] = L.object_pair(L.cat->cod(alpha));
    auto [d1n, d2n] = R.object_pair(RC.dom(beta));
    (void)c1; (void)d1; (void)c1n; (void)d1n;
    std::size_t n2 = b.value_size(c2, d2);
    std::size_t u1 = w / n2, u2 = w % n2;
    return a.act(a1, b1, u1) * b.value_size(c2n, d2n) + b.act(a2, b2, u2);
  }, true);
  return out;
}

// Isomorphism (A×B)×C -> A×(B×C) given the four products involved.
inline CatFunctor associator(const ProductCat& ab_c, const ProductCat& ab, const ProductCat& a_bc, const ProductCat& bc) {
  CatFunctor F{ab_c.cat, a_bc.cat, {}, {}};
  for (std::size_t o = 0; o < ab_c.cat->num_objects(); ++o) {
    auto [xy, z] = ab_c.object_pair(o);
    auto [x, y] = ab.object_pair(xy);
    F.obj_map.push_back(a_bc.object(x, bc.object(y, z)));
  }
  for (std::size_t m = 0; m < ab_c.cat->num_morphisms(); ++m) {
    auto [fg, h] = ab_c.mor_pair[m];
    auto [f, g] = ab.mor_pair[fg];
    F.mor_map.push_back(a_bc.morphism(f, bc.morphism(g, h)));
  }
  return F;
}

// C×1 -> C and 1×C -> C.
inline CatFunctor right_unitor(const ProductCat& c1) {
  CatFunctor F{c1.cat, c1.left, {}, {}};
  for (std::size_t o = 0; o < c1.cat->num_objects(); ++o) F.obj_map.push_back(c1.object_pair(o).first);
  for (std::size_t m = 0; m < c1.cat->num_morphisms(); ++m) F.mor_map.push_back(c1.mor_pair[m].first);
  return F;
}

inline CatFunctor left_unitor(const ProductCat& oc) {
  CatFunctor F{oc.cat, oc.right, {}, {}};
  for (std::size_t o = 0; o < oc.cat->num_objects(); ++o) F.obj_map.push_back(oc.object_pair(o).second);
  for (std::size_t m = 0; m < oc.cat->num_morphisms(); ++m) F.mor_map.push_back(oc.mor_pair[m].second);
  return F;
}

namespace detail {

// Checks (id_C × ev) ∘ (coev × id_C) ≅ id_C.
inline bool zigzag_identity(const CatPtr& c) {
  const FinCat& C = *c;
  CatPtr cop = opposite(c);
  CatPtr one = one_category();
  ProductCat p = product(c, cop);    // C×C^op
  ProductCat q = product(cop, c);    // C^op×C

  // coev: (C×C^op, 1)-biset, value at (a, b) is Hom_C(b, a).
  SizeMatrix cs(p.cat->num_objects(), std::vector<std::size_t>(1));
  for (std::size_t o = 0; o < p.cat->num_objects(); ++o) {
    auto [a, b] = p.object_pair(o);
    cs[o][0] = C.hom(b, a).size();
  }
  Biset coev = make_biset(p.cat, one, cs, [&](std::size_t m, std::size_t, std::size_t u) {
    auto [f, g] = p.mor_pair[m];  // f: a -> a1 in C, g: b1 -> b in C
    std::size_t phi = C.hom(C.cod(g), C.dom(f))[u];
    return C.hom_index(C.compose(f, C.compose(phi, g)));
  }, true);

  // ev: (1, C^op×C)-biset, value at (y, z) is Hom_C(z, y).
  SizeMatrix es(1, std::vector<std::size_t>(q.cat->num_objects()));
  for (std::size_t o = 0; o < q.cat->num_objects(); ++o) {
    auto [y, z] = q.object_pair(o);
    es[0][o] = C.hom(z, y).size();
  }
  Biset ev = make_biset(one, q.cat, es, [&](std::size_t, std::size_t m, std::size_t u) {
    auto [g, f] = q.mor_pair[m];  // g: y -> y1 in C, f: z1 -> z in C
    std::size_t phi = C.hom(C.cod(f), C.dom(g))[u];
    return C.hom_index(C.compose(g, C.compose(phi, f)));
  }, true);

  ExternalProduct omega = external_product(identity_biset(c), ev);   // (C×1, C×(C^op×C))
  ExternalProduct psi = external_product(coev, identity_biset(c));   // ((C×C^op)×C, 1×C)
  CatFunctor assoc = associator(psi.left, p, omega.right, q);
  Biset psi2 = transport(psi.biset, assoc, identity_functor(psi.right.cat));
  Biset comp = compose_bisets(omega.biset, psi2);
  Biset back = transport(comp, right_unitor(omega.left), left_unitor(psi.right));
  Biset id = identity_biset(c);
  return isomorphic(Biset(id.frame(), back.carrier()), id);
}

}  // namespace detail

// The zig-zag identity for C and for C^op.
inline bool dual_object_check(const CatPtr& c) {
  return detail::zigzag_identity(c) && detail::zigzag_identity(opposite(c));
}

}  // namespace fincat
