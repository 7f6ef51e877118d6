#pragma once

// Burnside rings as integer combinations of registered indecomposables.

#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "fincat/biset.hpp"
#include "fincat/catset.hpp"
#include "fincat/functor.hpp"

namespace fincat {

// Iso classes of indecomposable C-sets, numbered in registration order.
// Lookups take a shared lock, registration an exclusive one.
class IsoRegistry {
 public:
  explicit IsoRegistry(CatPtr cat, Budget budget = {}) : cat_(std::move(cat)), budget_(budget) {}

  const CatPtr& cat() const { return cat_; }

  std::size_t size() const {
    std::shared_lock lock(mu_);
    return reps_.size();
  }

  const CSet& rep(std::size_t id) const {
    std::shared_lock lock(mu_);
    return reps_.at(id);
  }

  std::optional<std::size_t> find(const CSet& s) const {
    std::shared_lock lock(mu_);
    return find_locked(s, 0);
  }

  // Class id of an indecomposable set, registering it if new.
  std::size_t intern(const CSet& s) {
    if (!same_structure(cat_, s.cat())) throw Error(ErrorKind::CategoryMismatch, "set is over another category");
    std::size_t seen = 0;
    {
      std::shared_lock lock(mu_);
      if (auto id = find_locked(s, 0)) return *id;
      seen = reps_.size();
    }
    std::unique_lock lock(mu_);
    if (auto id = find_locked(s, seen)) return *id;
    if (!is_indecomposable(s)) throw Error(ErrorKind::PreconditionFails, "only indecomposable sets are registered");
    reps_.push_back(s);
    return reps_.size() - 1;
  }

 private:
  std::optional<std::size_t> find_locked(const CSet& s, std::size_t from) const {
    for (std::size_t i = from; i < reps_.size(); ++i)
      if (reps_[i].sizes() == s.sizes() && isomorphic(reps_[i], s, budget_)) return i;
    return std::nullopt;
  }

  CatPtr cat_;
  Budget budget_;
  mutable std::shared_mutex mu_;
  std::deque<CSet> reps_;
};

using RegistryPtr = std::shared_ptr<IsoRegistry>;

inline RegistryPtr make_registry(const CatPtr& c, Budget budget = {}) { return std::make_shared<IsoRegistry>(c, budget); }

struct BurnsideElement {
  RegistryPtr registry;
  std::map<std::size_t, std::int64_t> coeffs;  // zero coefficients are dropped

  std::int64_t coeff(std::size_t id) const {
    auto it = coeffs.find(id);
    return it == coeffs.end() ? 0 : it->second;
  }
  bool is_zero() const { return coeffs.empty(); }
  friend bool operator==(const BurnsideElement& a, const BurnsideElement& b) {
    return a.registry == b.registry && a.coeffs == b.coeffs;
  }
};

inline BurnsideElement zero(const RegistryPtr& r) { return {r, {}}; }

inline BurnsideElement basis_element(const RegistryPtr& r, std::size_t id, std::int64_t k = 1) {
  BurnsideElement e{r, {}};
  if (k != 0) e.coeffs[id] = k;
  return e;
}

inline BurnsideElement classify(const RegistryPtr& r, const CSet& s) {
  BurnsideElement e{r, {}};
  for (const auto& part : decompose(s).parts) ++e.coeffs[r->intern(part)];
  return e;
}

inline BurnsideElement one(const RegistryPtr& r) { return classify(r, point_cset(r->cat())); }

inline BurnsideElement add(const BurnsideElement& a, const BurnsideElement& b) {
  if (a.registry != b.registry) throw Error(ErrorKind::CategoryMismatch, "elements of different registries");
  BurnsideElement c = a;
  for (auto [id, k] : b.coeffs)
    if ((c.coeffs[id] += k) == 0) c.coeffs.erase(id);
  return c;
}

inline BurnsideElement scale(const BurnsideElement& a, std::int64_t k) {
  BurnsideElement c{a.registry, {}};
  if (k == 0) return c;
  for (auto [id, v] : a.coeffs) c.coeffs[id] = v * k;
  return c;
}

inline BurnsideElement subtract(const BurnsideElement& a, const BurnsideElement& b) { return add(a, scale(b, -1)); }

inline BurnsideElement mul(const BurnsideElement& a, const BurnsideElement& b) {
  if (a.registry != b.registry) throw Error(ErrorKind::CategoryMismatch, "elements of different registries");
  BurnsideElement c{a.registry, {}};
  for (auto [i, ki] : a.coeffs)
    for (auto [j, kj] : b.coeffs) {
      CSet p = product_cset(a.registry->rep(i), b.registry->rep(j));
      c = add(c, scale(classify(a.registry, p), ki * kj));
    }
  return c;
}

// "2*[0] - [3]" with each class followed by its size signature.
inline std::string to_string(const BurnsideElement& e) {
  if (e.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto [id, k] : e.coeffs) {
    if (!first) os << (k < 0 ? " - " : " + ");
    else if (k < 0) os << "-";
    std::int64_t a = k < 0 ? -k : k;
    if (a != 1) os << a << "*";
    os << "[" << id << ":";
    const auto& sizes = e.registry->rep(id).sizes();
    for (std::size_t x = 0; x < sizes.size(); ++x) os << (x ? "," : "") << sizes[x];
    os << "]";
    first = false;
  }
  return os.str();
}

// All indecomposable C-sets of total size in [1, bound], up to iso,
// registered into r in enumeration order. Returns their class ids.
inline std::vector<std::size_t> enumerate_indecomposables(const RegistryPtr& r, std::size_t bound, Budget budget = {}) {
  const FinCat& c = *r->cat();
  const std::size_t n = c.num_objects();
  std::vector<std::size_t> ids;
  std::vector<bool> have;
  std::vector<std::size_t> sizes(n, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t x, std::size_t left) {
    if (x == n) {
      if (left == bound) return;  // total size zero
      for (const CSet& s : enumerate_cset_structures(r->cat(), sizes, static_cast<std::size_t>(-1), budget)) {
        if (!is_indecomposable(s)) continue;
        std::size_t id = r->intern(s);
        if (id >= have.size()) have.resize(id + 1, false);
        if (!have[id]) { have[id] = true; ids.push_back(id); }
      }
      return;
    }
    for (std::size_t k = 0; k <= left; ++k) {
      sizes[x] = k;
      rec(x + 1, left - k);
    }
    sizes[x] = 0;
  };
  rec(0, bound);
  return ids;
}

// Extends a C-set to the idempotent completion: the value at e is the
// image of e.
inline CSet extend_to_completion(const CSet& s, const Completion& comp) {
  const FinCat& cb = *comp.cat;
  const FinCat& c = *s.cat();
  std::vector<std::vector<std::size_t>> elems(cb.num_objects());
  std::vector<std::vector<std::size_t>> local(cb.num_objects());
  for (std::size_t i = 0; i < cb.num_objects(); ++i) {
    std::size_t e = comp.idempotent[i];
    std::size_t x = c.dom(e);
    local[i].assign(s.size(x), npos);
    for (std::size_t u = 0; u < s.size(x); ++u)
      if (s.act(e, u) == u) {
        local[i][u] = elems[i].size();
        elems[i].push_back(u);
      }
  }
  std::vector<std::size_t> sizes;
  for (const auto& v : elems) sizes.push_back(v.size());
  return make_cset(comp.cat, sizes, [&](std::size_t f, std::size_t u) {
    return local[cb.cod(f)][s.act(comp.underlying[f], elems[cb.dom(f)][u])];
  });
}

struct BurnsideCompareReport {
  Tri completions_equivalent = Tri::Unknown;
  RegistryPtr left;
  RegistryPtr right;
  std::vector<std::size_t> left_enumerated;
  std::vector<std::size_t> right_enumerated;
  std::map<std::size_t, std::size_t> left_to_right;
  std::map<std::size_t, std::size_t> right_to_left;
  bool images_indecomposable = true;
  bool bijection_consistent = true;
  bool products_agree = true;

  bool ok() const {
    return completions_equivalent == Tri::Yes && images_indecomposable && bijection_consistent && products_agree;
  }
};

// Transfers indecomposables between C and D through an equivalence of
// their completions and checks the class map is a bijection that respects
// products on the enumerated range.
inline BurnsideCompareReport burnside_compare(const CatPtr& c, const CatPtr& d, std::size_t size_bound, Budget budget = {}) {
  BurnsideCompareReport rep;
  Completion cc = idempotent_completion(c);
  Completion dc = idempotent_completion(d);
  EquivalenceResult eq = are_equivalent(dc.cat, cc.cat, budget);
  rep.completions_equivalent = eq.status;
  if (eq.status != Tri::Yes) return rep;
  const CatFunctor& d_to_c = *eq.forward;   // D̄ -> C̄
  const CatFunctor& c_to_d = *eq.backward;  // C̄ -> D̄
  rep.left = make_registry(c, budget);
  rep.right = make_registry(d, budget);
  rep.left_enumerated = enumerate_indecomposables(rep.left, size_bound, budget);
  rep.right_enumerated = enumerate_indecomposables(rep.right, size_bound, budget);

  auto to_right = [&](const CSet& s) {
    return restrict_along(restrict_along(extend_to_completion(s, cc), d_to_c), dc.inclusion);
  };
  auto to_left = [&](const CSet& s) {
    return restrict_along(restrict_along(extend_to_completion(s, dc), c_to_d), cc.inclusion);
  };
  auto map_class = [&](const RegistryPtr& target, const CSet& img) -> std::size_t {
    auto parts = decompose(img).parts;
    if (parts.size() != 1) {
      rep.images_indecomposable = false;
      return npos;
    }
    return target->intern(parts.front());
  };

  for (std::size_t id : rep.left_enumerated) {
    std::size_t j = map_class(rep.right, to_right(rep.left->rep(id)));
    rep.left_to_right[id] = j;
    if (j == npos) continue;
    if (map_class(rep.left, to_left(rep.right->rep(j))) != id) rep.bijection_consistent = false;
  }
  for (std::size_t id : rep.right_enumerated) {
    std::size_t i = map_class(rep.left, to_left(rep.right->rep(id)));
    rep.right_to_left[id] = i;
    if (i == npos) continue;
    if (map_class(rep.right, to_right(rep.left->rep(i))) != id) rep.bijection_consistent = false;
  }
  for (auto [i, j] : rep.left_to_right) {
    if (j == npos) continue;
    for (auto [k, l] : rep.left_to_right) {
      if (l == npos) continue;
      BurnsideElement lhs = classify(rep.left, product_cset(rep.left->rep(i), rep.left->rep(k)));
      BurnsideElement rhs = classify(rep.right, product_cset(rep.right->rep(j), rep.right->rep(l)));
      BurnsideElement mapped = zero(rep.right);
      for (auto [cls, coef] : lhs.coeffs) {
        std::size_t t = map_class(rep.right, to_right(rep.left->rep(cls)));
        if (t == npos) { rep.products_agree = false; continue; }
        mapped = add(mapped, basis_element(rep.right, t, coef));
      }
      if (!(mapped == rhs)) rep.products_agree = false;
    }
  }
  return rep;
}

}  // namespace fincat
