#pragma once

#include <cstddef>
#include <numeric>
#include <utility>
#include <vector>

namespace fincat {

// Disjoint sets with path halving and union by size.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n = 0) : parent_(n), size_(n, 1) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }

  // True if the two were in different classes.
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    ++merges_;
    return true;
  }

  std::size_t size() const { return parent_.size(); }
  std::size_t classes() const { return parent_.size() - merges_; }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
  std::size_t merges_ = 0;
};

}  // namespace fincat
