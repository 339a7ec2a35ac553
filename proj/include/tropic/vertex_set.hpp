#pragma once

#include <algorithm>
#include <compare>
#include <initializer_list>
#include <string>
#include <vector>

namespace tropic {

// Value-semantic set of vertex ids, stored sorted and duplicate-free.
class vertex_set {
 public:
  vertex_set() = default;

  explicit vertex_set(std::vector<int> xs) : v_(std::move(xs)) {
    std::sort(v_.begin(), v_.end());
    v_.erase(std::unique(v_.begin(), v_.end()), v_.end());
  }

  vertex_set(std::initializer_list<int> xs) : vertex_set(std::vector<int>(xs)) {}

  static vertex_set full(int n) {
    std::vector<int> xs(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) xs[static_cast<std::size_t>(i)] = i;
    vertex_set s;
    s.v_ = std::move(xs);
    return s;
  }

  int size() const { return static_cast<int>(v_.size()); }
  bool empty() const { return v_.empty(); }

  bool contains(int x) const { return std::binary_search(v_.begin(), v_.end(), x); }

  // Inserts keeping the order; duplicate inserts are no-ops.
  void insert(int x) {
    const auto it = std::lower_bound(v_.begin(), v_.end(), x);
    if (it == v_.end() || *it != x) v_.insert(it, x);
  }

  void erase(int x) {
    const auto it = std::lower_bound(v_.begin(), v_.end(), x);
    if (it != v_.end() && *it == x) v_.erase(it);
  }

  vertex_set unite(const vertex_set& o) const {
    vertex_set r;
    r.v_.reserve(v_.size() + o.v_.size());
    std::set_union(v_.begin(), v_.end(), o.v_.begin(), o.v_.end(), std::back_inserter(r.v_));
    return r;
  }

  vertex_set intersect(const vertex_set& o) const {
    vertex_set r;
    std::set_intersection(v_.begin(), v_.end(), o.v_.begin(), o.v_.end(),
                          std::back_inserter(r.v_));
    return r;
  }

  vertex_set difference(const vertex_set& o) const {
    vertex_set r;
    std::set_difference(v_.begin(), v_.end(), o.v_.begin(), o.v_.end(), std::back_inserter(r.v_));
    return r;
  }

  bool intersects(const vertex_set& o) const {
    auto a = v_.begin();
    auto b = o.v_.begin();
    while (a != v_.end() && b != o.v_.end()) {
      if (*a == *b) return true;
      if (*a < *b)
        ++a;
      else
        ++b;
    }
    return false;
  }

  bool is_subset_of(const vertex_set& o) const {
    return std::includes(o.v_.begin(), o.v_.end(), v_.begin(), v_.end());
  }

  int intersection_size(const vertex_set& o) const {
    int count = 0;
    auto a = v_.begin();
    auto b = o.v_.begin();
    while (a != v_.end() && b != o.v_.end()) {
      if (*a == *b) {
        ++count;
        ++a;
        ++b;
      } else if (*a < *b) {
        ++a;
      } else {
        ++b;
      }
    }
    return count;
  }

  auto begin() const { return v_.begin(); }
  auto end() const { return v_.end(); }
  const std::vector<int>& values() const { return v_; }

  friend bool operator==(const vertex_set&, const vertex_set&) = default;
  friend auto operator<=>(const vertex_set& a, const vertex_set& b) {
    return std::lexicographical_compare_three_way(a.v_.begin(), a.v_.end(), b.v_.begin(),
                                                  b.v_.end());
  }

  std::string to_string() const {
    std::string s = "{";
    for (std::size_t i = 0; i < v_.size(); ++i) {
      if (i > 0) s += ",";
      s += std::to_string(v_[i]);
    }
    return s + "}";
  }

 private:
  std::vector<int> v_;
};

}  // namespace tropic
