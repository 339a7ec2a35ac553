#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tropic/error.hpp"
#include "tropic/vertex_set.hpp"

namespace tropic {

// Simple undirected graph on vertices 0..n-1 with sorted adjacency lists.
// Self-loops are rejected; duplicate edges collapse.
class graph {
 public:
  graph() = default;

  static graph build(int n, std::span<const std::pair<int, int>> edges) {
    if (n < 0) throw invalid_input("graph: negative vertex count");
    graph g;
    g.adj_.resize(static_cast<std::size_t>(n));
    for (const auto& [u, v] : edges) {
      if (u < 0 || u >= n || v < 0 || v >= n)
        throw invalid_input("graph: edge (" + std::to_string(u) + "," + std::to_string(v) +
                            ") out of range");
      if (u == v) throw invalid_input("graph: self-loop at vertex " + std::to_string(u));
      g.adj_[static_cast<std::size_t>(u)].push_back(v);
      g.adj_[static_cast<std::size_t>(v)].push_back(u);
    }
    for (auto& nb : g.adj_) {
      std::sort(nb.begin(), nb.end());
      nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
      g.edge_count_ += nb.size();
    }
    g.edge_count_ /= 2;
    return g;
  }

  static graph build(int n, const std::vector<std::pair<int, int>>& edges) {
    return build(n, std::span<const std::pair<int, int>>(edges));
  }

  static graph build(int n, std::initializer_list<std::pair<int, int>> edges) {
    return build(n, std::span<const std::pair<int, int>>(edges.begin(), edges.size()));
  }

  int vertex_count() const { return static_cast<int>(adj_.size()); }
  long long edge_count() const { return edge_count_; }

  std::span<const int> neighbors(int v) const {
    check_vertex(v);
    return adj_[static_cast<std::size_t>(v)];
  }

  int degree(int v) const { return static_cast<int>(neighbors(v).size()); }

  int max_degree() const {
    int d = 0;
    for (const auto& nb : adj_) d = std::max(d, static_cast<int>(nb.size()));
    return d;
  }

  bool adjacent(int u, int v) const {
    check_vertex(u);
    check_vertex(v);
    const auto& nb = adj_[static_cast<std::size_t>(u)];
    return std::binary_search(nb.begin(), nb.end(), v);
  }

  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> es;
    es.reserve(static_cast<std::size_t>(edge_count_));
    for (int u = 0; u < vertex_count(); ++u)
      for (int v : neighbors(u))
        if (u < v) es.emplace_back(u, v);
    return es;
  }

  // Open or closed neighborhood of a vertex set.
  vertex_set neighborhood(const vertex_set& x, bool closed) const {
    std::vector<int> out;
    for (int v : x) {
      check_vertex(v);
      const auto& nb = adj_[static_cast<std::size_t>(v)];
      out.insert(out.end(), nb.begin(), nb.end());
    }
    vertex_set r{std::move(out)};
    if (closed) return r.unite(x);
    return r.difference(x);
  }

  bool is_independent_set(const vertex_set& xs) const {
    for (int v : xs) {
      check_vertex(v);
      for (int u : neighbors(v))
        if (u > v && xs.contains(u)) return false;
    }
    return true;
  }

  // Components in order of their smallest vertex; vertices sorted within.
  std::vector<vertex_set> connected_components() const {
    const int n = vertex_count();
    std::vector<int> comp(static_cast<std::size_t>(n), -1);
    std::vector<vertex_set> out;
    std::vector<int> stack;
    for (int s = 0; s < n; ++s) {
      if (comp[static_cast<std::size_t>(s)] != -1) continue;
      std::vector<int> members;
      comp[static_cast<std::size_t>(s)] = static_cast<int>(out.size());
      stack.push_back(s);
      while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        members.push_back(v);
        for (int u : neighbors(v)) {
          if (comp[static_cast<std::size_t>(u)] == -1) {
            comp[static_cast<std::size_t>(u)] = comp[static_cast<std::size_t>(s)];
            stack.push_back(u);
          }
        }
      }
      out.emplace_back(std::move(members));
    }
    return out;
  }

  bool connected() const {
    if (vertex_count() <= 1) return true;
    return connected_components().size() == 1;
  }

  // Induced subgraph on xs; vertex i of the result is xs.values()[i].
  // The original ids are reported through `original` when non-null.
  graph induced(const vertex_set& xs, std::vector<int>* original = nullptr) const {
    std::vector<int> index(static_cast<std::size_t>(vertex_count()), -1);
    int next = 0;
    for (int v : xs) {
      check_vertex(v);
      index[static_cast<std::size_t>(v)] = next++;
    }
    std::vector<std::pair<int, int>> es;
    for (int v : xs)
      for (int u : neighbors(v))
        if (u > v && index[static_cast<std::size_t>(u)] != -1)
          es.emplace_back(index[static_cast<std::size_t>(v)], index[static_cast<std::size_t>(u)]);
    if (original != nullptr) *original = xs.values();
    return build(xs.size(), es);
  }

 private:
  void check_vertex(int v) const {
    if (v < 0 || v >= vertex_count())
      throw invalid_input("graph: vertex " + std::to_string(v) + " out of range");
  }

  std::vector<std::vector<int>> adj_;
  long long edge_count_ = 0;
};

namespace detail {

// Closed-neighborhood bitmasks for the exact small-graph routines (n <= 64).
inline std::vector<std::uint64_t> closed_neighbor_masks(const graph& g) {
  const int n = g.vertex_count();
  if (n > 64) throw size_error("closed_neighbor_masks: graph larger than 64 vertices");
  std::vector<std::uint64_t> m(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    std::uint64_t bits = std::uint64_t{1} << v;
    for (int u : g.neighbors(v)) bits |= std::uint64_t{1} << u;
    m[static_cast<std::size_t>(v)] = bits;
  }
  return m;
}

inline vertex_set mask_to_set(std::uint64_t mask) {
  std::vector<int> xs;
  while (mask != 0) {
    const int v = std::countr_zero(mask);
    xs.push_back(v);
    mask &= mask - 1;
  }
  vertex_set s{std::move(xs)};
  return s;
}

inline std::uint64_t set_to_mask(const vertex_set& xs) {
  std::uint64_t m = 0;
  for (int v : xs) {
    if (v >= 64) throw size_error("set_to_mask: vertex id beyond 64-bit range");
    m |= std::uint64_t{1} << v;
  }
  return m;
}

}  // namespace detail
}  // namespace tropic
