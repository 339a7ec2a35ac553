#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tropic/config.hpp"
#include "tropic/decomposition.hpp"
#include "tropic/error.hpp"
#include "tropic/graph.hpp"
#include "tropic/vertex_set.hpp"

namespace tropic {

// Separation (A, S, B): disjoint cover of V with no edge between A and B.
struct separation {
  vertex_set a;
  vertex_set s;
  vertex_set b;
};

inline void validate_separation(const graph& g, const separation& sep) {
  const int n = g.vertex_count();
  if (sep.a.intersects(sep.s) || sep.a.intersects(sep.b) || sep.s.intersects(sep.b))
    throw invalid_input("separation: parts are not disjoint");
  if (sep.a.size() + sep.s.size() + sep.b.size() != n)
    throw invalid_input("separation: parts do not cover the vertex set");
  for (int v : sep.a)
    for (int u : g.neighbors(v))
      if (sep.b.contains(u))
        throw invalid_input("separation: edge (" + std::to_string(v) + "," + std::to_string(u) +
                            ") crosses from A to B");
}

// Both sides hold at most 2|X|/3 of X (exact integer comparison).
inline bool separation_balanced_for(const separation& sep, const vertex_set& x) {
  return 3 * sep.a.intersection_size(x) <= 2 * x.size() &&
         3 * sep.b.intersection_size(x) <= 2 * x.size();
}

namespace detail {

// Number of vertices outside S+{v} reachable from v through S (the bag of v
// if eliminated after S), optionally reported through `out`.
inline int elimination_degree(const graph& g, std::uint64_t s_mask, int v,
                              std::vector<int>* out = nullptr) {
  const int n = g.vertex_count();
  std::uint64_t visited = std::uint64_t{1} << v;
  std::uint64_t result = 0;
  std::vector<int> stack{v};
  while (!stack.empty()) {
    const int x = stack.back();
    stack.pop_back();
    for (int u : g.neighbors(x)) {
      const std::uint64_t bit = std::uint64_t{1} << u;
      if ((visited & bit) != 0) continue;
      visited |= bit;
      if ((s_mask & bit) != 0)
        stack.push_back(u);
      else
        result |= bit;
    }
  }
  if (out != nullptr) {
    out->clear();
    for (int u = 0; u < n; ++u)
      if ((result >> u) & 1) out->push_back(u);
  }
  return std::popcount(result);
}

// Same computation without the 64-vertex mask limit.
inline int elimination_degree(const graph& g, const std::vector<char>& eliminated, int v,
                              std::vector<int>* out = nullptr) {
  std::vector<char> visited(static_cast<std::size_t>(g.vertex_count()), 0);
  visited[static_cast<std::size_t>(v)] = 1;
  std::vector<int> stack{v};
  std::vector<int> result;
  while (!stack.empty()) {
    const int x = stack.back();
    stack.pop_back();
    for (int u : g.neighbors(x)) {
      if (visited[static_cast<std::size_t>(u)]) continue;
      visited[static_cast<std::size_t>(u)] = 1;
      if (eliminated[static_cast<std::size_t>(u)])
        stack.push_back(u);
      else
        result.push_back(u);
    }
  }
  std::sort(result.begin(), result.end());
  const int degree = static_cast<int>(result.size());
  if (out != nullptr) *out = std::move(result);
  return degree;
}

// Builds a tree decomposition out of an elimination order: bag i holds v_i
// plus its not-yet-eliminated fill neighbors, linked to the bag of the first
// of them that gets eliminated.
inline tree_decomposition decomposition_from_order(const graph& g,
                                                   const std::vector<int>& order) {
  const int n = g.vertex_count();
  tree_decomposition t;
  if (n == 0) {
    t.bags.push_back(vertex_set{});
    return t;
  }
  std::vector<int> position(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) position[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i;
  std::vector<char> eliminated(static_cast<std::size_t>(n), 0);
  std::vector<int> reach;
  for (int i = 0; i < n; ++i) {
    const int v = order[static_cast<std::size_t>(i)];
    elimination_degree(g, eliminated, v, &reach);
    vertex_set bag{reach};
    bag.insert(v);
    t.bags.push_back(bag);
    if (!reach.empty()) {
      int best = -1;
      for (int u : reach)
        if (best == -1 || position[static_cast<std::size_t>(u)] < position[static_cast<std::size_t>(best)])
          best = u;
      t.edges.emplace_back(i, position[static_cast<std::size_t>(best)]);
    } else if (i + 1 < n) {
      t.edges.emplace_back(i, i + 1);
    }
    eliminated[static_cast<std::size_t>(v)] = 1;
  }
  return t;
}

}  // namespace detail

struct treewidth_result {
  int width = 0;
  tree_decomposition decomposition;
};

// Exact treewidth by dynamic programming over elimination prefixes.  The
// witness decomposition validates with exactly the returned width.
inline treewidth_result exact_treewidth(const graph& g, const caps& limits = {}) {
  const int n = g.vertex_count();
  if (n > limits.exact_treewidth)
    throw size_error("exact_treewidth: " + std::to_string(n) + " vertices exceeds cap " +
                     std::to_string(limits.exact_treewidth));
  if (n == 0) return {0, detail::decomposition_from_order(g, {})};

  const std::uint64_t full = (n == 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  std::vector<std::int8_t> best(static_cast<std::size_t>(full) + 1, std::int8_t{127});
  std::vector<std::int8_t> choice(static_cast<std::size_t>(full) + 1, std::int8_t{-1});
  best[0] = 0;
  for (std::uint64_t s = 1; s <= full; ++s) {
    for (std::uint64_t rest = s; rest != 0; rest &= rest - 1) {
      const int v = std::countr_zero(rest);
      const std::uint64_t prev = s & ~(std::uint64_t{1} << v);
      const int q = detail::elimination_degree(g, prev, v);
      const int value = std::max<int>(best[static_cast<std::size_t>(prev)], q);
      if (value < best[static_cast<std::size_t>(s)]) {
        best[static_cast<std::size_t>(s)] = static_cast<std::int8_t>(value);
        choice[static_cast<std::size_t>(s)] = static_cast<std::int8_t>(v);
      }
    }
  }

  std::vector<int> order(static_cast<std::size_t>(n));
  std::uint64_t s = full;
  for (int i = n - 1; i >= 0; --i) {
    const int v = choice[static_cast<std::size_t>(s)];
    order[static_cast<std::size_t>(i)] = v;
    s &= ~(std::uint64_t{1} << v);
  }
  return {best[static_cast<std::size_t>(full)], detail::decomposition_from_order(g, order)};
}

struct treedepth_result {
  int depth = 0;
  treedepth_forest forest;
};

namespace detail {

struct treedepth_memo {
  const graph& g;
  const std::vector<std::uint64_t>& closed;
  std::vector<std::int8_t> depth;         // -1 = unknown, indexed by mask
  std::vector<std::int8_t> root;          // best root for connected masks

  std::uint64_t component_of(std::uint64_t mask, int v) const {
    std::uint64_t comp = std::uint64_t{1} << v;
    std::uint64_t frontier = comp;
    while (frontier != 0) {
      std::uint64_t next = 0;
      for (std::uint64_t f = frontier; f != 0; f &= f - 1)
        next |= closed[static_cast<std::size_t>(std::countr_zero(f))];
      next &= mask & ~comp;
      comp |= next;
      frontier = next;
    }
    return comp;
  }

  int solve(std::uint64_t mask) {
    if (mask == 0) return 0;
    if (depth[static_cast<std::size_t>(mask)] >= 0) return depth[static_cast<std::size_t>(mask)];
    const std::uint64_t first = component_of(mask, std::countr_zero(mask));
    int result;
    if (first != mask) {
      result = std::max(solve(first), solve(mask & ~first));
    } else {
      result = 127;
      int best_root = -1;
      for (std::uint64_t rest = mask; rest != 0; rest &= rest - 1) {
        const int v = std::countr_zero(rest);
        const int sub = solve(mask & ~(std::uint64_t{1} << v));
        if (1 + sub < result) {
          result = 1 + sub;
          best_root = v;
        }
      }
      root[static_cast<std::size_t>(mask)] = static_cast<std::int8_t>(best_root);
    }
    depth[static_cast<std::size_t>(mask)] = static_cast<std::int8_t>(result);
    return result;
  }

  void build_forest(std::uint64_t mask, int parent, std::vector<int>& parent_of) {
    while (mask != 0) {
      const std::uint64_t comp = component_of(mask, std::countr_zero(mask));
      solve(comp);
      const int r = root[static_cast<std::size_t>(comp)];
      parent_of[static_cast<std::size_t>(r)] = parent;
      build_forest(comp & ~(std::uint64_t{1} << r), r, parent_of);
      mask &= ~comp;
    }
  }
};

}  // namespace detail

// Exact treedepth via the standard removal recursion, memoized on vertex
// subsets.  The witness forest validates with exactly the returned depth.
inline treedepth_result exact_treedepth(const graph& g, const caps& limits = {}) {
  const int n = g.vertex_count();
  if (n > limits.exact_treedepth)
    throw size_error("exact_treedepth: " + std::to_string(n) + " vertices exceeds cap " +
                     std::to_string(limits.exact_treedepth));
  treedepth_result out;
  out.forest.parent.assign(static_cast<std::size_t>(n), -1);
  if (n == 0) return out;

  const auto closed = detail::closed_neighbor_masks(g);
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  detail::treedepth_memo memo{g, closed,
                              std::vector<std::int8_t>(static_cast<std::size_t>(full) + 1, -1),
                              std::vector<std::int8_t>(static_cast<std::size_t>(full) + 1, -1)};
  out.depth = memo.solve(full);
  memo.build_forest(full, -1, out.forest.parent);
  return out;
}

struct balanced_separation_result {
  int order = 0;
  separation witness;
};

/// Minimum separator size over separations balanced for X: both sides keep at
// most 2|X|/3 of X.  Candidates are enumerated by size, then lexicographically,
// so ties resolve deterministically.  Removed components are regrouped onto
// the two sides by subset-sum over their X-weights.
inline balanced_separation_result balanced_separation_order(const graph& g, const vertex_set& x,
                                                            const caps& limits = {}) {
  const int n = g.vertex_count();
  if (n > limits.balanced_separation)
    throw size_error("balanced_separation_order: " + std::to_string(n) +
                     " vertices exceeds cap " + std::to_string(limits.balanced_separation));
  if (x.size() >= 64)
    throw size_error("balanced_separation_order: |X| must stay below 64");
  for (int v : x)
    if (v < 0 || v >= n) throw invalid_input("balanced_separation_order: X is not within V");

  const int target = 2 * x.size();  // compare 3*side <= target

  const auto try_separator = [&](const std::vector<int>& sep) -> std::optional<separation> {
    vertex_set s{std::vector<int>(sep)};
    const vertex_set rest = vertex_set::full(n).difference(s);
    const auto comps = g.induced(rest).connected_components();
    std::vector<vertex_set> parts;
    parts.reserve(comps.size());
    const auto& ids = rest.values();
    for (const auto& c : comps) {
      std::vector<int> orig;
      orig.reserve(static_cast<std::size_t>(c.size()));
      for (int local : c) orig.push_back(ids[static_cast<std::size_t>(local)]);
      parts.emplace_back(std::move(orig));
    }
    // Feasible side weights via subset-sum over component X-weights.
    const int total = rest.intersection_size(x);
    std::vector<std::uint64_t> reachable(parts.size() + 1, 0);
    reachable[0] = 1;  // bit k = weight k reachable
    for (std::size_t i = 0; i < parts.size(); ++i) {
      const int w = parts[i].intersection_size(x);
      reachable[i + 1] = reachable[i] | (reachable[i] << w);
    }
    int chosen = -1;
    for (int w = 0; w <= total; ++w) {
      if (((reachable[parts.size()] >> w) & 1) == 0) continue;
      if (3 * w <= target && 3 * (total - w) <= target) {
        chosen = w;
        break;
      }
    }
    if (chosen == -1) return std::nullopt;
    // Reconstruct one A-side choice; prefer assigning to A.
    separation out;
    out.s = std::move(s);
    int need = chosen;
    for (std::size_t i = parts.size(); i > 0; --i) {
      const int w = parts[i - 1].intersection_size(x);
      if (need >= w && ((reachable[i - 1] >> (need - w)) & 1) != 0) {
        out.a = out.a.unite(parts[i - 1]);
        need -= w;
      } else {
        out.b = out.b.unite(parts[i - 1]);
      }
    }
    return out;
  };

  std::vector<int> pick;
  // Lexicographically ordered k-combinations of 0..n-1.
  const auto combinations = [&](int k, auto&& self, int start) -> std::optional<separation> {
    if (static_cast<int>(pick.size()) == k) return try_separator(pick);
    for (int v = start; v <= n - (k - static_cast<int>(pick.size())); ++v) {
      pick.push_back(v);
      if (auto r = self(k, self, v + 1)) return r;
      pick.pop_back();
    }
    return std::nullopt;
  };

  for (int k = 0; k <= n; ++k) {
    pick.clear();
    if (auto r = combinations(k, combinations, 0)) return {k, std::move(*r)};
  }
  throw invalid_input("balanced_separation_order: unreachable (S = V is always feasible)");
}

// Min-fill elimination heuristic; unconditionally valid, width is whatever
// the order yields.  Ties break on the lower vertex id.
inline tree_decomposition heuristic_tree_decomposition(const graph& g) {
  const int n = g.vertex_count();
  std::vector<std::vector<char>> adj(static_cast<std::size_t>(n),
                                     std::vector<char>(static_cast<std::size_t>(n), 0));
  for (const auto& [u, v] : g.edges()) {
    adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = 1;
    adj[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] = 1;
  }
  std::vector<char> gone(static_cast<std::size_t>(n), 0);
  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(n));
  std::vector<int> nb;
  for (int step = 0; step < n; ++step) {
    int best = -1;
    long long best_fill = -1;
    for (int v = 0; v < n; ++v) {
      if (gone[static_cast<std::size_t>(v)]) continue;
      nb.clear();
      for (int u = 0; u < n; ++u)
        if (!gone[static_cast<std::size_t>(u)] && adj[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)])
          nb.push_back(u);
      long long fill = 0;
      for (std::size_t i = 0; i < nb.size(); ++i)
        for (std::size_t j = i + 1; j < nb.size(); ++j)
          if (!adj[static_cast<std::size_t>(nb[i])][static_cast<std::size_t>(nb[j])]) ++fill;
      if (best == -1 || fill < best_fill) {
        best = v;
        best_fill = fill;
      }
    }
    nb.clear();
    for (int u = 0; u < n; ++u)
      if (!gone[static_cast<std::size_t>(u)] && adj[static_cast<std::size_t>(best)][static_cast<std::size_t>(u)])
        nb.push_back(u);
    for (std::size_t i = 0; i < nb.size(); ++i)
      for (std::size_t j = i + 1; j < nb.size(); ++j) {
        adj[static_cast<std::size_t>(nb[i])][static_cast<std::size_t>(nb[j])] = 1;
        adj[static_cast<std::size_t>(nb[j])][static_cast<std::size_t>(nb[i])] = 1;
      }
    gone[static_cast<std::size_t>(best)] = 1;
    order.push_back(best);
  }
  return detail::decomposition_from_order(g, order);
}

// Treedepth forest heuristic for graphs of any size: chain a small BFS layer
// of each component and hang the remaining components below it. No optimality
// claim; validate_treedepth_forest gives the achieved depth.
inline treedepth_forest heuristic_treedepth_forest(const graph& g) {
  const int n = g.vertex_count();
  treedepth_forest f;
  f.parent.assign(static_cast<std::size_t>(n), -1);

  // Builds the subtree for one connected vertex list; returns its root.
  const auto bfs_layers = [&](int src, const std::vector<char>& in) {
    std::vector<std::vector<int>> layers;
    std::vector<int> dist(static_cast<std::size_t>(n), -1);
    std::vector<int> queue{src};
    dist[static_cast<std::size_t>(src)] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const int v = queue[head];
      const std::size_t d = static_cast<std::size_t>(dist[static_cast<std::size_t>(v)]);
      if (layers.size() <= d) layers.resize(d + 1);
      layers[d].push_back(v);
      for (int u : g.neighbors(v))
        if (in[static_cast<std::size_t>(u)] && dist[static_cast<std::size_t>(u)] == -1) {
          dist[static_cast<std::size_t>(u)] = dist[static_cast<std::size_t>(v)] + 1;
          queue.push_back(u);
        }
    }
    return layers;
  };

  const std::function<int(std::vector<int>)> build = [&](std::vector<int> comp) -> int {
    if (comp.size() == 1) return comp[0];
    std::vector<char> in(static_cast<std::size_t>(n), 0);
    for (int v : comp) in[static_cast<std::size_t>(v)] = 1;

    // Start from a peripheral vertex, then cut at the smallest layer among the
    // middle third; a full BFS layer separates what is before from what is after.
    auto probe = bfs_layers(comp[0], in);
    const auto layers = bfs_layers(probe.back().front(), in);
    const int ecc = static_cast<int>(layers.size()) - 1;
    int cut = (ecc + 1) / 2;
    for (int i = (ecc + 1) / 3; i <= (2 * ecc + 2) / 3 && i <= ecc; ++i)
      if (layers[static_cast<std::size_t>(i)].size() < layers[static_cast<std::size_t>(cut)].size())
        cut = i;
    std::vector<int> chain = layers[static_cast<std::size_t>(cut)];
    std::sort(chain.begin(), chain.end());
    for (std::size_t i = 1; i < chain.size(); ++i)
      f.parent[static_cast<std::size_t>(chain[i])] = chain[i - 1];

    for (int v : chain) in[static_cast<std::size_t>(v)] = 0;
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (int v : comp) {
      if (!in[static_cast<std::size_t>(v)] || seen[static_cast<std::size_t>(v)]) continue;
      std::vector<int> part{v};
      seen[static_cast<std::size_t>(v)] = 1;
      for (std::size_t head = 0; head < part.size(); ++head)
        for (int u : g.neighbors(part[head]))
          if (in[static_cast<std::size_t>(u)] && !seen[static_cast<std::size_t>(u)]) {
            seen[static_cast<std::size_t>(u)] = 1;
            part.push_back(u);
          }
      std::sort(part.begin(), part.end());
      f.parent[static_cast<std::size_t>(build(part))] = chain.back();
    }
    return chain.front();
  };

  for (const auto& comp : g.connected_components()) build(std::vector<int>(comp.begin(), comp.end()));
  return f;
}

// All independent sets of g as bitmasks (n <= 64), the empty set included.
// Throws size_error if their number exceeds the monomial cap.
inline std::vector<std::uint64_t> all_independent_sets(const graph& g, const caps& limits = {}) {
  const auto closed = detail::closed_neighbor_masks(g);
  const int n = g.vertex_count();
  std::vector<std::uint64_t> out;
  const auto rec = [&](std::uint64_t chosen, std::uint64_t cand, auto&& self) -> void {
    if (out.size() >= limits.monomials)
      throw size_error("all_independent_sets: more than " + std::to_string(limits.monomials) +
                       " independent sets");
    out.push_back(chosen);
    while (cand != 0) {
      const int v = std::countr_zero(cand);
      cand &= cand - 1;
      self(chosen | (std::uint64_t{1} << v), cand & ~closed[static_cast<std::size_t>(v)], self);
    }
  };
  const std::uint64_t full = (n >= 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  rec(0, full, rec);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace tropic
