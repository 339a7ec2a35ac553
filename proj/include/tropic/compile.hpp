#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "tropic/circuit.hpp"
#include "tropic/config.hpp"
#include "tropic/decomposition.hpp"
#include "tropic/error.hpp"
#include "tropic/generators.hpp"
#include "tropic/graph.hpp"
#include "tropic/vertex_set.hpp"

namespace tropic {
namespace detail {

inline bool cluster_is_clique(const graph& g, const vertex_set& c) {
  for (int u : c)
    for (int v : c)
      if (u < v && !g.adjacent(u, v)) return false;
  return true;
}

inline bool clusters_fully_joined(const graph& g, const vertex_set& a, const vertex_set& b) {
  for (int u : a)
    for (int v : b)
      if (!g.adjacent(u, v)) return false;
  return true;
}

// Nice-form decomposition node. Children precede parents in the node vector.
struct nice_node {
  enum kind_t { leaf, introduce, forget, join } kind = leaf;
  vertex_set bag;
  int vertex = -1;  // the vertex introduced or forgotten
  int child = -1;
  int child2 = -1;
};

struct nice_tree {
  std::vector<nice_node> nodes;
  int top = -1;  // bag of the top node is empty

  int add(nice_node n) {
    nodes.push_back(std::move(n));
    return static_cast<int>(nodes.size()) - 1;
  }
};

// Forget bag∖target ascending, then introduce target∖bag ascending.
inline int nice_morph(nice_tree& t, int below, const vertex_set& target) {
  vertex_set cur = t.nodes[static_cast<std::size_t>(below)].bag;
  int node = below;
  for (int v : cur.difference(target)) {
    vertex_set next = cur;
    next.erase(v);
    node = t.add({nice_node::forget, next, v, node, -1});
    cur = std::move(next);
  }
  for (int v : target.difference(cur)) {
    vertex_set next = cur;
    next.insert(v);
    node = t.add({nice_node::introduce, next, v, node, -1});
    cur = std::move(next);
  }
  return node;
}

// Roots the decomposition at bag 0 and refines it to leaf/introduce/forget/join
// nodes whose top bag is empty.
inline nice_tree make_nice(const tree_decomposition& td) {
  const int b = static_cast<int>(td.bags.size());
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(b));
  for (const auto& [x, y] : td.edges) {
    adj[static_cast<std::size_t>(x)].push_back(y);
    adj[static_cast<std::size_t>(y)].push_back(x);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());

  nice_tree t;
  const std::function<int(int, int)> build = [&](int i, int parent) -> int {
    std::vector<int> parts;
    for (int c : adj[static_cast<std::size_t>(i)]) {
      if (c == parent) continue;
      parts.push_back(nice_morph(t, build(c, i), td.bags[static_cast<std::size_t>(i)]));
    }
    if (parts.empty()) {
      int node = t.add({nice_node::leaf, vertex_set{}, -1, -1, -1});
      return nice_morph(t, node, td.bags[static_cast<std::size_t>(i)]);
    }
    int node = parts[0];
    for (std::size_t k = 1; k < parts.size(); ++k)
      node = t.add({nice_node::join, td.bags[static_cast<std::size_t>(i)], -1, node,
                    parts[k]});
    return node;
  };
  t.top = nice_morph(t, build(0, -1), vertex_set{});
  return t;
}

}  // namespace detail

// Dynamic program over a tree decomposition. Each cell holds, for one node and
// one independent subset s of its bag, a gate whose monomials are the sets
// J ⊆ (vertices seen below)∖bag with J ∪ s independent; a vertex's weight is
// added at its unique forget node. The empty top bag then yields a gate whose
// monomials are exactly the independent sets of g.
inline circuit compile_treewidth(const graph& g, const tree_decomposition& td) {
  validate_tree_decomposition(g, td);
  if (td.width() + 1 > 25)
    throw size_error("compile_treewidth: width " + std::to_string(td.width()) +
                     " is past the 2^|bag| table limit");
  const detail::nice_tree nice = detail::make_nice(td);

  circuit_builder b;
  std::vector<int> var_gate(static_cast<std::size_t>(g.vertex_count()), -1);
  const auto var = [&](int v) {
    int& id = var_gate[static_cast<std::size_t>(v)];
    if (id == -1) id = b.add_variable(v);
    return id;
  };

  // cells[node][mask] = gate id, -1 where mask is not independent in the bag.
  std::vector<std::vector<int>> cells(nice.nodes.size());
  for (std::size_t idx = 0; idx < nice.nodes.size(); ++idx) {
    const detail::nice_node& node = nice.nodes[idx];
    const std::vector<int> bag(node.bag.begin(), node.bag.end());
    const int k = static_cast<int>(bag.size());

    std::vector<std::uint32_t> conflict(bag.size(), 0);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        if (i != j && g.adjacent(bag[static_cast<std::size_t>(i)],
                                 bag[static_cast<std::size_t>(j)]))
          conflict[static_cast<std::size_t>(i)] |= std::uint32_t{1} << j;

    // Position of the introduced or forgotten vertex in the child's bag, and a
    // map from this bag's positions to child positions.
    const auto child_bag = [&](int c) {
      const vertex_set& cb = nice.nodes[static_cast<std::size_t>(c)].bag;
      return std::vector<int>(cb.begin(), cb.end());
    };

    std::vector<int> table(std::size_t{1} << k, -1);
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << k); ++mask) {
      bool independent = true;
      for (int i = 0; i < k && independent; ++i)
        if ((mask >> i & 1u) && (mask & conflict[static_cast<std::size_t>(i)]))
          independent = false;
      if (!independent) continue;

      int gate_id = -1;
      switch (node.kind) {
        case detail::nice_node::leaf:
          gate_id = b.add_zero();
          break;
        case detail::nice_node::introduce: {
          // The introduced vertex has no edges to vertices forgotten below, so
          // the child cell without it already computes the same monomials.
          const std::vector<int> cb = child_bag(node.child);
          std::uint32_t cmask = 0;
          for (std::size_t i = 0; i < cb.size(); ++i)
            if (node.bag.contains(cb[i]) &&
                (mask >> (std::lower_bound(bag.begin(), bag.end(), cb[i]) - bag.begin()) & 1u))
              cmask |= std::uint32_t{1} << i;
          gate_id = cells[static_cast<std::size_t>(node.child)][cmask];
          break;
        }
        case detail::nice_node::forget: {
          const std::vector<int> cb = child_bag(node.child);
          std::uint32_t cmask = 0;
          for (int i = 0; i < k; ++i)
            if (mask >> i & 1u)
              cmask |= std::uint32_t{1}
                       << (std::lower_bound(cb.begin(), cb.end(), bag[static_cast<std::size_t>(i)]) -
                           cb.begin());
          const std::size_t vpos = static_cast<std::size_t>(
              std::lower_bound(cb.begin(), cb.end(), node.vertex) - cb.begin());
          const int without = cells[static_cast<std::size_t>(node.child)][cmask];
          const int with =
              cells[static_cast<std::size_t>(node.child)][cmask | (std::uint32_t{1} << vpos)];
          gate_id = with == -1 ? without : b.add_max(without, b.add_plus(with, var(node.vertex)));
          break;
        }
        case detail::nice_node::join:
          // Both sides carry the same bag; their below-vertices are disjoint
          // and non-adjacent, so the product's monomials stay independent.
          gate_id = b.add_plus(cells[static_cast<std::size_t>(node.child)][mask],
                               cells[static_cast<std::size_t>(node.child2)][mask]);
          break;
      }
      table[mask] = gate_id;
    }
    cells[idx] = std::move(table);
  }

  return b.finish(cells[static_cast<std::size_t>(nice.top)][0]);
}

namespace detail {

// Euler intervals for descendant tests on a treedepth forest.
struct forest_tour {
  std::vector<int> tin, tout;

  explicit forest_tour(const treedepth_forest& f) {
    const int n = f.vertex_count();
    tin.assign(static_cast<std::size_t>(n), 0);
    tout.assign(static_cast<std::size_t>(n), 0);
    const auto ch = f.children();
    int clock = 0;
    const std::function<void(int)> dfs = [&](int v) {
      tin[static_cast<std::size_t>(v)] = clock++;
      for (int c : ch[static_cast<std::size_t>(v)]) dfs(c);
      tout[static_cast<std::size_t>(v)] = clock;
    };
    for (int r : f.roots()) dfs(r);
  }

  bool in_subtree(int v, int root) const {
    return tin[static_cast<std::size_t>(root)] <= tin[static_cast<std::size_t>(v)] &&
           tin[static_cast<std::size_t>(v)] < tout[static_cast<std::size_t>(root)];
  }
};

}  // namespace detail

// Formula built by recursing down a treedepth forest. Each call carries the
// chosen ancestors that still have a neighbor inside the current subtree; a
// vertex adjacent to a chosen ancestor loses its include branch, which keeps
// every monomial independent and keeps plus-gate supports disjoint from the
// closed neighborhoods on the other side.
inline circuit compile_treedepth(const graph& g, const treedepth_forest& f) {
  validate_treedepth_forest(g, f);
  const detail::forest_tour tour(f);
  const auto ch = f.children();
  circuit_builder b;

  const auto prune = [&](const std::vector<int>& chosen, int sub) {
    std::vector<int> kept;
    for (int u : chosen)
      for (int w : g.neighbors(u))
        if (tour.in_subtree(w, sub)) {
          kept.push_back(u);
          break;
        }
    return kept;
  };

  const std::function<int(int, const std::vector<int>&)> build =
      [&](int v, const std::vector<int>& chosen) -> int {
    bool blocked = false;
    for (int u : chosen)
      if (g.adjacent(u, v)) blocked = true;

    std::vector<int> parts;
    for (int c : ch[static_cast<std::size_t>(v)]) parts.push_back(build(c, prune(chosen, c)));
    const int exclude = b.add_plus_of(parts);
    if (blocked) return exclude;

    std::vector<int> with = chosen;
    with.insert(std::lower_bound(with.begin(), with.end(), v), v);
    std::vector<int> incl_parts{b.add_variable(v)};
    for (int c : ch[static_cast<std::size_t>(v)]) incl_parts.push_back(build(c, prune(with, c)));
    return b.add_max(exclude, b.add_plus_of(incl_parts));
  };

  std::vector<int> parts;
  for (int r : f.roots()) parts.push_back(build(r, {}));
  return b.finish(b.add_plus_of(parts));
}

namespace detail {

// Branch-and-recurse formula over a vertex subset given as a bitmask. The
// leaf emitter supplies the gate standing for a single chosen vertex.
inline int brute_formula(circuit_builder& b, const std::vector<std::uint64_t>& closed,
                         std::uint64_t alive,
                         const std::function<int(circuit_builder&, int)>& leaf) {
  if (alive == 0) return b.add_zero();

  // Split into connected components, lowest vertex first.
  std::vector<std::uint64_t> comps;
  std::uint64_t left = alive;
  while (left) {
    std::uint64_t comp = std::uint64_t{1} << std::countr_zero(left);
    for (;;) {
      std::uint64_t grown = comp;
      std::uint64_t scan = comp;
      while (scan) {
        const int v = std::countr_zero(scan);
        scan &= scan - 1;
        grown |= closed[static_cast<std::size_t>(v)] & alive;
      }
      if (grown == comp) break;
      comp = grown;
    }
    comps.push_back(comp);
    left &= ~comp;
  }
  if (comps.size() > 1) {
    std::vector<int> parts;
    for (std::uint64_t comp : comps) parts.push_back(brute_formula(b, closed, comp, leaf));
    return b.add_plus_of(parts);
  }

  // Connected: branch on a highest-degree vertex (ties to the lowest id).
  int best = -1;
  int best_deg = -1;
  std::uint64_t scan = alive;
  while (scan) {
    const int v = std::countr_zero(scan);
    scan &= scan - 1;
    const int deg = std::popcount(closed[static_cast<std::size_t>(v)] & alive) - 1;
    if (deg > best_deg) {
      best_deg = deg;
      best = v;
    }
  }
  const int without = brute_formula(b, closed, alive & ~(std::uint64_t{1} << best), leaf);
  const std::uint64_t inner = alive & ~closed[static_cast<std::size_t>(best)];
  const int chosen = leaf(b, best);
  const int with = inner ? b.add_plus(chosen, brute_formula(b, closed, inner, leaf)) : chosen;
  return b.add_max(without, with);
}

inline circuit brute_compile(const graph& g, int limit,
                             const std::function<int(circuit_builder&, int)>& leaf) {
  const int n = g.vertex_count();
  if (n > limit)
    throw size_error("brute-force compile: " + std::to_string(n) + " vertices is past the cap " +
                     std::to_string(limit));
  const auto closed = detail::closed_neighbor_masks(g);
  circuit_builder b;
  const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  return b.finish(detail::brute_formula(b, closed, all, leaf));
}

}  // namespace detail

// Exhaustive include/exclude branching; exponential, for small graphs only.
inline circuit compile_bruteforce(const graph& g, const caps& limits = {}) {
  return detail::brute_compile(g, limits.brute_compile,
                               [](circuit_builder& b, int v) { return b.add_variable(v); });
}

// Formula for a blown-up pattern: brute-force over the pattern with each leaf
// replaced by a max over the corresponding clique's vertices. At most one
// vertex per clique can be in an independent set of the host, so the monomials
// are exactly the host's independent sets.
inline circuit compile_cluster_expander(const cluster_expander& ce, const caps& limits = {}) {
  validate_induced_minor_model(ce.host, ce.model);
  for (const auto& [u, v] : ce.model.pattern.edges())
    if (!ce.model.clusters[static_cast<std::size_t>(u)].empty() &&
        !ce.model.clusters[static_cast<std::size_t>(v)].empty() &&
        !detail::clusters_fully_joined(ce.host, ce.model.clusters[static_cast<std::size_t>(u)],
                                       ce.model.clusters[static_cast<std::size_t>(v)]))
      throw invalid_input("compile_cluster_expander: clusters " + std::to_string(u) + " and " +
                          std::to_string(v) + " are not fully joined");
  for (std::size_t i = 0; i < ce.model.clusters.size(); ++i)
    if (!detail::cluster_is_clique(ce.host, ce.model.clusters[i]))
      throw invalid_input("compile_cluster_expander: cluster " + std::to_string(i) +
                          " is not a clique");

  return detail::brute_compile(
      ce.model.pattern, limits.brute_compile, [&](circuit_builder& b, int v) {
        std::vector<int> vars;
        for (int u : ce.model.clusters[static_cast<std::size_t>(v)]) vars.push_back(b.add_variable(u));
        return b.add_max_of(vars);
      });
}

}  // namespace tropic
