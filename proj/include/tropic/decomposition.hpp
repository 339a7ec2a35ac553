#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "tropic/error.hpp"
#include "tropic/graph.hpp"
#include "tropic/vertex_set.hpp"

namespace tropic {

// Tree decomposition: bags indexed 0..b-1 connected by an undirected tree.
struct tree_decomposition {
  std::vector<vertex_set> bags;
  std::vector<std::pair<int, int>> edges;

  int width() const {
    int w = -1;
    for (const auto& b : bags) w = std::max(w, b.size() - 1);
    return w;
  }
};

// Checks the three decomposition conditions plus tree-ness of the bag graph.
// Returns the width; throws invalid_input naming the violated condition and a
// witness.
inline int validate_tree_decomposition(const graph& g, const tree_decomposition& t) {
  const int n = g.vertex_count();
  const int b = static_cast<int>(t.bags.size());
  if (b == 0 && n > 0) throw invalid_input("tree decomposition: no bags but graph is non-empty");

  for (const auto& bag : t.bags)
    for (int v : bag)
      if (v < 0 || v >= n)
        throw invalid_input("tree decomposition: bag vertex " + std::to_string(v) +
                            " out of range");

  // Tree-ness: b-1 edges and connected.
  if (b > 0) {
    if (static_cast<int>(t.edges.size()) != b - 1)
      throw invalid_input("tree decomposition: bag graph has " +
                          std::to_string(t.edges.size()) + " edges, expected " +
                          std::to_string(b - 1));
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(b));
    for (const auto& [x, y] : t.edges) {
      if (x < 0 || x >= b || y < 0 || y >= b || x == y)
        throw invalid_input("tree decomposition: bad bag edge (" + std::to_string(x) + "," +
                            std::to_string(y) + ")");
      adj[static_cast<std::size_t>(x)].push_back(y);
      adj[static_cast<std::size_t>(y)].push_back(x);
    }
    std::vector<char> seen(static_cast<std::size_t>(b), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 0;
    while (!stack.empty()) {
      const int x = stack.back();
      stack.pop_back();
      ++reached;
      for (int y : adj[static_cast<std::size_t>(x)])
        if (!seen[static_cast<std::size_t>(y)]) {
          seen[static_cast<std::size_t>(y)] = 1;
          stack.push_back(y);
        }
    }
    if (reached != b) throw invalid_input("tree decomposition: bag graph is disconnected");
  }

  // Vertex coverage, edge coverage, connected occurrence.
  std::vector<std::vector<int>> bags_of(static_cast<std::size_t>(n));
  for (int i = 0; i < b; ++i)
    for (int v : t.bags[static_cast<std::size_t>(i)])
      bags_of[static_cast<std::size_t>(v)].push_back(i);

  for (int v = 0; v < n; ++v)
    if (bags_of[static_cast<std::size_t>(v)].empty())
      throw invalid_input("tree decomposition: vertex " + std::to_string(v) + " is in no bag");

  for (const auto& [u, v] : g.edges()) {
    bool covered = false;
    for (int i : bags_of[static_cast<std::size_t>(u)])
      if (t.bags[static_cast<std::size_t>(i)].contains(v)) {
        covered = true;
        break;
      }
    if (!covered)
      throw invalid_input("tree decomposition: edge (" + std::to_string(u) + "," +
                          std::to_string(v) + ") lies in no bag");
  }

  if (b > 0) {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(b));
    for (const auto& [x, y] : t.edges) {
      adj[static_cast<std::size_t>(x)].push_back(y);
      adj[static_cast<std::size_t>(y)].push_back(x);
    }
    for (int v = 0; v < n; ++v) {
      const auto& occ = bags_of[static_cast<std::size_t>(v)];
      std::vector<char> in_occ(static_cast<std::size_t>(b), 0);
      for (int i : occ) in_occ[static_cast<std::size_t>(i)] = 1;
      std::vector<char> seen(static_cast<std::size_t>(b), 0);
      std::vector<int> stack{occ.front()};
      seen[static_cast<std::size_t>(occ.front())] = 1;
      int reached = 0;
      while (!stack.empty()) {
        const int x = stack.back();
        stack.pop_back();
        ++reached;
        for (int y : adj[static_cast<std::size_t>(x)])
          if (in_occ[static_cast<std::size_t>(y)] && !seen[static_cast<std::size_t>(y)]) {
            seen[static_cast<std::size_t>(y)] = 1;
            stack.push_back(y);
          }
      }
      if (reached != static_cast<int>(occ.size()))
        throw invalid_input("tree decomposition: bags containing vertex " + std::to_string(v) +
                            " do not form a subtree");
    }
  }

  return t.width();
}

// Treedepth decomposition: a forest over the graph's vertices given by parent
// pointers (-1 marks roots).
struct treedepth_forest {
  std::vector<int> parent;

  int vertex_count() const { return static_cast<int>(parent.size()); }

  std::vector<int> roots() const {
    std::vector<int> r;
    for (int v = 0; v < vertex_count(); ++v)
      if (parent[static_cast<std::size_t>(v)] == -1) r.push_back(v);
    return r;
  }

  std::vector<std::vector<int>> children() const {
    std::vector<std::vector<int>> ch(parent.size());
    for (int v = 0; v < vertex_count(); ++v) {
      const int p = parent[static_cast<std::size_t>(v)];
      if (p >= 0) ch[static_cast<std::size_t>(p)].push_back(v);
    }
    return ch;
  }
};

// Checks forest shape and the ancestor-descendant edge condition; returns the
// depth (vertices on the longest root-to-leaf path).
inline int validate_treedepth_forest(const graph& g, const treedepth_forest& f) {
  const int n = g.vertex_count();
  if (f.vertex_count() != n)
    throw invalid_input("treedepth forest: has " + std::to_string(f.vertex_count()) +
                        " vertices, graph has " + std::to_string(n));

  std::vector<int> depth(static_cast<std::size_t>(n), 0);
  for (int v = 0; v < n; ++v) {
    // Walk to the root; a walk longer than n vertices means a parent cycle.
    int steps = 0;
    int x = v;
    while (x != -1) {
      const int p = f.parent[static_cast<std::size_t>(x)];
      if (p < -1 || p >= n)
        throw invalid_input("treedepth forest: parent of " + std::to_string(x) +
                            " out of range");
      x = p;
      if (++steps > n)
        throw invalid_input("treedepth forest: parent cycle through vertex " +
                            std::to_string(v));
    }
    depth[static_cast<std::size_t>(v)] = steps;
  }

  const auto is_ancestor = [&](int a, int d) {
    int x = d;
    while (x != -1) {
      if (x == a) return true;
      x = f.parent[static_cast<std::size_t>(x)];
    }
    return false;
  };
  for (const auto& [u, v] : g.edges())
    if (!is_ancestor(u, v) && !is_ancestor(v, u))
      throw invalid_input("treedepth forest: edge (" + std::to_string(u) + "," +
                          std::to_string(v) + ") joins unrelated vertices");

  int d = 0;
  for (int v = 0; v < n; ++v) d = std::max(d, depth[static_cast<std::size_t>(v)]);
  return d;
}

}  // namespace tropic
