#pragma once

#include <algorithm>
#include <deque>
#include <string>
#include <vector>

#include "tropic/error.hpp"
#include "tropic/graph.hpp"
#include "tropic/vertex_set.hpp"

namespace tropic {

// Induced minor model: pattern vertex i maps onto host cluster clusters[i].
struct induced_minor_model {
  graph pattern;
  std::vector<vertex_set> clusters;
};

struct model_check {
  bool ok = true;
  std::string why;
};

// Disjoint nonempty connected clusters; pattern adjacency iff host adjacency
// between the clusters.
inline model_check check_induced_minor_model(const graph& g, const induced_minor_model& m) {
  const int h = m.pattern.vertex_count();
  if (static_cast<int>(m.clusters.size()) != h)
    return {false, "model: " + std::to_string(m.clusters.size()) + " clusters for " +
                       std::to_string(h) + " pattern vertices"};

  std::vector<int> owner(static_cast<std::size_t>(g.vertex_count()), -1);
  for (int i = 0; i < h; ++i) {
    const auto& c = m.clusters[static_cast<std::size_t>(i)];
    if (c.empty()) return {false, "model: cluster " + std::to_string(i) + " is empty"};
    for (int v : c) {
      if (v < 0 || v >= g.vertex_count())
        return {false, "model: cluster " + std::to_string(i) + " leaves the host graph"};
      if (owner[static_cast<std::size_t>(v)] != -1)
        return {false, "model: clusters " + std::to_string(owner[static_cast<std::size_t>(v)]) +
                           " and " + std::to_string(i) + " share vertex " + std::to_string(v)};
      owner[static_cast<std::size_t>(v)] = i;
    }
    if (!g.induced(c).connected())
      return {false, "model: cluster " + std::to_string(i) + " is disconnected"};
  }

  for (int i = 0; i < h; ++i)
    for (int j = i + 1; j < h; ++j) {
      bool touching = false;
      for (int v : m.clusters[static_cast<std::size_t>(i)]) {
        for (int u : g.neighbors(v))
          if (m.clusters[static_cast<std::size_t>(j)].contains(u)) {
            touching = true;
            break;
          }
        if (touching) break;
      }
      if (touching != m.pattern.adjacent(i, j))
        return {false, "model: clusters " + std::to_string(i) + " and " + std::to_string(j) +
                           (touching ? " touch but the pattern lacks the edge"
                                     : " are apart but the pattern has the edge")};
    }
  return {};
}

inline void validate_induced_minor_model(const graph& g, const induced_minor_model& m) {
  const auto r = check_induced_minor_model(g, m);
  if (!r.ok) throw invalid_input(r.why);
}

namespace detail {

// One BFS shortest path from `from` to `to` inside `cluster`, parents chosen
// lowest-id first so the path is deterministic.
inline std::vector<int> cluster_shortest_path(const graph& g, const vertex_set& cluster, int from,
                                              int to) {
  std::vector<int> parent(static_cast<std::size_t>(g.vertex_count()), -2);
  for (int v : cluster) parent[static_cast<std::size_t>(v)] = -1;
  std::deque<int> queue{from};
  parent[static_cast<std::size_t>(from)] = from;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    if (v == to) break;
    for (int u : g.neighbors(v))
      if (parent[static_cast<std::size_t>(u)] == -1) {
        parent[static_cast<std::size_t>(u)] = v;
        queue.push_back(u);
      }
  }
  std::vector<int> path;
  int x = to;
  while (x != from) {
    path.push_back(x);
    x = parent[static_cast<std::size_t>(x)];
  }
  path.push_back(from);
  return path;
}

}  // namespace detail

// Rebuilds the model so every cluster has internal degree at most the pattern
// max degree d.  Per cluster: anchor one terminal pair per realized pattern
// edge (lexicographically least adjacent pair, least endpoint first), then
// repeatedly strip the non-path neighbors of the lowest over-degree vertex and
// keep its component.  Clusters of isolated pattern vertices shrink to their
// least vertex.  Already-low-degree models come back unchanged.
inline induced_minor_model low_degree_minor_model(const graph& g, induced_minor_model model) {
  validate_induced_minor_model(g, model);
  const int h = model.pattern.vertex_count();
  const int d = std::max(1, model.pattern.max_degree());

  // Terminals per cluster, anchored in adjacent pairs so pruning can never
  // un-realize a pattern edge.
  std::vector<vertex_set> terminals(static_cast<std::size_t>(h));
  for (int a = 0; a < h; ++a)
    for (int b : model.pattern.neighbors(a)) {
      if (b < a) continue;
      int ta = -1;
      for (int v : model.clusters[static_cast<std::size_t>(a)]) {
        for (int u : g.neighbors(v))
          if (model.clusters[static_cast<std::size_t>(b)].contains(u)) {
            ta = v;
            break;
          }
        if (ta != -1) break;
      }
      int tb = -1;
      for (int u : g.neighbors(ta))
        if (model.clusters[static_cast<std::size_t>(b)].contains(u)) {
          tb = std::min(tb == -1 ? u : tb, u);
        }
      terminals[static_cast<std::size_t>(a)].insert(ta);
      terminals[static_cast<std::size_t>(b)].insert(tb);
    }

  for (int i = 0; i < h; ++i) {
    auto& cluster = model.clusters[static_cast<std::size_t>(i)];
    const auto& terms = terminals[static_cast<std::size_t>(i)];
    const auto internal_degree = [&](int v) {
      int deg = 0;
      for (int u : g.neighbors(v))
        if (cluster.contains(u)) ++deg;
      return deg;
    };
    if (terms.empty()) {
      // Isolated pattern vertex: nothing to preserve, so an over-degree
      // cluster shrinks to its least vertex.
      const bool over = std::any_of(cluster.begin(), cluster.end(),
                                    [&](int v) { return internal_degree(v) > d; });
      if (over) cluster = vertex_set{*cluster.begin()};
      continue;
    }
    for (;;) {
      int over = -1;
      for (int v : cluster)
        if (internal_degree(v) > d) {
          over = v;
          break;
        }
      if (over == -1) break;
      vertex_set keep;
      for (int t : terms)
        for (int v : detail::cluster_shortest_path(g, cluster, over, t)) keep.insert(v);
      vertex_set next = cluster;
      for (int u : g.neighbors(over))
        if (cluster.contains(u) && !keep.contains(u)) next.erase(u);
      // Keep only the component of the over-degree vertex; the kept paths tie
      // all terminals to it.
      const auto comps = g.induced(next).connected_components();
      const auto& ids = next.values();
      for (const auto& comp : comps) {
        std::vector<int> orig;
        for (int local : comp) orig.push_back(ids[static_cast<std::size_t>(local)]);
        vertex_set candidate{std::move(orig)};
        if (candidate.contains(over)) {
          cluster = std::move(candidate);
          break;
        }
      }
    }
  }

  validate_induced_minor_model(g, model);
  return model;
}

}  // namespace tropic
