#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tropic/config.hpp"
#include "tropic/error.hpp"
#include "tropic/graph.hpp"
#include "tropic/io.hpp"
#include "tropic/minor.hpp"
#include "tropic/rng.hpp"
#include "tropic/vertex_set.hpp"

namespace tropic {

// p = 0 means derive the textbook value from the instance: 1/(2d) for plain
// hitting, 1/(4d·2^d) for the cluster experiment, with d the relevant maximum
// degree (at least 1).
struct hitting_params {
  double p = 0;
  long long resample_cap = 1'000'000;
  std::uint64_t seed = 0;
};

struct hit_result {
  bool found = false;
  vertex_set hitter;
  long long resamples = 0;
};

// 6|F| ≤ e^{k/(6d)} with k the smallest member size; when it holds, an
// independent set hitting every member exists. The analysis constants are
// reported for inspection, the algorithms do not consume them.
struct precondition_report {
  bool ok = false;
  int d = 1;
  int k = 0;
  std::size_t family_size = 0;
  long double lhs = 0;  // 6|F|
  long double rhs = 1;  // e^{k/(6d)}
  long double p = 0;
  long double x_e = 0;
  long double x_a = 0;
};

namespace detail {

inline void require_family(const graph& g, const set_family& family, const char* who) {
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (family[i].empty())
      throw invalid_input(std::string(who) + ": member " + std::to_string(i) + " is empty");
    for (int v : family[i])
      if (v < 0 || v >= g.vertex_count())
        throw invalid_input(std::string(who) + ": member " + std::to_string(i) +
                            " mentions vertex " + std::to_string(v) + " outside the graph");
  }
}

}  // namespace detail

inline precondition_report check_lll_precondition(const graph& g, const set_family& family) {
  detail::require_family(g, family, "check_lll_precondition");
  precondition_report r;
  r.d = std::max(1, g.max_degree());
  r.family_size = family.size();
  r.k = 0;
  for (const auto& s : family)
    r.k = (r.k == 0) ? s.size() : std::min(r.k, s.size());
  r.lhs = 6.0L * static_cast<long double>(family.size());
  r.rhs = std::exp(static_cast<long double>(r.k) / (6.0L * r.d));
  r.ok = r.lhs <= r.rhs;
  r.p = 1.0L / (2.0L * r.d);
  r.x_e = 1.0L / (3.0L * r.d * r.d + 1.0L);
  r.x_a = 1.0L / (5.0L * static_cast<long double>(family.size()) + 1.0L);
  return r;
}

// Resampling search for an independent set meeting every family member. Each
// vertex joins with probability p; the bad events are edges with both ends in
// (indexed first) and members missed (indexed after), and the lowest violated
// event has its vertices redrawn. Success is revalidated before returning; a
// capped run without success is a failure, not a nonexistence proof.
inline hit_result hit_family_moser_tardos(const graph& g, const set_family& family,
                                          const hitting_params& params = {}) {
  detail::require_family(g, family, "hit_family_moser_tardos");
  const int n = g.vertex_count();
  const int d = std::max(1, g.max_degree());
  const double p = params.p > 0 ? params.p : 1.0 / (2.0 * d);
  rng r(mix_seed(params.seed, 0x4a11));

  std::vector<char> in(static_cast<std::size_t>(n), 0);
  for (int v = 0; v < n; ++v) in[static_cast<std::size_t>(v)] = r.bernoulli(p) ? 1 : 0;
  const auto edges = g.edges();

  hit_result out;
  while (out.resamples <= params.resample_cap) {
    int violated_edge = -1;
    for (std::size_t e = 0; e < edges.size(); ++e)
      if (in[static_cast<std::size_t>(edges[e].first)] &&
          in[static_cast<std::size_t>(edges[e].second)]) {
        violated_edge = static_cast<int>(e);
        break;
      }
    if (violated_edge >= 0) {
      ++out.resamples;
      in[static_cast<std::size_t>(edges[static_cast<std::size_t>(violated_edge)].first)] =
          r.bernoulli(p) ? 1 : 0;
      in[static_cast<std::size_t>(edges[static_cast<std::size_t>(violated_edge)].second)] =
          r.bernoulli(p) ? 1 : 0;
      continue;
    }
    int violated_set = -1;
    for (std::size_t i = 0; i < family.size(); ++i) {
      bool hit = false;
      for (int v : family[i])
        if (in[static_cast<std::size_t>(v)]) {
          hit = true;
          break;
        }
      if (!hit) {
        violated_set = static_cast<int>(i);
        break;
      }
    }
    if (violated_set >= 0) {
      ++out.resamples;
      for (int v : family[static_cast<std::size_t>(violated_set)])
        in[static_cast<std::size_t>(v)] = r.bernoulli(p) ? 1 : 0;
      continue;
    }

    std::vector<int> xs;
    for (int v = 0; v < n; ++v)
      if (in[static_cast<std::size_t>(v)]) xs.push_back(v);
    out.hitter = vertex_set{std::move(xs)};
    // Independent validation; the sampler's own exit condition is not trusted.
    if (!g.is_independent_set(out.hitter)) break;
    bool all_hit = true;
    for (const auto& s : family) all_hit = all_hit && s.intersects(out.hitter);
    if (!all_hit) break;
    out.found = true;
    return out;
  }
  out.found = false;
  out.hitter = vertex_set{};
  return out;
}

// Exhaustive branching on the lowest-index unmet member; a vertex tried and
// rejected is banned from later branches of the same node, so the search space
// is a partition and "none" proves no independent hitter exists.
inline std::optional<vertex_set> hit_family_exact(const graph& g, const set_family& family,
                                                  const caps& limits = {}) {
  detail::require_family(g, family, "hit_family_exact");
  const int n = g.vertex_count();
  if (n > limits.hit_exact)
    throw size_error("hit_family_exact: " + std::to_string(n) + " vertices is past the cap " +
                     std::to_string(limits.hit_exact));
  const auto closed = detail::closed_neighbor_masks(g);
  std::vector<std::uint64_t> members;
  members.reserve(family.size());
  for (const auto& s : family) members.push_back(detail::set_to_mask(s));

  const auto search = [&](std::uint64_t chosen, std::uint64_t banned,
                          auto&& self) -> std::optional<std::uint64_t> {
    std::uint64_t unmet = 0;
    bool found_unmet = false;
    for (std::uint64_t m : members)
      if ((m & chosen) == 0) {
        unmet = m;
        found_unmet = true;
        break;
      }
    if (!found_unmet) return chosen;
    std::uint64_t avail = unmet & ~banned;
    while (avail) {
      const int v = std::countr_zero(avail);
      avail &= avail - 1;
      const auto res =
          self(chosen | (std::uint64_t{1} << v), banned | closed[static_cast<std::size_t>(v)], self);
      if (res) return res;
      banned |= std::uint64_t{1} << v;
    }
    return std::nullopt;
  };
  const auto res = search(0, 0, search);
  if (!res) return std::nullopt;
  return detail::mask_to_set(*res);
}

namespace detail {

// Count-then-sample over one component mask; exact uniformity over all
// independent sets, the empty one included.
inline std::uint64_t count_is(const std::vector<std::uint64_t>& closed, std::uint64_t alive) {
  if (alive == 0) return 1;
  const int v = std::countr_zero(alive);
  int best = v;
  int best_deg = std::popcount(closed[static_cast<std::size_t>(v)] & alive) - 1;
  std::uint64_t scan = alive & (alive - 1);
  while (scan) {
    const int u = std::countr_zero(scan);
    scan &= scan - 1;
    const int deg = std::popcount(closed[static_cast<std::size_t>(u)] & alive) - 1;
    if (deg > best_deg) {
      best_deg = deg;
      best = u;
    }
  }
  return count_is(closed, alive & ~(std::uint64_t{1} << best)) +
         count_is(closed, alive & ~closed[static_cast<std::size_t>(best)]);
}

inline std::uint64_t sample_is(const std::vector<std::uint64_t>& closed, std::uint64_t alive,
                               rng& r) {
  if (alive == 0) return 0;
  const int v = std::countr_zero(alive);
  int best = v;
  int best_deg = std::popcount(closed[static_cast<std::size_t>(v)] & alive) - 1;
  std::uint64_t scan = alive & (alive - 1);
  while (scan) {
    const int u = std::countr_zero(scan);
    scan &= scan - 1;
    const int deg = std::popcount(closed[static_cast<std::size_t>(u)] & alive) - 1;
    if (deg > best_deg) {
      best_deg = deg;
      best = u;
    }
  }
  const std::uint64_t without = alive & ~(std::uint64_t{1} << best);
  const std::uint64_t inner = alive & ~closed[static_cast<std::size_t>(best)];
  const std::uint64_t c_ex = count_is(closed, without);
  const std::uint64_t c_in = count_is(closed, inner);
  if (r.below(c_ex + c_in) < c_ex) return sample_is(closed, without, r);
  return (std::uint64_t{1} << best) | sample_is(closed, inner, r);
}

}  // namespace detail

// Uniform draw over all independent sets of g, component by component.
inline vertex_set uniform_independent_set(const graph& g, std::uint64_t seed,
                                          const caps& limits = {}) {
  rng r(mix_seed(seed, 0x15a3));
  vertex_set out;
  for (const auto& comp : g.connected_components()) {
    if (comp.size() > limits.uniform_sample)
      throw size_error("uniform_independent_set: component of " + std::to_string(comp.size()) +
                       " vertices is past the cap " + std::to_string(limits.uniform_sample));
    std::vector<int> original;
    const graph sub = g.induced(comp, &original);
    const auto closed = detail::closed_neighbor_masks(sub);
    const std::uint64_t all =
        comp.size() >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << comp.size()) - 1;
    std::uint64_t mask = detail::sample_is(closed, all, r);
    while (mask) {
      const int v = std::countr_zero(mask);
      mask &= mask - 1;
      out.insert(original[static_cast<std::size_t>(v)]);
    }
  }
  return out;
}

// Rewrites each member to live on the clusters: non-cluster vertices drop out
// and each intersected cluster is represented by its least member vertex.
// Members left empty cannot be hit through the clusters and are flagged.
struct normalized_family {
  set_family members;                     // aligned with the input family
  std::vector<int> clusters_intersected;  // per member
  std::vector<std::size_t> empty_members;
};

inline normalized_family family_normalize(const graph& g, const induced_minor_model& model,
                                          const set_family& family) {
  detail::require_family(g, family, "family_normalize");
  std::vector<int> owner(static_cast<std::size_t>(g.vertex_count()), -1);
  for (std::size_t i = 0; i < model.clusters.size(); ++i)
    for (int v : model.clusters[i]) owner[static_cast<std::size_t>(v)] = static_cast<int>(i);

  normalized_family out;
  for (std::size_t i = 0; i < family.size(); ++i) {
    std::vector<int> kept;
    std::vector<char> seen(model.clusters.size(), 0);
    for (int v : family[i]) {  // ascending, so the first hit per cluster is the least
      const int c = owner[static_cast<std::size_t>(v)];
      if (c < 0 || seen[static_cast<std::size_t>(c)]) continue;
      seen[static_cast<std::size_t>(c)] = 1;
      kept.push_back(v);
    }
    out.clusters_intersected.push_back(static_cast<int>(kept.size()));
    if (kept.empty()) out.empty_members.push_back(i);
    out.members.emplace_back(std::move(kept));
  }
  return out;
}

// Two-stage resampling on a minor model: each cluster is selected with
// probability p and a uniform independent set is drawn inside it; the chosen
// union must be independent and meet every member. Members must carry at most
// one vertex per cluster and no vertex outside the clusters (family_normalize
// produces this shape). Conflict events between adjacent clusters are indexed
// before the member events; the lowest violated event has its clusters redrawn.
inline hit_result hit_clusters(const graph& g, const induced_minor_model& model,
                               const set_family& family, const hitting_params& params = {},
                               const caps& limits = {}) {
  validate_induced_minor_model(g, model);
  detail::require_family(g, family, "hit_clusters");
  const std::size_t t = model.clusters.size();

  std::vector<int> owner(static_cast<std::size_t>(g.vertex_count()), -1);
  for (std::size_t i = 0; i < t; ++i)
    for (int v : model.clusters[i]) owner[static_cast<std::size_t>(v)] = static_cast<int>(i);
  for (std::size_t i = 0; i < family.size(); ++i) {
    std::vector<char> seen(t, 0);
    for (int v : family[i]) {
      const int c = owner[static_cast<std::size_t>(v)];
      if (c < 0)
        throw invalid_input("hit_clusters: member " + std::to_string(i) + " holds vertex " +
                            std::to_string(v) + " outside every cluster");
      if (seen[static_cast<std::size_t>(c)])
        throw invalid_input("hit_clusters: member " + std::to_string(i) +
                            " holds two vertices of cluster " + std::to_string(c) +
                            "; run family_normalize first");
      seen[static_cast<std::size_t>(c)] = 1;
    }
  }

  // Cluster-local samplers and the degree bound d over the cluster subgraphs.
  std::vector<graph> subs;
  std::vector<std::vector<int>> originals(t);
  std::vector<std::vector<std::uint64_t>> closed(t);
  int d = 1;
  for (std::size_t i = 0; i < t; ++i) {
    if (model.clusters[i].size() > limits.uniform_sample)
      throw size_error("hit_clusters: cluster " + std::to_string(i) + " is past the cap " +
                       std::to_string(limits.uniform_sample));
    subs.push_back(g.induced(model.clusters[i], &originals[i]));
    closed[i] = detail::closed_neighbor_masks(subs[i]);
    d = std::max(d, subs[i].max_degree());
  }
  const double p =
      params.p > 0 ? params.p : 1.0 / (4.0 * d * std::pow(2.0, static_cast<double>(d)));
  rng r(mix_seed(params.seed, 0xc1a5));

  std::vector<char> selected(t, 0);
  std::vector<std::uint64_t> pick(t, 0);
  const auto redraw = [&](std::size_t i) {
    selected[i] = r.bernoulli(p) ? 1 : 0;
    const std::uint64_t all = subs[i].vertex_count() >= 64
                                  ? ~std::uint64_t{0}
                                  : (std::uint64_t{1} << subs[i].vertex_count()) - 1;
    pick[i] = detail::sample_is(closed[i], all, r);
  };
  for (std::size_t i = 0; i < t; ++i) redraw(i);

  const auto holds = [&](int v) {
    const int c = owner[static_cast<std::size_t>(v)];
    if (c < 0 || !selected[static_cast<std::size_t>(c)]) return false;
    const auto& orig = originals[static_cast<std::size_t>(c)];
    const auto it = std::lower_bound(orig.begin(), orig.end(), v);
    const int local = static_cast<int>(it - orig.begin());
    return (pick[static_cast<std::size_t>(c)] >> local & 1u) != 0;
  };

  // Adjacent cluster pairs, in pattern edge order.
  const auto pairs = model.pattern.edges();

  hit_result out;
  while (out.resamples <= params.resample_cap) {
    int violated_pair = -1;
    for (std::size_t e = 0; e < pairs.size(); ++e) {
      const auto& [a, b] = pairs[e];
      if (!selected[static_cast<std::size_t>(a)] || !selected[static_cast<std::size_t>(b)])
        continue;
      bool conflict = false;
      for (int u : model.clusters[static_cast<std::size_t>(a)]) {
        if (!holds(u)) continue;
        for (int w : g.neighbors(u))
          if (owner[static_cast<std::size_t>(w)] == b && holds(w)) {
            conflict = true;
            break;
          }
        if (conflict) break;
      }
      if (conflict) {
        violated_pair = static_cast<int>(e);
        break;
      }
    }
    if (violated_pair >= 0) {
      ++out.resamples;
      redraw(static_cast<std::size_t>(pairs[static_cast<std::size_t>(violated_pair)].first));
      redraw(static_cast<std::size_t>(pairs[static_cast<std::size_t>(violated_pair)].second));
      continue;
    }
    int violated_set = -1;
    for (std::size_t i = 0; i < family.size(); ++i) {
      bool hit = false;
      for (int v : family[i]) hit = hit || holds(v);
      if (!hit) {
        violated_set = static_cast<int>(i);
        break;
      }
    }
    if (violated_set >= 0) {
      ++out.resamples;
      for (int v : family[static_cast<std::size_t>(violated_set)])
        redraw(static_cast<std::size_t>(owner[static_cast<std::size_t>(v)]));
      continue;
    }

    std::vector<int> xs;
    for (std::size_t i = 0; i < t; ++i) {
      if (!selected[i]) continue;
      std::uint64_t mask = pick[i];
      while (mask) {
        const int v = std::countr_zero(mask);
        mask &= mask - 1;
        xs.push_back(originals[i][static_cast<std::size_t>(v)]);
      }
    }
    out.hitter = vertex_set{std::move(xs)};
    if (!g.is_independent_set(out.hitter)) break;
    bool all_hit = true;
    for (const auto& s : family) all_hit = all_hit && s.intersects(out.hitter);
    if (!all_hit) break;
    out.found = true;
    return out;
  }
  out.found = false;
  out.hitter = vertex_set{};
  return out;
}

}  // namespace tropic
