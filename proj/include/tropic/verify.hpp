#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tropic/circuit.hpp"
#include "tropic/config.hpp"
#include "tropic/error.hpp"
#include "tropic/exact.hpp"
#include "tropic/graph.hpp"
#include "tropic/rng.hpp"
#include "tropic/vertex_set.hpp"
#include "tropic/weight.hpp"

namespace tropic {

template <typename T>
struct mwis_solution {
  extended<T> value;
  vertex_set chosen;
};

namespace detail {

template <typename T>
std::pair<extended<T>, std::uint64_t> mwis_rec(const std::vector<std::uint64_t>& closed,
                                               std::span<const extended<T>> w,
                                               std::uint64_t alive) {
  if (alive == 0) return {extended<T>(T{}), 0};

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
    extended<T> total{T{}};
    std::uint64_t chosen = 0;
    for (std::uint64_t comp : comps) {
      auto [val, mask] = mwis_rec(closed, w, comp);
      total = total + val;
      chosen |= mask;
    }
    return {total, chosen};
  }

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
  auto exclude = mwis_rec(closed, w, alive & ~(std::uint64_t{1} << best));
  auto inner = mwis_rec(closed, w, alive & ~closed[static_cast<std::size_t>(best)]);
  const extended<T> with = w[static_cast<std::size_t>(best)] + inner.first;
  if (exclude.first < with) return {with, inner.second | (std::uint64_t{1} << best)};
  return exclude;
}

inline void require_vars_in_range(const graph& g, const circuit& c) {
  for (int i = 0; i < c.size(); ++i)
    if (c.at(i).kind == gate_kind::variable &&
        (c.at(i).var < 0 || c.at(i).var >= g.vertex_count()))
      throw invalid_input("circuit variable " + std::to_string(c.at(i).var) +
                          " is not a vertex of the graph");
}

}  // namespace detail

// Exact maximum weight independent set by branching on a highest-degree
// vertex, splitting components first. Exponential; guarded by the oracle cap.
template <typename T>
mwis_solution<T> mwis_oracle(const graph& g, std::span<const extended<T>> weights,
                             const caps& limits = {}) {
  const int n = g.vertex_count();
  if (n > limits.mwis_oracle)
    throw size_error("mwis_oracle: " + std::to_string(n) + " vertices is past the cap " +
                     std::to_string(limits.mwis_oracle));
  if (static_cast<int>(weights.size()) != n)
    throw invalid_input("mwis_oracle: got " + std::to_string(weights.size()) + " weights for " +
                        std::to_string(n) + " vertices");
  const auto closed = detail::closed_neighbor_masks(g);
  const std::uint64_t all = n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  auto [value, mask] = detail::mwis_rec(closed, weights, all);
  return {value, detail::mask_to_set(mask)};
}

enum class verify_mode { automatic, symbolic, randomized };
enum class verify_verdict { certified, consistent, refuted };

struct verify_options {
  verify_mode mode = verify_mode::automatic;
  int trials = 200;
  std::uint64_t seed = 0;
  caps limits{};
};

// Refutations carry counterexample weights together with the two values that
// disagree on them. `expected` is the exact optimum when the graph fits the
// oracle cap, otherwise an analytic bound that still beats the circuit.
struct verify_report {
  verify_verdict verdict = verify_verdict::consistent;
  verify_mode mode_used = verify_mode::randomized;
  int trials_run = 0;
  std::string note;
  std::vector<ext_int> counterexample;
  ext_int expected;
  ext_int got;
};

// Weight vectors that expose a known defect: an independent set the circuit
// misses scores 1 against -1 elsewhere (so only the missing set reaches its
// own size), while an illegal monomial scores 1 against 0 (so the circuit
// overshoots every true optimum).
inline std::vector<ext_int> counterexample_weights(int n, const vertex_set& defect,
                                                   bool missing) {
  std::vector<ext_int> w(static_cast<std::size_t>(n), ext_int(missing ? -1 : 0));
  for (int v : defect) {
    if (v < 0 || v >= n)
      throw invalid_input("counterexample_weights: vertex " + std::to_string(v) +
                          " out of range");
    w[static_cast<std::size_t>(v)] = ext_int(1);
  }
  return w;
}

namespace detail {

inline ext_int expected_on(const graph& g, std::span<const ext_int> w, ext_int fallback,
                           const caps& limits) {
  if (g.vertex_count() <= limits.mwis_oracle) return mwis_oracle<long long>(g, w, limits).value;
  return fallback;
}

inline verify_report refute_with(const graph& g, const circuit& c, std::vector<ext_int> w,
                                 ext_int fallback, std::string note, const caps& limits) {
  verify_report r;
  r.verdict = verify_verdict::refuted;
  r.mode_used = verify_mode::symbolic;
  r.got = evaluate<long long>(c, w);
  r.expected = expected_on(g, w, fallback, limits);
  r.note = std::move(note);
  r.counterexample = std::move(w);
  return r;
}

}  // namespace detail

// Decides whether the circuit computes the maximum weight independent set
// function of g. Symbolic mode compares the circuit's monomials against all
// independent sets, which certifies; randomized mode compares values against
// the exact oracle on seeded weight draws, which only builds confidence.
// Automatic mode certifies when the caps allow it and falls back otherwise.
inline verify_report verify_mwis_circuit(const graph& g, const circuit& c,
                                         const verify_options& opt = {}) {
  detail::require_vars_in_range(g, c);
  const int n = g.vertex_count();
  const bool want_symbolic =
      opt.mode == verify_mode::symbolic || opt.mode == verify_mode::automatic;

  if (want_symbolic && n <= 64) {
    bool fits = true;
    monomial_set ms = monomials(c, opt.limits);
    std::vector<std::uint64_t> sets;
    if (ms.truncated) fits = false;
    if (fits) {
      try {
        sets = all_independent_sets(g, opt.limits);
      } catch (const size_error&) {
        fits = false;
      }
    }
    if (fits) {
      if (ms.multilinearity_violated) {
        // Some derivation uses a vertex of this union twice, so on its
        // indicator weights the circuit exceeds |union|, while no independent
        // set can.
        return detail::refute_with(g, c, counterexample_weights(n, ms.violation, false),
                                   ext_int(ms.violation.size()),
                                   "a derivation repeats a vertex of " + ms.violation.to_string(),
                                   opt.limits);
      }
      std::vector<std::uint64_t> mono;
      mono.reserve(ms.monomials.size());
      for (const auto& m : ms.monomials) mono.push_back(detail::set_to_mask(m));
      std::sort(mono.begin(), mono.end());

      for (std::uint64_t m : mono)
        if (!std::binary_search(sets.begin(), sets.end(), m)) {
          const vertex_set bad = detail::mask_to_set(m);
          return detail::refute_with(g, c, counterexample_weights(n, bad, false),
                                     ext_int(bad.size() - 1),
                                     "monomial " + bad.to_string() + " is not an independent set",
                                     opt.limits);
        }
      for (std::uint64_t s : sets)
        if (!std::binary_search(mono.begin(), mono.end(), s)) {
          const vertex_set missing = detail::mask_to_set(s);
          return detail::refute_with(g, c, counterexample_weights(n, missing, true),
                                     ext_int(missing.size()),
                                     "independent set " + missing.to_string() +
                                         " is not a monomial",
                                     opt.limits);
        }
      verify_report r;
      r.verdict = verify_verdict::certified;
      r.mode_used = verify_mode::symbolic;
      r.note = "monomials are exactly the independent sets";
      return r;
    }
    if (opt.mode == verify_mode::symbolic)
      throw size_error("verify_mwis_circuit: symbolic comparison is past the caps");
  } else if (opt.mode == verify_mode::symbolic) {
    throw size_error("verify_mwis_circuit: symbolic comparison needs at most 64 vertices");
  }

  if (n > opt.limits.mwis_oracle)
    throw size_error("verify_mwis_circuit: " + std::to_string(n) +
                     " vertices is past the oracle cap; no check applies");

  rng r(mix_seed(opt.seed, 0x7e51f1));
  verify_report rep;
  rep.mode_used = verify_mode::randomized;
  for (int t = 0; t < opt.trials; ++t) {
    std::vector<ext_int> w(static_cast<std::size_t>(n));
    const int family = t % 4;
    for (int v = 0; v < n; ++v) {
      auto& slot = w[static_cast<std::size_t>(v)];
      switch (family) {
        case 0:
          slot = ext_int(static_cast<long long>(r.range(0, 2 * n)));
          break;
        case 1:
          slot = ext_int(static_cast<long long>(r.range(-n, n)));
          break;
        case 2:
          slot = ext_int(r.bernoulli(0.5) ? 1 : 0);
          break;
        default:
          slot = r.bernoulli(0.125) ? ext_int::bottom()
                                    : ext_int(static_cast<long long>(r.range(-n, n)));
      }
    }
    const ext_int got = evaluate<long long>(c, w);
    const ext_int want = mwis_oracle<long long>(g, std::span<const ext_int>(w), opt.limits).value;
    rep.trials_run = t + 1;
    if (!(got == want)) {
      rep.verdict = verify_verdict::refuted;
      rep.note = "value differs from the optimum on drawn weights";
      rep.counterexample = std::move(w);
      rep.expected = want;
      rep.got = got;
      return rep;
    }
  }
  rep.verdict = verify_verdict::consistent;
  rep.note = "matched the optimum on every trial";
  return rep;
}

// Product-disjointness: for every plus gate, the closed neighborhood of the
// left support must miss the right support. Holds structurally for circuits
// whose monomials are all independent and multilinear.
struct disjointness_violation {
  int gate = -1;
  int witness = -1;  // vertex in N[Sup(lhs)] ∩ Sup(rhs)
};

inline std::vector<disjointness_violation> check_product_disjointness(const graph& g,
                                                                      const circuit& c) {
  detail::require_vars_in_range(g, c);
  const auto sups = supports(c);
  std::vector<disjointness_violation> out;
  for (int i = 0; i < c.size(); ++i) {
    const gate& gt = c.at(i);
    if (gt.kind != gate_kind::plus_gate) continue;
    const vertex_set closed_left =
        g.neighborhood(sups[static_cast<std::size_t>(gt.lhs)], /*closed=*/true);
    const vertex_set bad = closed_left.intersect(sups[static_cast<std::size_t>(gt.rhs)]);
    if (!bad.empty()) out.push_back({i, bad.values().front()});
  }
  return out;
}

}  // namespace tropic
