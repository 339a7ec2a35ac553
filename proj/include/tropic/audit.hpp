#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tropic/circuit.hpp"
#include "tropic/config.hpp"
#include "tropic/error.hpp"
#include "tropic/exact.hpp"
#include "tropic/graph.hpp"
#include "tropic/hitting.hpp"
#include "tropic/io.hpp"
#include "tropic/verify.hpp"
#include "tropic/weight.hpp"

namespace tropic {

// One extracted separator. `gate` names the gate picked in the working copy of
// that iteration (ids shift as gates are removed); the residual entry keeps
// iteration -1 and is always last when present.
struct separator_record {
  vertex_set separator;
  int gate = -1;
  int iteration = -1;
};

struct separator_family {
  std::vector<separator_record> records;
  bool residual_included = false;

  set_family sets() const {
    set_family f;
    f.reserve(records.size());
    for (const auto& r : records) f.push_back(r.separator);
    return f;
  }
};

// Peels balanced separators off a circuit. While the output's support keeps
// more than 2|X|/3 of X, descend toward the child with the larger support
// intersection (ties to the lower id) until the first gate at or under the
// threshold; its open neighborhood is recorded and the gate is restricted to
// -inf, which strictly shrinks the circuit. Restriction alone cannot empty a
// max-plus polynomial here, but the collapse case is handled defensively.
// Whatever remains on loop exit contributes its own neighborhood, flagged as
// the residual: hitting it still witnesses non-computation, but the balance
// window argument does not apply to it.
inline separator_family extract_separators(const circuit& c, const graph& g,
                                           vertex_set x = {}) {
  if (x.empty()) x = vertex_set::full(g.vertex_count());
  if (x.size() < 2)
    throw invalid_input("extract_separators: need |X| >= 2, got " + std::to_string(x.size()));
  for (int v : x)
    if (v < 0 || v >= g.vertex_count())
      throw invalid_input("extract_separators: X mentions vertex " + std::to_string(v) +
                          " outside the graph");
  detail::require_vars_in_range(g, c);

  separator_family out;
  circuit work = c;
  bool collapsed = false;
  for (int iteration = 0; ; ++iteration) {
    const auto sups = supports(work);
    const auto in_x = [&](int gate_id) {
      return sups[static_cast<std::size_t>(gate_id)].intersection_size(x);
    };
    if (3 * in_x(work.output()) <= 2 * x.size()) break;

    int v = work.output();
    while (3 * in_x(v) > 2 * x.size()) {
      const gate& gt = work.at(v);
      // Leaves carry at most one vertex, which sits under the threshold for
      // any |X| >= 2, so the walk only ever needs interior gates.
      const int ia = in_x(gt.lhs);
      const int ib = in_x(gt.rhs);
      if (ia != ib)
        v = ia > ib ? gt.lhs : gt.rhs;
      else
        v = std::min(gt.lhs, gt.rhs);
    }

    out.records.push_back(
        {g.neighborhood(sups[static_cast<std::size_t>(v)], /*closed=*/false), v, iteration});
    restriction res = restrict_gate_neg_inf(work, v);
    if (res.empty_polynomial) {
      collapsed = true;
      break;
    }
    work = std::move(*res.result);
  }
  if (!collapsed) {
    const auto sups = supports(work);
    out.records.push_back(
        {g.neighborhood(sups[static_cast<std::size_t>(work.output())], /*closed=*/false),
         work.output(), -1});
    out.residual_included = true;
  }
  return out;
}

enum class audit_verdict { consistent, refuted, inconclusive };

struct audit_report {
  separator_family family;
  audit_verdict verdict = audit_verdict::inconclusive;
  int smallest_separator = -1;  // over all recorded members, -1 when none
  int d = 1;
  int x_size = 0;
  std::optional<vertex_set> counterexample;
  bool counterexample_monomial_checked = false;
  std::string note;
};

namespace detail {

// Shared tail of the audits: search for an independent set hitting every
// member, then certify non-computation. Monomial membership is the primary
// certificate; past its 32-vertex reach, the 1/-1 weight evaluation stands in
// (valid for circuits without the non-negativity wrapper).
inline void audit_with_family(audit_report& rep, const circuit& c, const graph& g,
                              const set_family& family, const caps& limits) {
  rep.d = std::max(1, g.max_degree());
  rep.smallest_separator = -1;
  for (const auto& s : family)
    if (rep.smallest_separator < 0 || s.size() < rep.smallest_separator)
      rep.smallest_separator = s.size();

  for (const auto& s : family)
    if (s.empty()) {
      rep.verdict = audit_verdict::consistent;
      rep.note = "flagged: a family member is empty, so no independent set can hit everything";
      return;
    }
  if (family.empty()) {
    rep.verdict = audit_verdict::consistent;
    rep.note = "flagged: empty family, nothing to hit";
    return;
  }

  std::optional<vertex_set> hitter;
  bool exact = false;
  if (g.vertex_count() <= limits.hit_exact) {
    hitter = hit_family_exact(g, family, limits);
    exact = true;
  } else {
    hitting_params params;
    const hit_result res = hit_family_moser_tardos(g, family, params);
    if (res.found) hitter = res.hitter;
  }

  if (!hitter) {
    rep.verdict = exact ? audit_verdict::consistent : audit_verdict::inconclusive;
    rep.note = exact ? "no independent set hits every member; refutation impossible"
                     : "resampling found no hitter within the cap; existence undecided";
    return;
  }

  const vertex_set& i = *hitter;
  if (i.size() <= 32) {
    if (!computes_monomial(c, i)) {
      rep.verdict = audit_verdict::refuted;
      rep.counterexample = i;
      rep.counterexample_monomial_checked = true;
      rep.note = "independent set " + i.to_string() + " hits every member and is not a monomial";
      return;
    }
    // The first hitter is a monomial. At desk scale, sweep every independent
    // set before conceding: a circuit can compute one hitter yet miss another.
    if (exact) {
      bool swept = false;
      try {
        const auto masks = all_independent_sets(g, limits);
        swept = true;
        for (const std::uint64_t m : masks) {
          const vertex_set cand = detail::mask_to_set(m);
          bool hits = true;
          for (const auto& s : family) hits = hits && s.intersects(cand);
          if (!hits || cand.size() > 32) continue;
          if (!computes_monomial(c, cand)) {
            rep.verdict = audit_verdict::refuted;
            rep.counterexample = cand;
            rep.counterexample_monomial_checked = true;
            rep.note = "independent set " + cand.to_string() +
                       " hits every member and is not a monomial";
            return;
          }
        }
      } catch (const size_error&) {
        swept = false;
      }
      if (swept) {
        rep.verdict = audit_verdict::consistent;
        rep.note = "every independent set hitting the family is a monomial";
        return;
      }
    }
    rep.verdict = audit_verdict::inconclusive;
    rep.note = "a hitter exists but the circuit computes it; the family witnesses no gap";
    return;
  }
  std::vector<ext_int> w(static_cast<std::size_t>(g.vertex_count()), ext_int(-1));
  for (int v : i) w[static_cast<std::size_t>(v)] = ext_int(1);
  const ext_int got = evaluate<long long>(c, w);
  if (got < ext_int(i.size())) {
    rep.verdict = audit_verdict::refuted;
    rep.counterexample = i;
    rep.counterexample_monomial_checked = false;
    rep.note = "value " + got.to_string() + " under 1/-1 weights falls short of " +
               std::to_string(i.size()) + "; valid unless the circuit wraps max(v,0)";
    return;
  }
  rep.verdict = audit_verdict::inconclusive;
  rep.note = "a hitter exists but the weight certificate does not separate";
}

}  // namespace detail

// Separator-family audit of a circuit: extract, search for an independent
// hitter, certify. A correct MWIS circuit computes every independent set, so
// only a circuit that misses one can come out refuted.
inline audit_report audit_circuit(const circuit& c, const graph& g, vertex_set x = {},
                                  const caps& limits = {}) {
  audit_report rep;
  rep.family = extract_separators(c, g, x);
  rep.x_size = x.empty() ? g.vertex_count() : x.size();
  detail::audit_with_family(rep, c, g, rep.family.sets(), limits);
  return rep;
}

// Sep(g) per gate of a formula, top down: the output separates from its own
// support's complement, a plus child inherits the parent's separator, and a
// max child g of p gets Sep(p) ∪ Sup(p) ∖ Sup(g). Requires every gate to feed
// the output, so ids above the output cannot occur.
struct formula_separator_map {
  std::vector<vertex_set> sep;  // by gate id
};

inline formula_separator_map formula_separators(const circuit& c, const graph& g) {
  if (!is_formula(c)) throw invalid_input("formula_separators: circuit is not a formula");
  detail::require_vars_in_range(g, c);
  const auto reach = reachable_from_output(c);
  for (int i = 0; i < c.size(); ++i)
    if (!reach[static_cast<std::size_t>(i)])
      throw invalid_input("formula_separators: gate " + std::to_string(i) +
                          " does not feed the output");

  const auto sups = supports(c);
  formula_separator_map out;
  out.sep.assign(static_cast<std::size_t>(c.size()), {});
  out.sep[static_cast<std::size_t>(c.output())] =
      vertex_set::full(g.vertex_count()).difference(sups[static_cast<std::size_t>(c.output())]);
  for (int p = c.output(); p >= 0; --p) {
    const gate& gt = c.at(p);
    if (gt.kind != gate_kind::max_gate && gt.kind != gate_kind::plus_gate) continue;
    for (int child : {gt.lhs, gt.rhs}) {
      auto& slot = out.sep[static_cast<std::size_t>(child)];
      if (gt.kind == gate_kind::plus_gate) {
        slot = out.sep[static_cast<std::size_t>(p)];
      } else {
        slot = out.sep[static_cast<std::size_t>(p)]
                   .unite(sups[static_cast<std::size_t>(p)])
                   .difference(sups[static_cast<std::size_t>(child)]);
      }
    }
  }
  return out;
}

// Typicality of I: every plus gate whose support induces treedepth at least
// td(G)/2 must see I inside one of its maximum-treedepth components.
inline bool is_typical(const circuit& c, const graph& g, const vertex_set& i,
                       const caps& limits = {}) {
  if (!is_formula(c)) throw invalid_input("is_typical: circuit is not a formula");
  detail::require_vars_in_range(g, c);
  const int td = exact_treedepth(g, limits).depth;
  const auto sups = supports(c);
  for (int gi = 0; gi < c.size(); ++gi) {
    if (c.at(gi).kind != gate_kind::plus_gate) continue;
    const vertex_set& sup = sups[static_cast<std::size_t>(gi)];
    const graph sub = g.induced(sup);
    const int sub_td = exact_treedepth(sub, limits).depth;
    if (2 * sub_td < td) continue;
    bool good = false;
    for (const auto& comp_local : sub.connected_components()) {
      if (exact_treedepth(sub.induced(comp_local), limits).depth != sub_td) continue;
      for (int v : comp_local)
        if (i.contains(sup.values()[static_cast<std::size_t>(v)])) {
          good = true;
          break;
        }
      if (good) break;
    }
    if (!good) return false;
  }
  return true;
}

// Formula audit per the treedepth argument: the family holds every separator
// and every support of size at least td(G)/2; a hitting independent set is
// certified as not computed. Treedepth below 2 has no such argument, so the
// audit reports inconclusive and says why.
inline audit_report audit_formula(const circuit& c, const graph& g, const caps& limits = {}) {
  if (!is_formula(c)) throw invalid_input("audit_formula: circuit is not a formula");
  audit_report rep;
  rep.x_size = 0;
  rep.d = std::max(1, g.max_degree());
  const int td = exact_treedepth(g, limits).depth;
  if (td < 2) {
    rep.verdict = audit_verdict::inconclusive;
    rep.note = "flagged: treedepth under 2, the separator argument does not apply";
    return rep;
  }

  const formula_separator_map seps = formula_separators(c, g);
  const auto sups = supports(c);
  set_family family;
  const auto push_unique = [&](const vertex_set& s) {
    if (std::find(family.begin(), family.end(), s) == family.end()) family.push_back(s);
  };
  for (int gi = 0; gi < c.size(); ++gi)
    if (2 * seps.sep[static_cast<std::size_t>(gi)].size() >= td)
      push_unique(seps.sep[static_cast<std::size_t>(gi)]);
  for (int gi = 0; gi < c.size(); ++gi)
    if (2 * sups[static_cast<std::size_t>(gi)].size() >= td)
      push_unique(sups[static_cast<std::size_t>(gi)]);
  for (const auto& s : family)
    rep.family.records.push_back({s, -1, -1});

  detail::audit_with_family(rep, c, g, family, limits);
  return rep;
}

// Closed-form gate lower bounds.
enum class bound_kind { treewidth_circuit, minor_circuit, treedepth_formula };

struct bound_query {
  bound_kind kind = bound_kind::treewidth_circuit;
  long long parameter = 0;  // treewidth, model order k, or treedepth
  long long d = 0;          // maximum degree
};

struct bound_result {
  long double bound = 0;
  long double k = 0;  // separator-size parameter after derivation
  std::string formula;
};

inline bound_result bound_gates(const bound_query& q) {
  if (q.parameter <= 0 || q.d <= 0)
    throw invalid_input("bound_gates: parameters must be positive");
  bound_result r;
  const long double d = static_cast<long double>(q.d);
  switch (q.kind) {
    case bound_kind::treewidth_circuit:
      // Treewidth >= 4k forces balanced separation order k = tw/4.
      r.k = static_cast<long double>(q.parameter) / 4.0L;
      r.bound = std::exp(r.k / (6.0L * d)) / 6.0L;
      r.formula = "e^{(tw/4)/(6d)}/6";
      break;
    case bound_kind::minor_circuit:
      r.k = static_cast<long double>(q.parameter);
      r.bound = std::exp(7.0L * r.k / (120.0L * d * std::pow(4.0L, d))) / 30.0L;
      r.formula = "e^{7k/(120·d·4^d)}/30";
      break;
    case bound_kind::treedepth_formula:
      r.k = static_cast<long double>(q.parameter);
      r.bound = std::exp(r.k / (12.0L * d)) / 12.0L;
      r.formula = "e^{td/(12d)}/12";
      break;
  }
  return r;
}

}  // namespace tropic
