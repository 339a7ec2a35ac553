// Acceptance harness: ten end-to-end checks, one PASS/FAIL line each.
// Usage: tropic_acceptance [--only N]. Exit 0 iff every check run passed.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "json.hpp"
#include "tropic/tropic.hpp"

#include "../corpus.hpp"
#include "../oracle.hpp"

namespace {

using nlohmann::json;
using namespace tropic;

struct outcome {
  bool pass = false;
  std::string detail;
};

outcome fail(std::string why) { return {false, std::move(why)}; }
outcome pass(std::string note) { return {true, std::move(note)}; }

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

std::string fmt_seconds(double s) {
  std::ostringstream out;
  out.precision(2);
  out << std::fixed << s << "s";
  return out.str();
}

struct shell_result {
  int code = -1;
  std::string out;
};

shell_result run_shell(const std::string& command) {
  shell_result res;
  FILE* pipe = popen((command + " 2>/dev/null").c_str(), "r");
  if (!pipe) return res;
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, got);
  const int status = pclose(pipe);
  if (WIFEXITED(status)) res.code = WEXITSTATUS(status);
  return res;
}

graph from_edges(int n, const oracle::edge_list& edges) { return graph::build(n, edges); }

// Row-major sliding window {t..t+w}: a valid path decomposition of the k x k
// grid at width w = k (row edges span 1, column edges span k).
tree_decomposition window_decomposition(int n, int w) {
  tree_decomposition t;
  for (int i = 0; i + w < n; ++i) {
    std::vector<int> bag;
    for (int v = i; v <= i + w; ++v) bag.push_back(v);
    t.bags.emplace_back(std::move(bag));
    if (i > 0) t.edges.emplace_back(i - 1, i);
  }
  return t;
}

std::optional<std::string> check_refutation(const audit_report& rep, const circuit& c,
                                            const graph& g) {
  if (rep.verdict != audit_verdict::refuted) return "verdict is not refuted: " + rep.note;
  if (!rep.counterexample) return std::string("refuted without a counterexample");
  const vertex_set& i = *rep.counterexample;
  if (!g.is_independent_set(i)) return "counterexample " + i.to_string() + " is not independent";
  for (const auto& rec : rep.family.records)
    if (!rec.separator.intersects(i))
      return "counterexample misses member " + rec.separator.to_string();
  if (!rep.counterexample_monomial_checked) return std::string("membership was not checked");
  if (computes_monomial(c, i))
    return "counterexample " + i.to_string() + " is a monomial after all";
  return std::nullopt;
}

// Seeded corruption: restrict one of the output gate's two branches, the coin
// picking which; falls back to the sibling if the first loses no monomial.
std::optional<circuit> corrupt_top_branch(const circuit& c, std::uint64_t seed) {
  const gate& out = c.at(c.output());
  if (out.kind != gate_kind::max_gate && out.kind != gate_kind::plus_gate) return std::nullopt;
  rng r(mix_seed(seed, 0xacc6));
  const bool left_first = r.bernoulli(0.5);
  const auto before = monomials(c).monomials;
  for (const int v : {left_first ? out.lhs : out.rhs, left_first ? out.rhs : out.lhs}) {
    const restriction res = restrict_gate_neg_inf(c, v);
    if (!res.result) continue;
    if (monomials(*res.result).monomials == before) continue;
    return *res.result;
  }
  return std::nullopt;
}

// --- criterion 1: headline gate bound through the CLI ---

outcome criterion1() {
  const auto t0 = clock_type::now();
  const shell_result res =
      run_shell(std::string(TROPIC_CLI_PATH) + " --no-timings bound tw-circuit --tw 5000 --d 4");
  const double elapsed = seconds_since(t0);
  if (res.code != 0) return fail("CLI exited with " + std::to_string(res.code));
  json r;
  try {
    r = json::parse(res.out);
  } catch (const std::exception& e) {
    return fail(std::string("unparsable report: ") + e.what());
  }
  const double bound = r["results"]["bound"].get<double>();
  const long double expected = std::exp(1250.0L / 24.0L) / 6.0L;
  const long double rel = std::fabs(static_cast<long double>(bound) - expected) / expected;
  if (bound < 1e21) return fail("bound " + std::to_string(bound) + " under 1e21");
  if (rel > 1e-6L) return fail("relative error " + std::to_string(static_cast<double>(rel)));
  if (elapsed >= 1.0) return fail("took " + fmt_seconds(elapsed));
  return pass("bound=" + std::to_string(bound) + ", rel_err<=1e-6, " + fmt_seconds(elapsed));
}

// --- criterion 2: both compilers certified on every connected graph <= 7 ---

outcome criterion2() {
  const auto t0 = clock_type::now();
  int graphs = 0;
  int circuits = 0;
  verify_options symbolic;
  symbolic.mode = verify_mode::symbolic;
  for (int n = 1; n <= 7; ++n) {
    for (const auto& edges : corpus::connected_up_to_iso(n)) {
      const graph g = from_edges(n, edges);
      ++graphs;

      const circuit ctw = compile_treewidth(g, exact_treewidth(g).decomposition);
      if (verify_mwis_circuit(g, ctw, symbolic).verdict != verify_verdict::certified)
        return fail("treewidth circuit not certified on graph " + std::to_string(graphs) +
                    " (n=" + std::to_string(n) + ")");
      ++circuits;

      const circuit ctd = compile_treedepth(g, exact_treedepth(g).forest);
      if (!is_formula(ctd))
        return fail("treedepth output is no formula on graph " + std::to_string(graphs));
      if (verify_mwis_circuit(g, ctd, symbolic).verdict != verify_verdict::certified)
        return fail("treedepth formula not certified on graph " + std::to_string(graphs) +
                    " (n=" + std::to_string(n) + ")");
      ++circuits;
    }
  }
  const double elapsed = seconds_since(t0);
  if (elapsed >= 300.0) return fail("took " + fmt_seconds(elapsed));
  return pass(std::to_string(circuits) + " circuits over " + std::to_string(graphs) +
              " graphs certified, " + fmt_seconds(elapsed));
}

// --- criterion 3: evaluation equals the exact optimum on seeded weights ---

outcome criterion3() {
  const auto t0 = clock_type::now();
  long long trials = 0;
  int graphs = 0;
  for (int n = 1; n <= 7; ++n) {
    for (const auto& edges : corpus::connected_up_to_iso(n)) {
      const graph g = from_edges(n, edges);
      ++graphs;
      const circuit ctw = compile_treewidth(g, exact_treewidth(g).decomposition);
      const circuit ctd = compile_treedepth(g, exact_treedepth(g).forest);
      const circuit wtw = wrap_nonneg(ctw);
      const circuit wtd = wrap_nonneg(ctd);

      rng r(mix_seed(static_cast<std::uint64_t>(graphs), 0xe7a1));
      for (int t = 0; t < 100; ++t) {
        std::vector<ext_int> w(static_cast<std::size_t>(n));
        std::vector<std::optional<long long>> ow(static_cast<std::size_t>(n));
        const int family = t % 4;
        for (int v = 0; v < n; ++v) {
          long long x = 0;
          bool bottom = false;
          switch (family) {
            case 0: x = -static_cast<long long>(r.range(1, 2 * n)); break;
            case 1:
              if (r.bernoulli(0.125)) bottom = true;
              else x = r.range(-n, 2 * n);
              break;
            case 2: x = r.range(0, 2 * n); break;
            default: x = r.range(-n, n); break;
          }
          w[static_cast<std::size_t>(v)] = bottom ? ext_int::bottom() : ext_int(x);
          ow[static_cast<std::size_t>(v)] = bottom ? std::nullopt : std::make_optional(x);
        }

        const ext_int want = mwis_oracle<long long>(g, std::span<const ext_int>(w)).value;
        if (t % 10 == 0 && want.value() != oracle::mwis(n, edges, ow))
          return fail("the two reference optima disagree (graph " + std::to_string(graphs) + ")");

        if (!(evaluate<long long>(ctw, w) == want))
          return fail("treewidth circuit value differs (graph " + std::to_string(graphs) +
                      ", trial " + std::to_string(t) + ")");
        if (!(evaluate<long long>(ctd, w) == want))
          return fail("treedepth formula value differs (graph " + std::to_string(graphs) +
                      ", trial " + std::to_string(t) + ")");
        if (family == 0) {
          if (!(evaluate<long long>(wtw, w) == want) || !(evaluate<long long>(wtd, w) == want))
            return fail("wrapped circuit value differs on all-negative weights (graph " +
                        std::to_string(graphs) + ")");
        }
        ++trials;
      }
    }
  }
  const double elapsed = seconds_since(t0);
  if (elapsed >= 300.0) return fail("took " + fmt_seconds(elapsed));
  return pass(std::to_string(trials) + " weight vectors across " + std::to_string(graphs) +
              " graphs, exact agreement, " + fmt_seconds(elapsed));
}

// --- criterion 4: plus gates never join adjacent supports ---

outcome criterion4() {
  int circuits = 0;
  long long plus_gates = 0;
  for (int n = 1; n <= 7; ++n) {
    for (const auto& edges : corpus::connected_up_to_iso(n)) {
      const graph g = from_edges(n, edges);
      for (const circuit& c : {compile_treewidth(g, exact_treewidth(g).decomposition),
                               compile_treedepth(g, exact_treedepth(g).forest),
                               compile_bruteforce(g)}) {
        ++circuits;
        for (int i = 0; i < c.size(); ++i)
          if (c.at(i).kind == gate_kind::plus_gate) ++plus_gates;
        if (!check_product_disjointness(g, c).empty())
          return fail("violation in circuit " + std::to_string(circuits));
      }
    }
  }
  return pass("0 violations over " + std::to_string(plus_gates) + " plus gates in " +
              std::to_string(circuits) + " circuits");
}

// --- criterion 5: extraction window, balance, and minimum separator size ---

outcome criterion5() {
  const auto t0 = clock_type::now();
  const int frozen_order[] = {0, 0, 0, 2, 3, 4};
  int records = 0;
  for (int k = 3; k <= 5; ++k) {
    const graph g = gen_grid(k, k);
    const int n = k * k;
    const vertex_set x = vertex_set::full(n);
    const circuit c = compile_treewidth(g, window_decomposition(n, k));

    caps wide;
    wide.balanced_separation = 25;
    const auto sep = balanced_separation_order(g, x, wide);
    if (sep.order != frozen_order[k])
      return fail("balanced separation order of the " + std::to_string(k) + "x" +
                  std::to_string(k) + " grid is " + std::to_string(sep.order) + ", expected " +
                  std::to_string(frozen_order[k]));

    const separator_family fam = extract_separators(c, g);
    circuit work = c;
    for (const auto& rec : fam.records) {
      ++records;
      const auto sups = supports(work);
      const vertex_set& sup = sups[static_cast<std::size_t>(rec.gate)];
      if (!(rec.separator == g.neighborhood(sup, false)))
        return fail("separator record mismatches the support neighborhood (k=" +
                    std::to_string(k) + ")");

      separation triple;
      triple.a = sup;
      triple.s = rec.separator;
      triple.b = x.difference(sup.unite(rec.separator));
      try {
        validate_separation(g, triple);
      } catch (const std::exception& e) {
        return fail(std::string("invalid separation triple: ") + e.what());
      }

      if (rec.iteration >= 0) {
        const int cut = sup.intersection_size(x);
        if (!(3 * cut >= x.size() && 3 * cut <= 2 * x.size()))
          return fail("chosen gate outside the window: |Sup∩X|=" + std::to_string(cut) +
                      " at |X|=" + std::to_string(x.size()));
        if (!separation_balanced_for(triple, x))
          return fail("recorded triple is not balanced (k=" + std::to_string(k) + ")");
        if (rec.separator.size() < sep.order)
          return fail("separator of size " + std::to_string(rec.separator.size()) +
                      " under the oracle minimum " + std::to_string(sep.order));
        const restriction res = restrict_gate_neg_inf(work, rec.gate);
        if (!res.result) return fail("restriction emptied the circuit mid-extraction");
        work = *res.result;
      }
    }
    if (!fam.residual_included || fam.records.back().iteration != -1)
      return fail("missing residual record (k=" + std::to_string(k) + ")");
  }
  const double elapsed = seconds_since(t0);
  if (elapsed >= 600.0) return fail("took " + fmt_seconds(elapsed));
  return pass(std::to_string(records) + " separator records on 3 grids, orders {2,3,4}, " +
              fmt_seconds(elapsed));
}

// --- criterion 6: corrupted circuits refuted, originals consistent ---

outcome criterion6() {
  int refuted = 0;
  int consistent = 0;
  for (int k = 3; k <= 4; ++k) {
    const graph g = gen_grid(k, k);
    const int n = k * k;
    const circuit c = compile_treewidth(g, window_decomposition(n, k));

    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const auto bad = corrupt_top_branch(c, seed);
      if (!bad)
        return fail("no monomial-losing top-branch restriction (k=" + std::to_string(k) +
                    ", seed " + std::to_string(seed) + ")");
      const audit_report rep = audit_circuit(*bad, g);
      if (const auto why = check_refutation(rep, *bad, g))
        return fail("corrupted " + std::to_string(k) + "x" + std::to_string(k) + " seed " +
                    std::to_string(seed) + ": " + *why);
      ++refuted;
    }

    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      vertex_set x;
      if (seed == 1) {
        x = vertex_set::full(n);
      } else {
        rng r(mix_seed(seed, 0x1ac7));
        std::vector<int> vs;
        for (int v = 0; v < n; ++v)
          if (r.bernoulli(0.75)) vs.push_back(v);
        if (vs.size() < 2) vs = {0, 1};
        x = vertex_set{std::move(vs)};
      }
      const audit_report rep = audit_circuit(c, g, x);
      if (rep.verdict != audit_verdict::consistent)
        return fail("intact " + std::to_string(k) + "x" + std::to_string(k) + " seed " +
                    std::to_string(seed) + " came out " + rep.note);
      ++consistent;
    }
  }
  return pass(std::to_string(refuted) + " corrupted refuted with validated counterexamples, " +
              std::to_string(consistent) + " intact consistent");
}

// --- criterion 7: vertex inclusion probability under the uniform measure ---

outcome criterion7() {
  const auto t0 = clock_type::now();
  const long long known_all[] = {0, 1, 2, 4, 11, 34, 156, 1044, 12346};
  const long long known_connected[] = {0, 1, 1, 2, 6, 21, 112, 853, 11117};
  long long checks = 0;
  for (int n = 1; n <= 8; ++n) {
    if (static_cast<long long>(corpus::unlabeled_count(n)) != known_all[n])
      return fail("graph enumerator broken at n=" + std::to_string(n));
    const auto all = corpus::connected_up_to_iso(n);
    if (static_cast<long long>(all.size()) != known_connected[n])
      return fail("connected enumerator broken at n=" + std::to_string(n));

    for (const auto& edges : all) {
      const graph g = from_edges(n, edges);
      const int d = g.max_degree();
      const auto sets = oracle::independent_sets(n, edges);
      const long long total = static_cast<long long>(sets.size());
      for (int v = 0; v < n; ++v) {
        long long with_v = 0;
        for (std::uint64_t m : sets)
          if ((m >> v) & 1u) ++with_v;
        // Pr[v in I] >= 1/2^{d+1}, exact over the counts.
        if (with_v * (1LL << (d + 1)) < total)
          return fail("vertex " + std::to_string(v) + " too rare on a graph with n=" +
                      std::to_string(n) + ", d=" + std::to_string(d));
        ++checks;
      }
    }
  }
  const double elapsed = seconds_since(t0);
  if (elapsed >= 120.0) return fail("took " + fmt_seconds(elapsed));
  return pass(std::to_string(checks) + " vertex bounds over all connected graphs to 8 vertices, " +
              fmt_seconds(elapsed));
}

// --- criterion 8: hitting search soundness and success rate ---

outcome criterion8() {
  int matched = 0;
  int mt_successes_small = 0;
  rng r(0x8177);
  for (int t = 0; t < 200; ++t) {
    const int n = 4 + t % 15;
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (r.bernoulli(std::min(1.0, 2.5 / n))) edges.emplace_back(i, j);
    const graph g = graph::build(n, edges);

    set_family family;
    const int members = 1 + static_cast<int>(r.below(5));
    for (int i = 0; i < members; ++i) {
      std::uint64_t mask = 0;
      while (mask == 0) mask = r.next() & ((std::uint64_t{1} << n) - 1);
      std::vector<int> vs;
      for (int v = 0; v < n; ++v)
        if ((mask >> v) & 1u) vs.push_back(v);
      family.emplace_back(std::move(vs));
    }

    std::vector<std::uint64_t> adj(static_cast<std::size_t>(n), 0);
    for (const auto& [u, v] : edges) {
      adj[static_cast<std::size_t>(u)] |= std::uint64_t{1} << v;
      adj[static_cast<std::size_t>(v)] |= std::uint64_t{1} << u;
    }
    std::vector<std::uint64_t> member_masks;
    for (const auto& s : family) {
      std::uint64_t m = 0;
      for (int v : s) m |= std::uint64_t{1} << v;
      member_masks.push_back(m);
    }
    bool exists = false;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n) && !exists; ++mask) {
      bool ok = true;
      for (int v = 0; v < n && ok; ++v)
        if (((mask >> v) & 1u) && (adj[static_cast<std::size_t>(v)] & mask)) ok = false;
      for (const std::uint64_t m : member_masks)
        if (!(m & mask)) ok = false;
      exists = exists || ok;
    }

    const auto res = hit_family_exact(g, family);
    if (res.has_value() != exists)
      return fail("exact verdict disagrees with enumeration on instance " + std::to_string(t));
    if (res) {
      if (!g.is_independent_set(*res)) return fail("exact hitter is not independent");
      for (const auto& s : family)
        if (!s.intersects(*res)) return fail("exact hitter misses a member");
    }
    ++matched;

    hitting_params params;
    params.seed = static_cast<std::uint64_t>(t);
    params.resample_cap = 20000;
    const hit_result mt = hit_family_moser_tardos(g, family, params);
    if (mt.found) {
      if (!g.is_independent_set(mt.hitter)) return fail("resampled hitter is not independent");
      for (const auto& s : family)
        if (!s.intersects(mt.hitter)) return fail("resampled hitter misses a member");
      if (!exists) return fail("resampling succeeded where no hitter exists");
      ++mt_successes_small;
    }
  }

  const graph grid = gen_grid(100, 100);
  set_family columns;
  for (int c : {10, 30, 50, 70, 90}) {
    std::vector<int> col;
    for (int row = 0; row < 100; ++row) col.push_back(row * 100 + c);
    columns.emplace_back(std::move(col));
  }
  if (!check_lll_precondition(grid, columns).ok)
    return fail("the grid instance misses the existence precondition");
  int grid_successes = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    hitting_params params;
    params.seed = seed;
    const hit_result res = hit_family_moser_tardos(grid, columns, params);
    if (!res.found) continue;
    if (!grid.is_independent_set(res.hitter)) return fail("grid hitter is not independent");
    bool all = true;
    for (const auto& s : columns) all = all && s.intersects(res.hitter);
    if (!all) return fail("grid hitter misses a column");
    ++grid_successes;
  }
  if (grid_successes < 38)
    return fail("only " + std::to_string(grid_successes) + "/40 grid seeds succeeded");
  return pass(std::to_string(matched) + " instances matched enumeration, " +
              std::to_string(mt_successes_small) + " validated resampling successes, grid " +
              std::to_string(grid_successes) + "/40");
}

// --- criterion 9: cluster expander formulas ---

outcome criterion9() {
  const struct {
    int w, d;
  } params[] = {{8, 2}, {12, 3}, {16, 4}};
  std::string sizes;
  for (const auto [w, d] : params) {
    const cluster_expander ce = gen_cluster_expander(w, d, 5);
    const circuit c = compile_cluster_expander(ce);
    if (!is_formula(c))
      return fail("G_{" + std::to_string(w) + "," + std::to_string(d) + "} is no formula");
    const int limit = 3 * d * (1 << ((w + d - 1) / d));
    if (c.size() > limit)
      return fail("G_{" + std::to_string(w) + "," + std::to_string(d) + "} has " +
                  std::to_string(c.size()) + " gates, over " + std::to_string(limit));

    verify_options opt;
    if (w == 8) {
      opt.mode = verify_mode::symbolic;
      if (verify_mwis_circuit(ce.host, c, opt).verdict != verify_verdict::certified)
        return fail("G_{8,2} not certified");
    } else {
      opt.mode = verify_mode::randomized;
      opt.trials = 200;
      opt.seed = 9;
      const verify_report rep = verify_mwis_circuit(ce.host, c, opt);
      if (rep.verdict != verify_verdict::consistent || rep.trials_run != 200)
        return fail("G_{" + std::to_string(w) + "," + std::to_string(d) + "}: " + rep.note);
    }
    sizes += (sizes.empty() ? "" : ", ") + std::to_string(c.size()) + "<=" + std::to_string(limit);
  }
  return pass("sizes " + sizes + "; (8,2) certified, larger two consistent over 200 trials");
}

// --- criterion 10: formula separator equations and formula audits ---

outcome criterion10() {
  long long equations = 0;
  for (int n = 1; n <= 7; ++n) {
    for (const auto& edges : corpus::connected_up_to_iso(n)) {
      const graph g = from_edges(n, edges);
      const circuit c = compile_treedepth(g, exact_treedepth(g).forest);
      const formula_separator_map m = formula_separators(c, g);
      const auto sups = supports(c);
      const auto sep_of = [&](int v) { return m.sep[static_cast<std::size_t>(v)]; };

      if (!(sep_of(c.output()) ==
            vertex_set::full(n).difference(sups[static_cast<std::size_t>(c.output())])))
        return fail("output separator equation fails (n=" + std::to_string(n) + ")");
      ++equations;
      for (int p = 0; p < c.size(); ++p) {
        const gate& gt = c.at(p);
        if (gt.kind == gate_kind::plus_gate) {
          for (int child : {gt.lhs, gt.rhs}) {
            if (!(sep_of(child) == sep_of(p)))
              return fail("plus-child separator equation fails (n=" + std::to_string(n) + ")");
            ++equations;
          }
        } else if (gt.kind == gate_kind::max_gate) {
          for (int child : {gt.lhs, gt.rhs}) {
            const vertex_set want = sep_of(p)
                                        .unite(sups[static_cast<std::size_t>(p)])
                                        .difference(sups[static_cast<std::size_t>(child)]);
            if (!(sep_of(child) == want))
              return fail("max-child separator equation fails (n=" + std::to_string(n) + ")");
            ++equations;
          }
        }
      }
    }
  }

  // The family argument only reaches corruptions that leave a hittable family,
  // so candidate graphs whose top-branch restrictions both yield unhittable
  // families are skipped; the skip count is reported.
  int refuted = 0;
  int intact_ok = 0;
  int skipped = 0;
  for (const int n : {6, 7}) {
    auto pool = corpus::connected_up_to_iso(n);
    rng r(mix_seed(static_cast<std::uint64_t>(n), 0x10f0));
    r.shuffle(pool);
    int accepted = 0;
    for (std::size_t i = 0; i < pool.size() && accepted < 10; ++i) {
      const graph g = from_edges(n, pool[i]);
      const circuit c = compile_treedepth(g, exact_treedepth(g).forest);
      const gate& out = c.at(c.output());
      if (out.kind != gate_kind::max_gate && out.kind != gate_kind::plus_gate) continue;

      const auto before = monomials(c).monomials;
      bool caught = false;
      for (const int branch : {out.lhs, out.rhs}) {
        const restriction res = restrict_gate_neg_inf(c, branch);
        if (!res.result) continue;
        if (monomials(*res.result).monomials == before) continue;
        const audit_report rep = audit_formula(*res.result, g);
        if (rep.verdict != audit_verdict::refuted) continue;
        if (const auto why = check_refutation(rep, *res.result, g))
          return fail("corrupted formula (n=" + std::to_string(n) + ", graph " +
                      std::to_string(i) + "): " + *why);
        caught = true;
        break;
      }
      if (!caught) {
        ++skipped;
        continue;
      }
      ++refuted;

      const audit_report intact = audit_formula(c, g);
      if (intact.verdict == audit_verdict::refuted)
        return fail("intact formula refuted (n=" + std::to_string(n) + ", graph " +
                    std::to_string(i) + ")");
      ++intact_ok;
      ++accepted;
    }
    if (accepted < 10)
      return fail("only " + std::to_string(accepted) + " refutable instances at n=" +
                  std::to_string(n));
  }
  return pass(std::to_string(equations) + " separator equations hold; " +
              std::to_string(refuted) + " corrupted formulas refuted, " +
              std::to_string(intact_ok) + " intact never refuted, " + std::to_string(skipped) +
              " unhittable-family candidates skipped");
}

const char* criterion_name(int i) {
  switch (i) {
    case 1: return "headline gate bound";
    case 2: return "compiler certification";
    case 3: return "evaluation equivalence";
    case 4: return "product disjointness";
    case 5: return "extraction window and balance";
    case 6: return "circuit falsification end-to-end";
    case 7: return "vertex inclusion probability";
    case 8: return "hitting search soundness";
    case 9: return "cluster expander formulas";
    case 10: return "formula separator machinery";
  }
  return "?";
}

outcome run_criterion(int i) {
  switch (i) {
    case 1: return criterion1();
    case 2: return criterion2();
    case 3: return criterion3();
    case 4: return criterion4();
    case 5: return criterion5();
    case 6: return criterion6();
    case 7: return criterion7();
    case 8: return criterion8();
    case 9: return criterion9();
    case 10: return criterion10();
  }
  return fail("unknown criterion");
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--only" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::cerr << "usage: tropic_acceptance [--only N]\n";
      return 64;
    }
  }
  if (only < 0 || only > 10) {
    std::cerr << "criterion must be 1..10\n";
    return 64;
  }

  int failures = 0;
  for (int i = 1; i <= 10; ++i) {
    if (only != 0 && i != only) continue;
    outcome res;
    try {
      res = run_criterion(i);
    } catch (const std::exception& e) {
      res = fail(std::string("unexpected exception: ") + e.what());
    }
    std::cout << (res.pass ? "PASS" : "FAIL") << " criterion " << i << ": " << criterion_name(i)
              << " — " << res.detail << '\n';
    if (!res.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
