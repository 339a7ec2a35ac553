// Command-line front end: generation, compilation, evaluation, verification,
// audits, hitting-set search, closed-form bounds, and a small bench harness.
// Reports are JSON on stdout (schema 1); artifacts go to files. Exit code 0 on
// success, 2 when an audit or verification refutes, 1 on any error.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tropic/tropic.hpp"

#ifndef TROPIC_VERSION
#define TROPIC_VERSION "0.0.0"
#endif

namespace {

using nlohmann::json;
using namespace tropic;

json base_report(const std::string& command) {
  json r;
  r["schema"] = 1;
  r["command"] = command;
  r["version"] = TROPIC_VERSION;
  return r;
}

json set_to_json(const vertex_set& s) { return json(s.values()); }

json ext_to_json(const ext_real& v) {
  if (v.is_bottom()) return json("-inf");
  return json(v.value());
}

json ext_to_json(const ext_int& v) {
  if (v.is_bottom()) return json("-inf");
  return json(v.value());
}

std::string verdict_name(verify_verdict v) {
  switch (v) {
    case verify_verdict::certified: return "certified";
    case verify_verdict::consistent: return "consistent";
    case verify_verdict::refuted: return "refuted";
  }
  return "?";
}

std::string verdict_name(audit_verdict v) {
  switch (v) {
    case audit_verdict::consistent: return "consistent";
    case audit_verdict::refuted: return "refuted";
    case audit_verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

std::string mode_name(verify_mode m) {
  switch (m) {
    case verify_mode::automatic: return "auto";
    case verify_mode::symbolic: return "symbolic";
    case verify_mode::randomized: return "randomized";
  }
  return "?";
}

json audit_to_json(const audit_report& rep) {
  json r;
  r["verdict"] = verdict_name(rep.verdict);
  r["note"] = rep.note;
  r["smallest_separator"] = rep.smallest_separator;
  r["d"] = rep.d;
  r["x_size"] = rep.x_size;
  r["residual_included"] = rep.family.residual_included;
  json seps = json::array();
  for (const auto& rec : rep.family.records) {
    json e;
    e["separator"] = set_to_json(rec.separator);
    e["gate"] = rec.gate;
    e["iteration"] = rec.iteration;
    seps.push_back(e);
  }
  r["separators"] = seps;
  if (rep.counterexample) {
    r["counterexample"] = set_to_json(*rep.counterexample);
    r["counterexample_monomial_checked"] = rep.counterexample_monomial_checked;
  }
  return r;
}

// Parses "1,2,3" or "1 2 3" into a vertex set.
vertex_set parse_vertex_list(const std::string& text) {
  std::vector<int> xs;
  std::string cur;
  for (char ch : text + ",") {
    if (ch == ',' || ch == ' ') {
      if (!cur.empty()) xs.push_back(std::stoi(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  return vertex_set{std::move(xs)};
}

struct cli_options {
  bool no_timings = false;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
};

int emit(json& report, const cli_options& opt, int code) {
  if (!opt.no_timings) {
    const auto elapsed = std::chrono::steady_clock::now() - opt.start;
    report["timings"]["total_ms"] =
        std::chrono::duration_cast<std::chrono::microseconds>(elapsed).count() / 1000.0;
  }
  std::cout << report.dump(2) << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tropical max-plus circuits for maximum weight independent set"};
  app.require_subcommand(1);
  cli_options opt;
  app.add_flag("--no-timings", opt.no_timings, "omit timing fields (byte-stable reports)");

  const caps limits = caps::from_env();

  // --- gen ---
  auto* gen = app.add_subcommand("gen", "generate a graph");
  gen->require_subcommand(1);
  int grid_rows = 0, grid_cols = 0;
  std::string gen_out;
  auto* gen_grid_cmd = gen->add_subcommand("grid", "rows x cols grid graph");
  gen_grid_cmd->add_option("rows", grid_rows)->required();
  gen_grid_cmd->add_option("cols", grid_cols)->required();
  gen_grid_cmd->add_option("-o,--output", gen_out, "graph file")->required();

  int sdc_n = 0;
  auto* gen_sdc_cmd = gen->add_subcommand("subdivided-clique", "K_n with each edge subdivided");
  gen_sdc_cmd->add_option("n", sdc_n)->required();
  gen_sdc_cmd->add_option("-o,--output", gen_out, "graph file")->required();

  int ce_w = 0, ce_d = 0;
  std::uint64_t ce_seed = 0;
  std::string ce_clusters_out;
  auto* gen_ce_cmd = gen->add_subcommand("cluster-expander", "expander blow-up G_{w,d}");
  gen_ce_cmd->add_option("w", ce_w)->required();
  gen_ce_cmd->add_option("d", ce_d)->required();
  gen_ce_cmd->add_option("--seed", ce_seed);
  gen_ce_cmd->add_option("-o,--output", gen_out, "graph file")->required();
  gen_ce_cmd->add_option("--clusters-out", ce_clusters_out, "clusters file (family format)");

  // --- compile ---
  auto* compile = app.add_subcommand("compile", "compile a graph into a circuit");
  std::string compile_mode, compile_graph, compile_decomp, compile_forest, compile_out,
      compile_graph_out;
  int compile_w = 0, compile_d = 0;
  std::uint64_t compile_seed = 0;
  compile->add_option("--mode", compile_mode, "tw|td|brute|expander")->required();
  compile->add_option("-g,--graph", compile_graph);
  compile->add_option("-d,--decomposition", compile_decomp, "tree decomposition file (tw)");
  compile->add_option("-f,--forest", compile_forest, "treedepth forest file (td)");
  compile->add_option("--w", compile_w, "cluster width parameter");
  compile->add_option("--cluster-d", compile_d, "cluster size parameter");
  compile->add_option("--seed", compile_seed);
  compile->add_option("-o,--output", compile_out, "circuit file")->required();
  compile->add_option("--graph-out", compile_graph_out, "write the generated host graph");

  // --- eval ---
  auto* eval_cmd = app.add_subcommand("eval", "evaluate a circuit on weights");
  std::string eval_graph, eval_circuit, eval_weights;
  eval_cmd->add_option("-g,--graph", eval_graph)->required();
  eval_cmd->add_option("-c,--circuit", eval_circuit)->required();
  eval_cmd->add_option("-w,--weights", eval_weights)->required();

  // --- verify ---
  auto* verify_cmd = app.add_subcommand("verify", "check a circuit against the optimum");
  std::string verify_graph, verify_circuit, verify_mode_name = "auto";
  int verify_trials = 200;
  std::uint64_t verify_seed = 0;
  verify_cmd->add_option("-g,--graph", verify_graph)->required();
  verify_cmd->add_option("-c,--circuit", verify_circuit)->required();
  verify_cmd->add_option("--mode", verify_mode_name, "auto|symbolic|randomized");
  verify_cmd->add_option("--trials", verify_trials);
  verify_cmd->add_option("--seed", verify_seed);

  // --- audit ---
  auto* audit = app.add_subcommand("audit", "separator-family audit");
  audit->require_subcommand(1);
  std::string audit_graph, audit_circuit_path, audit_x;
  auto* audit_circuit_cmd = audit->add_subcommand("circuit", "audit any circuit");
  audit_circuit_cmd->add_option("-g,--graph", audit_graph)->required();
  audit_circuit_cmd->add_option("-c,--circuit", audit_circuit_path)->required();
  audit_circuit_cmd->add_option("--x", audit_x, "focus set X, comma-separated (default V)");
  auto* audit_formula_cmd = audit->add_subcommand("formula", "treedepth audit of a formula");
  audit_formula_cmd->add_option("-g,--graph", audit_graph)->required();
  audit_formula_cmd->add_option("-c,--circuit", audit_circuit_path)->required();

  // --- hit ---
  auto* hit = app.add_subcommand("hit", "find an independent set hitting a family");
  std::string hit_mode, hit_graph, hit_family, hit_clusters_path;
  std::uint64_t hit_seed = 0;
  long long hit_rounds = 1'000'000;
  hit->add_option("--mode", hit_mode, "mt|exact|cluster")->required();
  hit->add_option("-g,--graph", hit_graph)->required();
  hit->add_option("-F,--family", hit_family)->required();
  hit->add_option("--clusters", hit_clusters_path, "clusters file (cluster mode)");
  hit->add_option("--seed", hit_seed);
  hit->add_option("--max-rounds", hit_rounds);

  // --- bound ---
  auto* bound = app.add_subcommand("bound", "closed-form gate lower bounds");
  bound->require_subcommand(1);
  long long bound_tw = 0, bound_k = 0, bound_td = 0, bound_d = 0;
  auto* bound_tw_cmd = bound->add_subcommand("tw-circuit", "e^{(tw/4)/(6d)}/6");
  bound_tw_cmd->add_option("--tw", bound_tw)->required();
  bound_tw_cmd->add_option("--d", bound_d)->required();
  auto* bound_minor_cmd = bound->add_subcommand("minor-circuit", "e^{7k/(120d4^d)}/30");
  bound_minor_cmd->add_option("--k", bound_k)->required();
  bound_minor_cmd->add_option("--d", bound_d)->required();
  auto* bound_td_cmd = bound->add_subcommand("td-formula", "e^{td/(12d)}/12");
  bound_td_cmd->add_option("--td", bound_td)->required();
  bound_td_cmd->add_option("--d", bound_d)->required();

  // --- bench ---
  auto* bench = app.add_subcommand("bench", "size-vs-bound tables");
  std::string bench_family;
  int bench_min = 2, bench_max = 4, bench_step = 1, bench_d = 2;
  std::uint64_t bench_seed = 0;
  bench->add_option("--family", bench_family, "grid|cluster")->required();
  bench->add_option("--min", bench_min);
  bench->add_option("--max", bench_max);
  bench->add_option("--step", bench_step);
  bench->add_option("--d", bench_d, "cluster size (cluster family)");
  bench->add_option("--seed", bench_seed);

  CLI11_PARSE(app, argc, argv);

  try {
    // gen
    if (gen_grid_cmd->parsed() || gen_sdc_cmd->parsed() || gen_ce_cmd->parsed()) {
      json r;
      if (gen_grid_cmd->parsed()) {
        r = base_report("gen grid");
        const graph g = gen_grid(grid_rows, grid_cols);
        write_file(gen_out, print_graph(g));
        r["results"] = {{"vertices", g.vertex_count()}, {"edges", g.edge_count()},
                        {"output", gen_out}};
      } else if (gen_sdc_cmd->parsed()) {
        r = base_report("gen subdivided-clique");
        const graph g = gen_subdivided_clique(sdc_n);
        write_file(gen_out, print_graph(g));
        r["results"] = {{"vertices", g.vertex_count()}, {"edges", g.edge_count()},
                        {"output", gen_out}};
      } else {
        r = base_report("gen cluster-expander");
        const cluster_expander ce = gen_cluster_expander(ce_w, ce_d, ce_seed);
        write_file(gen_out, print_graph(ce.host));
        r["results"] = {{"vertices", ce.host.vertex_count()},
                        {"edges", ce.host.edge_count()},
                        {"clusters", ce.model.clusters.size()},
                        {"output", gen_out},
                        {"seed", ce_seed}};
        if (!ce_clusters_out.empty()) {
          write_file(ce_clusters_out, print_family(ce.model.clusters));
          r["results"]["clusters_output"] = ce_clusters_out;
        }
      }
      return emit(r, opt, 0);
    }

    // compile
    if (compile->parsed()) {
      json r = base_report("compile");
      r["results"]["mode"] = compile_mode;
      circuit c = [&]() -> circuit {
        if (compile_mode == "tw") {
          if (compile_graph.empty()) throw invalid_input("compile: --graph is required");
          const graph g = parse_graph(read_file(compile_graph));
          tree_decomposition td;
          if (compile_decomp.empty()) {
            td = heuristic_tree_decomposition(g);
            r["results"]["decomposition"] = "heuristic";
          } else {
            td = parse_tree_decomposition(read_file(compile_decomp));
            r["results"]["decomposition"] = compile_decomp;
          }
          r["results"]["width"] = validate_tree_decomposition(g, td);
          return compile_treewidth(g, td);
        }
        if (compile_mode == "td") {
          if (compile_graph.empty()) throw invalid_input("compile: --graph is required");
          const graph g = parse_graph(read_file(compile_graph));
          treedepth_forest f;
          if (compile_forest.empty()) {
            f = heuristic_treedepth_forest(g);
            r["results"]["forest"] = "heuristic";
          } else {
            f = parse_treedepth_forest(read_file(compile_forest));
            r["results"]["forest"] = compile_forest;
          }
          r["results"]["depth"] = validate_treedepth_forest(g, f);
          return compile_treedepth(g, f);
        }
        if (compile_mode == "brute") {
          if (compile_graph.empty()) throw invalid_input("compile: --graph is required");
          const graph g = parse_graph(read_file(compile_graph));
          return compile_bruteforce(g, limits);
        }
        if (compile_mode == "expander" || compile_mode == "cluster") {
          const cluster_expander ce = gen_cluster_expander(compile_w, compile_d, compile_seed);
          if (!compile_graph_out.empty()) {
            write_file(compile_graph_out, print_graph(ce.host));
            r["results"]["graph_out"] = compile_graph_out;
          }
          r["results"]["host_vertices"] = ce.host.vertex_count();
          return compile_cluster_expander(ce, limits);
        }
        throw invalid_input("compile: unknown mode '" + compile_mode + "'");
      }();
      write_file(compile_out, print_circuit(c));
      r["results"]["gates"] = c.size();
      r["results"]["interior_gates"] = c.interior_count();
      r["results"]["formula"] = is_formula(c);
      r["results"]["output"] = compile_out;
      return emit(r, opt, 0);
    }

    // eval
    if (eval_cmd->parsed()) {
      json r = base_report("eval");
      const graph g = parse_graph(read_file(eval_graph));
      const circuit c = parse_circuit(read_file(eval_circuit));
      const std::vector<ext_real> w = parse_weights(read_file(eval_weights));
      if (static_cast<int>(w.size()) != g.vertex_count())
        throw invalid_input("eval: got " + std::to_string(w.size()) + " weights for " +
                            std::to_string(g.vertex_count()) + " vertices");
      r["results"]["value"] = ext_to_json(evaluate<double>(c, w));
      return emit(r, opt, 0);
    }

    // verify
    if (verify_cmd->parsed()) {
      json r = base_report("verify");
      const graph g = parse_graph(read_file(verify_graph));
      const circuit c = parse_circuit(read_file(verify_circuit));
      verify_options vo;
      vo.trials = verify_trials;
      vo.seed = verify_seed;
      vo.limits = limits;
      if (verify_mode_name == "auto") vo.mode = verify_mode::automatic;
      else if (verify_mode_name == "symbolic") vo.mode = verify_mode::symbolic;
      else if (verify_mode_name == "randomized") vo.mode = verify_mode::randomized;
      else throw invalid_input("verify: unknown mode '" + verify_mode_name + "'");
      const verify_report rep = verify_mwis_circuit(g, c, vo);
      r["results"]["verdict"] = verdict_name(rep.verdict);
      r["results"]["mode_used"] = mode_name(rep.mode_used);
      r["results"]["trials"] = rep.trials_run;
      r["results"]["note"] = rep.note;
      r["results"]["seed"] = verify_seed;
      if (rep.verdict == verify_verdict::refuted) {
        json w = json::array();
        for (const auto& x : rep.counterexample) w.push_back(ext_to_json(x));
        r["results"]["counterexample_weights"] = w;
        r["results"]["expected"] = ext_to_json(rep.expected);
        r["results"]["got"] = ext_to_json(rep.got);
      }
      return emit(r, opt, rep.verdict == verify_verdict::refuted ? 2 : 0);
    }

    // audit
    if (audit_circuit_cmd->parsed() || audit_formula_cmd->parsed()) {
      json r = base_report(audit_circuit_cmd->parsed() ? "audit circuit" : "audit formula");
      const graph g = parse_graph(read_file(audit_graph));
      const circuit c = parse_circuit(read_file(audit_circuit_path));
      audit_report rep;
      if (audit_circuit_cmd->parsed()) {
        vertex_set x;
        if (!audit_x.empty()) x = parse_vertex_list(audit_x);
        rep = audit_circuit(c, g, x, limits);
      } else {
        rep = audit_formula(c, g, limits);
      }
      r["results"] = audit_to_json(rep);
      return emit(r, opt, rep.verdict == audit_verdict::refuted ? 2 : 0);
    }

    // hit
    if (hit->parsed()) {
      json r = base_report("hit");
      const graph g = parse_graph(read_file(hit_graph));
      const set_family family = parse_family(read_file(hit_family));
      r["results"]["mode"] = hit_mode;
      r["results"]["seed"] = hit_seed;
      if (hit_mode == "exact") {
        const auto res = hit_family_exact(g, family, limits);
        r["results"]["found"] = res.has_value();
        r["results"]["proof_of_absence"] = !res.has_value();
        if (res) r["results"]["hitter"] = set_to_json(*res);
      } else if (hit_mode == "mt") {
        const precondition_report pre = check_lll_precondition(g, family);
        r["results"]["precondition"] = {{"ok", pre.ok},
                                        {"d", pre.d},
                                        {"k", pre.k},
                                        {"lhs", static_cast<double>(pre.lhs)},
                                        {"rhs", static_cast<double>(pre.rhs)}};
        hitting_params params;
        params.seed = hit_seed;
        params.resample_cap = hit_rounds;
        const hit_result res = hit_family_moser_tardos(g, family, params);
        r["results"]["found"] = res.found;
        r["results"]["resamples"] = res.resamples;
        if (res.found) r["results"]["hitter"] = set_to_json(res.hitter);
      } else if (hit_mode == "cluster") {
        if (hit_clusters_path.empty())
          throw invalid_input("hit: cluster mode needs --clusters");
        const set_family clusters = parse_family(read_file(hit_clusters_path));
        induced_minor_model model;
        model.clusters = clusters;
        // Pattern adjacency is recovered from the host: the model must satisfy
        // the adjacency-iff condition anyway, so any host edge between two
        // clusters realizes the pattern edge.
        std::vector<int> owner(static_cast<std::size_t>(g.vertex_count()), -1);
        for (std::size_t i = 0; i < clusters.size(); ++i)
          for (int v : clusters[i]) owner[static_cast<std::size_t>(v)] = static_cast<int>(i);
        std::vector<std::pair<int, int>> pat_edges;
        for (const auto& [u, v] : g.edges()) {
          const int cu = owner[static_cast<std::size_t>(u)];
          const int cv = owner[static_cast<std::size_t>(v)];
          if (cu >= 0 && cv >= 0 && cu != cv)
            pat_edges.emplace_back(std::min(cu, cv), std::max(cu, cv));
        }
        model.pattern = graph::build(static_cast<int>(clusters.size()), pat_edges);
        hitting_params params;
        params.seed = hit_seed;
        params.resample_cap = hit_rounds;
        const hit_result res = hit_clusters(g, model, family, params, limits);
        r["results"]["found"] = res.found;
        r["results"]["resamples"] = res.resamples;
        if (res.found) r["results"]["hitter"] = set_to_json(res.hitter);
      } else {
        throw invalid_input("hit: unknown mode '" + hit_mode + "'");
      }
      return emit(r, opt, 0);
    }

    // bound
    if (bound_tw_cmd->parsed() || bound_minor_cmd->parsed() || bound_td_cmd->parsed()) {
      json r = base_report("bound");
      bound_query q;
      if (bound_tw_cmd->parsed()) {
        q.kind = bound_kind::treewidth_circuit;
        q.parameter = bound_tw;
        r["results"]["kind"] = "tw-circuit";
      } else if (bound_minor_cmd->parsed()) {
        q.kind = bound_kind::minor_circuit;
        q.parameter = bound_k;
        r["results"]["kind"] = "minor-circuit";
      } else {
        q.kind = bound_kind::treedepth_formula;
        q.parameter = bound_td;
        r["results"]["kind"] = "td-formula";
      }
      q.d = bound_d;
      const bound_result res = bound_gates(q);
      r["results"]["parameter"] = q.parameter;
      r["results"]["d"] = q.d;
      r["results"]["k"] = static_cast<double>(res.k);
      r["results"]["bound"] = static_cast<double>(res.bound);
      r["results"]["log10_bound"] = static_cast<double>(std::log10(res.bound));
      r["results"]["formula"] = res.formula;
      r["results"]["vacuous"] = res.bound < 1.0L;
      return emit(r, opt, 0);
    }

    // bench
    if (bench->parsed()) {
      json r = base_report("bench");
      json rows = json::array();
      if (bench_family == "grid") {
        for (int k = bench_min; k <= bench_max; k += bench_step) {
          json row;
          row["instance"] = std::to_string(k) + "x" + std::to_string(k);
          try {
            const graph g = gen_grid(k, k);
            const tree_decomposition td = heuristic_tree_decomposition(g);
            const treedepth_forest f = heuristic_treedepth_forest(g);
            const int width = validate_tree_decomposition(g, td);
            const int depth = validate_treedepth_forest(g, f);
            const circuit ctw = compile_treewidth(g, td);
            const circuit ctd = compile_treedepth(g, f);
            row["vertices"] = g.vertex_count();
            row["heuristic_width"] = width;
            row["heuristic_depth"] = depth;
            row["tw_gates"] = ctw.size();
            row["td_gates"] = ctd.size();
            // Grid treewidth is k exactly; the bound column uses it.
            bound_query q{bound_kind::treewidth_circuit, k, std::max(1, g.max_degree())};
            row["tw_bound"] = static_cast<double>(bound_gates(q).bound);
          } catch (const std::exception& e) {
            row["error"] = e.what();
          }
          rows.push_back(row);
        }
      } else if (bench_family == "cluster") {
        for (int w = bench_min; w <= bench_max; w += bench_step) {
          json row;
          row["instance"] = "G_{" + std::to_string(w) + "," + std::to_string(bench_d) + "}";
          try {
            const cluster_expander ce = gen_cluster_expander(w, bench_d, bench_seed);
            const circuit c = compile_cluster_expander(ce, limits);
            const double size_bound =
                3.0 * bench_d * std::pow(2.0, static_cast<double>(w) / bench_d);
            row["vertices"] = ce.host.vertex_count();
            row["gates"] = c.size();
            row["size_bound"] = size_bound;
            row["within_bound"] = c.size() <= size_bound;
          } catch (const std::exception& e) {
            row["error"] = e.what();
          }
          rows.push_back(row);
        }
      } else {
        throw invalid_input("bench: unknown family '" + bench_family + "'");
      }
      r["results"]["rows"] = rows;
      return emit(r, opt, 0);
    }

    throw invalid_input("no subcommand executed");
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
