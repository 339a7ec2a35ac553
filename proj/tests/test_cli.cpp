#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <string>
#include <sys/wait.h>

#include "json.hpp"
#include "tropic/tropic.hpp"

using namespace tropic;
using nlohmann::json;

namespace {

struct run_result {
  int code = -1;
  std::string out;
};

run_result run_shell(const std::string& command) {
  FILE* pipe = popen((command + " 2>/dev/null").c_str(), "r");
  REQUIRE(pipe != nullptr);
  run_result res;
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, got);
  const int status = pclose(pipe);
  if (WIFEXITED(status)) res.code = WEXITSTATUS(status);
  return res;
}

run_result run_cli(const std::string& args) {
  return run_shell(std::string(TROPIC_CLI_PATH) + " " + args);
}

std::string scratch_dir() {
  char tmpl[] = "/tmp/tropic-cli-XXXXXX";
  REQUIRE(mkdtemp(tmpl) != nullptr);
  return std::string(tmpl);
}

json results_of(const run_result& res) {
  const json r = json::parse(res.out);
  REQUIRE(r.contains("results"));
  return r["results"];
}

graph grid3() { return gen_grid(3, 3); }

// First single-gate restriction that loses a monomial; `accept` can narrow
// the pick further (e.g. to corruptions the audit actually refutes).
template <typename Accept>
circuit corrupt(const circuit& c, Accept&& accept) {
  const auto intact = monomials(c).monomials;
  for (int v = c.size() - 1; v >= 0; --v) {
    if (v == c.output()) continue;
    const restriction res = restrict_gate_neg_inf(c, v);
    if (!res.result) continue;
    if (monomials(*res.result).monomials == intact) continue;
    if (!accept(*res.result)) continue;
    return *res.result;
  }
  FAIL("no corruption accepted");
  return c;
}

}  // namespace

TEST_CASE("generation commands", "[cli]") {
  const std::string dir = scratch_dir();

  const auto grid = run_cli("gen grid 3 3 -o " + dir + "/grid.gr");
  REQUIRE(grid.code == 0);
  const json gr = results_of(grid);
  CHECK(gr["vertices"] == 9);
  CHECK(gr["edges"] == 12);
  CHECK(parse_graph(read_file(dir + "/grid.gr")).vertex_count() == 9);

  const auto sdc = run_cli("gen subdivided-clique 4 -o " + dir + "/sdc.gr");
  REQUIRE(sdc.code == 0);
  CHECK(results_of(sdc)["vertices"] == 10);

  const auto ce = run_cli("gen cluster-expander 8 2 --seed 5 -o " + dir + "/ce.gr" +
                          " --clusters-out " + dir + "/ce.clusters");
  REQUIRE(ce.code == 0);
  CHECK(results_of(ce)["clusters"] == 4);
  const set_family clusters = parse_family(read_file(dir + "/ce.clusters"));
  REQUIRE(clusters.size() == 4);
  CHECK(clusters[0] == vertex_set{0, 1});
}

TEST_CASE("compile and eval commands", "[cli]") {
  const std::string dir = scratch_dir();
  write_file(dir + "/p5.gr", print_graph(gen_grid(1, 5)));

  const auto comp = run_cli("compile --mode tw -g " + dir + "/p5.gr -o " + dir + "/p5.circ");
  REQUIRE(comp.code == 0);
  const json cr = results_of(comp);
  CHECK(cr["width"] == 1);
  CHECK(cr["gates"].get<int>() > 0);
  const circuit c = parse_circuit(read_file(dir + "/p5.circ"));
  CHECK(c.size() == cr["gates"].get<int>());

  write_file(dir + "/w.txt", "1 2 -inf 4 5\n");
  const auto ev = run_cli("eval -g " + dir + "/p5.gr -c " + dir + "/p5.circ -w " + dir + "/w.txt");
  REQUIRE(ev.code == 0);
  CHECK(results_of(ev)["value"].get<double>() == 7.0);

  const auto exp = run_cli("compile --mode expander --w 8 --cluster-d 2 --seed 5 -o " + dir +
                           "/ce.circ --graph-out " + dir + "/ce.gr");
  REQUIRE(exp.code == 0);
  const json xr = results_of(exp);
  CHECK(xr["formula"] == true);
  CHECK(xr["host_vertices"] == 8);
  CHECK(xr["gates"].get<int>() <= 96);

  const auto alias = run_cli("compile --mode cluster --w 8 --cluster-d 2 --seed 5 -o " + dir +
                             "/ce2.circ");
  CHECK(alias.code == 0);
}

TEST_CASE("verify command exit codes", "[cli]") {
  const std::string dir = scratch_dir();
  const graph g = grid3();
  write_file(dir + "/g.gr", print_graph(g));
  const circuit c = compile_treewidth(g, exact_treewidth(g).decomposition);
  write_file(dir + "/good.circ", print_circuit(c));

  const auto good = run_cli("verify -g " + dir + "/g.gr -c " + dir + "/good.circ");
  REQUIRE(good.code == 0);
  CHECK(results_of(good)["verdict"] == "certified");

  const circuit bad = corrupt(c, [](const circuit&) { return true; });
  write_file(dir + "/bad.circ", print_circuit(bad));
  const auto refuted = run_cli("verify -g " + dir + "/g.gr -c " + dir + "/bad.circ");
  REQUIRE(refuted.code == 2);
  const json rr = results_of(refuted);
  CHECK(rr["verdict"] == "refuted");
  CHECK(rr.contains("counterexample_weights"));
  CHECK(rr.contains("expected"));
  CHECK(rr.contains("got"));
}

TEST_CASE("audit command exit codes", "[cli]") {
  const std::string dir = scratch_dir();
  const graph g = grid3();
  write_file(dir + "/g.gr", print_graph(g));
  const circuit c = compile_treewidth(g, exact_treewidth(g).decomposition);
  write_file(dir + "/good.circ", print_circuit(c));

  const auto good = run_cli("audit circuit -g " + dir + "/g.gr -c " + dir + "/good.circ");
  REQUIRE(good.code == 0);
  const json gr = results_of(good);
  CHECK(gr["verdict"] == "consistent");
  CHECK(gr["residual_included"] == true);
  CHECK(gr["separators"].is_array());

  const circuit bad = corrupt(c, [&](const circuit& cand) {
    return audit_circuit(cand, g).verdict == audit_verdict::refuted;
  });
  write_file(dir + "/bad.circ", print_circuit(bad));
  const auto refuted = run_cli("audit circuit -g " + dir + "/g.gr -c " + dir + "/bad.circ");
  REQUIRE(refuted.code == 2);
  const json rr = results_of(refuted);
  CHECK(rr["verdict"] == "refuted");
  CHECK(rr["counterexample_monomial_checked"] == true);

  const graph p7 = gen_grid(1, 7);
  write_file(dir + "/p7.gr", print_graph(p7));
  write_file(dir + "/p7.circ", print_circuit(compile_treedepth(p7, exact_treedepth(p7).forest)));
  const auto formula = run_cli("audit formula -g " + dir + "/p7.gr -c " + dir + "/p7.circ");
  REQUIRE(formula.code == 0);
  CHECK(results_of(formula)["verdict"] == "consistent");
}

TEST_CASE("hit command", "[cli]") {
  const std::string dir = scratch_dir();
  const graph c4 = graph::build(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  write_file(dir + "/c4.gr", print_graph(c4));
  write_file(dir + "/fam.txt", "0 1\n2 3\n");

  const auto exact = run_cli("hit --mode exact -g " + dir + "/c4.gr -F " + dir + "/fam.txt");
  REQUIRE(exact.code == 0);
  const json er = results_of(exact);
  CHECK(er["found"] == true);
  CHECK(er["proof_of_absence"] == false);
  CHECK(er["hitter"].is_array());

  write_file(dir + "/none.txt", "0\n1\n");
  const auto absent = run_cli("hit --mode exact -g " + dir + "/c4.gr -F " + dir + "/none.txt");
  REQUIRE(absent.code == 0);
  CHECK(results_of(absent)["found"] == false);
  CHECK(results_of(absent)["proof_of_absence"] == true);

  const auto mt = run_cli("hit --mode mt --seed 3 -g " + dir + "/c4.gr -F " + dir + "/fam.txt");
  REQUIRE(mt.code == 0);
  const json mr = results_of(mt);
  CHECK(mr["found"] == true);
  CHECK(mr["precondition"].contains("ok"));
  CHECK(mr["precondition"]["d"] == 2);

  const auto host = run_cli("gen cluster-expander 8 2 --seed 5 -o " + dir + "/ce.gr" +
                            " --clusters-out " + dir + "/ce.clusters");
  REQUIRE(host.code == 0);
  write_file(dir + "/cfam.txt", "0 2 4 6\n0 3 5 7\n");
  const auto cluster = run_cli("hit --mode cluster -g " + dir + "/ce.gr -F " + dir +
                               "/cfam.txt --clusters " + dir + "/ce.clusters");
  REQUIRE(cluster.code == 0);
  const json clr = results_of(cluster);
  CHECK(clr["found"] == true);
  CHECK(clr["hitter"] == json::array({0}));
}

TEST_CASE("bound command", "[cli]") {
  const auto tw = run_cli("--no-timings bound tw-circuit --tw 5000 --d 4");
  REQUIRE(tw.code == 0);
  const json tr = results_of(tw);
  CHECK(tr["bound"].get<double>() >= 1e21);
  CHECK(tr["vacuous"] == false);
  CHECK(tr["formula"] == "e^{(tw/4)/(6d)}/6");

  const auto again = run_cli("--no-timings bound tw-circuit --tw 5000 --d 4");
  CHECK(again.out == tw.out);

  const auto td = run_cli("bound td-formula --td 24 --d 2");
  REQUIRE(td.code == 0);
  CHECK(results_of(td)["vacuous"] == true);
}

TEST_CASE("bench command", "[cli]") {
  const auto res = run_cli("bench --family grid --min 2 --max 3");
  REQUIRE(res.code == 0);
  const json rows = results_of(res)["rows"];
  REQUIRE(rows.size() == 2);
  CHECK(rows[0]["instance"] == "2x2");
  CHECK(rows[0]["tw_gates"].get<int>() > 0);
  CHECK(rows[1]["heuristic_width"].get<int>() >= 2);
}

TEST_CASE("error handling and caps", "[cli]") {
  const auto usage = run_cli("verify");
  CHECK(usage.code != 0);
  CHECK(usage.code != 2);

  const auto missing = run_cli("eval -g /nonexistent -c /nope -w /nada");
  CHECK(missing.code == 1);

  const std::string dir = scratch_dir();
  write_file(dir + "/big.gr", print_graph(graph::build(26, {})));
  const auto blocked = run_cli("compile --mode brute -g " + dir + "/big.gr -o " + dir + "/b.circ");
  CHECK(blocked.code == 1);

  const auto allowed = run_shell("TROPIC_MWIS_CAPS=brute=30 " + std::string(TROPIC_CLI_PATH) +
                                 " compile --mode brute -g " + dir + "/big.gr -o " + dir +
                                 "/b.circ");
  REQUIRE(allowed.code == 0);
  CHECK(parse_circuit(read_file(dir + "/b.circ")).size() > 0);
}
