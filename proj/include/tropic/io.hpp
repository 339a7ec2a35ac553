#pragma once

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tropic/circuit.hpp"
#include "tropic/decomposition.hpp"
#include "tropic/error.hpp"
#include "tropic/graph.hpp"
#include "tropic/vertex_set.hpp"
#include "tropic/weight.hpp"

namespace tropic {

using set_family = std::vector<vertex_set>;

namespace detail {

inline std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) lines.push_back(line);
    if (end == text.size()) break;
    start = end + 1;
  }
  return lines;
}

inline std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

inline long long parse_int(std::string_view token, std::size_t line_no) {
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(token.begin(), token.end(), value);
  if (ec != std::errc{} || ptr != token.end())
    throw parse_error("line " + std::to_string(line_no) + ": expected integer, got '" +
                      std::string(token) + "'");
  return value;
}

}  // namespace detail

// --- graph: "p is <n> <m>" header, then "e <u> <v>" lines, 0-based ---

inline std::string print_graph(const graph& g) {
  std::ostringstream out;
  out << "p is " << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const auto& [u, v] : g.edges()) out << "e " << u << ' ' << v << '\n';
  return out.str();
}

inline graph parse_graph(std::string_view text) {
  const auto lines = detail::split_lines(text);
  if (lines.empty()) throw parse_error("graph: empty input");
  const auto header = detail::split_tokens(lines[0]);
  if (header.size() != 4 || header[0] != "p" || header[1] != "is")
    throw parse_error("graph: line 1: expected 'p is <n> <m>'");
  const long long n = detail::parse_int(header[2], 1);
  const long long m = detail::parse_int(header[3], 1);
  std::vector<std::pair<int, int>> edges;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto t = detail::split_tokens(lines[i]);
    if (t.size() != 3 || t[0] != "e")
      throw parse_error("graph: line " + std::to_string(i + 1) + ": expected 'e <u> <v>'");
    edges.emplace_back(static_cast<int>(detail::parse_int(t[1], i + 1)),
                       static_cast<int>(detail::parse_int(t[2], i + 1)));
  }
  if (static_cast<long long>(edges.size()) != m)
    throw parse_error("graph: header declares " + std::to_string(m) + " edges, found " +
                      std::to_string(edges.size()));
  return graph::build(static_cast<int>(n), edges);
}

// --- tree decomposition: "s td <bags> <width+1> <n>", "b <id> <v...>" with
// 1-based bag ids and 0-based vertices, then "<i> <j>" tree edges ---

inline std::string print_tree_decomposition(const tree_decomposition& t, int n) {
  std::ostringstream out;
  out << "s td " << t.bags.size() << ' ' << t.width() + 1 << ' ' << n << '\n';
  for (std::size_t i = 0; i < t.bags.size(); ++i) {
    out << "b " << i + 1;
    for (int v : t.bags[i]) out << ' ' << v;
    out << '\n';
  }
  std::vector<std::pair<int, int>> es;
  for (const auto& [a, b] : t.edges) es.emplace_back(std::min(a, b) + 1, std::max(a, b) + 1);
  std::sort(es.begin(), es.end());
  for (const auto& [a, b] : es) out << a << ' ' << b << '\n';
  return out.str();
}

inline tree_decomposition parse_tree_decomposition(std::string_view text) {
  const auto lines = detail::split_lines(text);
  if (lines.empty()) throw parse_error("tree decomposition: empty input");
  const auto header = detail::split_tokens(lines[0]);
  if (header.size() != 5 || header[0] != "s" || header[1] != "td")
    throw parse_error("tree decomposition: line 1: expected 's td <bags> <width+1> <n>'");
  const long long b = detail::parse_int(header[2], 1);
  const long long w1 = detail::parse_int(header[3], 1);
  tree_decomposition t;
  std::size_t i = 1;
  for (; i < lines.size(); ++i) {
    const auto tok = detail::split_tokens(lines[i]);
    if (tok.empty() || tok[0] != "b") break;
    if (tok.size() < 2)
      throw parse_error("tree decomposition: line " + std::to_string(i + 1) + ": bag id missing");
    if (detail::parse_int(tok[1], i + 1) != static_cast<long long>(t.bags.size()) + 1)
      throw parse_error("tree decomposition: line " + std::to_string(i + 1) +
                        ": bag ids must run 1.." + std::to_string(b));
    std::vector<int> members;
    for (std::size_t k = 2; k < tok.size(); ++k)
      members.push_back(static_cast<int>(detail::parse_int(tok[k], i + 1)));
    t.bags.emplace_back(std::move(members));
  }
  if (static_cast<long long>(t.bags.size()) != b)
    throw parse_error("tree decomposition: header declares " + std::to_string(b) +
                      " bags, found " + std::to_string(t.bags.size()));
  for (; i < lines.size(); ++i) {
    const auto tok = detail::split_tokens(lines[i]);
    if (tok.size() != 2)
      throw parse_error("tree decomposition: line " + std::to_string(i + 1) +
                        ": expected tree edge '<i> <j>'");
    const long long x = detail::parse_int(tok[0], i + 1);
    const long long y = detail::parse_int(tok[1], i + 1);
    if (x < 1 || x > b || y < 1 || y > b)
      throw parse_error("tree decomposition: line " + std::to_string(i + 1) +
                        ": bag id out of range");
    t.edges.emplace_back(static_cast<int>(x) - 1, static_cast<int>(y) - 1);
  }
  if (t.width() + 1 != w1)
    throw parse_error("tree decomposition: header declares width " + std::to_string(w1 - 1) +
                      ", bags give " + std::to_string(t.width()));
  return t;
}

// --- treedepth forest: "r <v>" roots, then "c <parent> <child>" lines ---

inline std::string print_treedepth_forest(const treedepth_forest& f) {
  std::ostringstream out;
  for (int v = 0; v < f.vertex_count(); ++v)
    if (f.parent[static_cast<std::size_t>(v)] == -1) out << "r " << v << '\n';
  for (int v = 0; v < f.vertex_count(); ++v)
    if (f.parent[static_cast<std::size_t>(v)] != -1)
      out << "c " << f.parent[static_cast<std::size_t>(v)] << ' ' << v << '\n';
  return out.str();
}

inline treedepth_forest parse_treedepth_forest(std::string_view text) {
  const auto lines = detail::split_lines(text);
  const int n = static_cast<int>(lines.size());
  treedepth_forest f;
  f.parent.assign(static_cast<std::size_t>(n), -2);  // -2 = unseen
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto tok = detail::split_tokens(lines[i]);
    int child = -1;
    int parent = -1;
    if (tok.size() == 2 && tok[0] == "r") {
      child = static_cast<int>(detail::parse_int(tok[1], i + 1));
    } else if (tok.size() == 3 && tok[0] == "c") {
      parent = static_cast<int>(detail::parse_int(tok[1], i + 1));
      child = static_cast<int>(detail::parse_int(tok[2], i + 1));
    } else {
      throw parse_error("treedepth forest: line " + std::to_string(i + 1) +
                        ": expected 'r <v>' or 'c <parent> <child>'");
    }
    if (child < 0 || child >= n || parent < -1 || parent >= n)
      throw parse_error("treedepth forest: line " + std::to_string(i + 1) +
                        ": vertex out of range (vertices are 0.." + std::to_string(n - 1) + ")");
    if (f.parent[static_cast<std::size_t>(child)] != -2)
      throw parse_error("treedepth forest: vertex " + std::to_string(child) +
                        " assigned twice");
    f.parent[static_cast<std::size_t>(child)] = parent;
  }
  return f;
}

// --- set family: one set per line, space-separated vertex ids ---

inline std::string print_family(const set_family& family) {
  std::ostringstream out;
  for (const auto& s : family) {
    bool first = true;
    for (int v : s) {
      if (!first) out << ' ';
      out << v;
      first = false;
    }
    out << '\n';
  }
  return out.str();
}

inline set_family parse_family(std::string_view text) {
  set_family family;
  const auto lines = detail::split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::vector<int> members;
    for (const auto tok : detail::split_tokens(lines[i]))
      members.push_back(static_cast<int>(detail::parse_int(tok, i + 1)));
    if (members.empty())
      throw parse_error("family: line " + std::to_string(i + 1) + ": empty set");
    family.emplace_back(std::move(members));
  }
  return family;
}

// --- circuit: "v <id> <vertex>" / "z <id>" / "m <id> <a> <b>" /
// "p <id> <a> <b>" lines with consecutive ids, then "o <id>" ---

inline std::string print_circuit(const circuit& c) {
  std::ostringstream out;
  for (int i = 0; i < c.size(); ++i) {
    const gate& g = c.at(i);
    switch (g.kind) {
      case gate_kind::variable:
        out << "v " << i << ' ' << g.var << '\n';
        break;
      case gate_kind::zero:
        out << "z " << i << '\n';
        break;
      case gate_kind::max_gate:
        out << "m " << i << ' ' << g.lhs << ' ' << g.rhs << '\n';
        break;
      case gate_kind::plus_gate:
        out << "p " << i << ' ' << g.lhs << ' ' << g.rhs << '\n';
        break;
    }
  }
  out << "o " << c.output() << '\n';
  return out.str();
}

inline circuit parse_circuit(std::string_view text) {
  const auto lines = detail::split_lines(text);
  if (lines.empty()) throw parse_error("circuit: empty input");
  std::vector<gate> gates;
  int output = -1;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto tok = detail::split_tokens(lines[i]);
    const std::size_t line_no = i + 1;
    if (tok.empty()) continue;
    if (tok[0] == "o") {
      if (tok.size() != 2)
        throw parse_error("circuit: line " + std::to_string(line_no) + ": expected 'o <id>'");
      if (output != -1)
        throw parse_error("circuit: line " + std::to_string(line_no) + ": second output line");
      output = static_cast<int>(detail::parse_int(tok[1], line_no));
      if (i + 1 != lines.size())
        throw parse_error("circuit: output line must come last");
      continue;
    }
    const auto expect_id = [&](std::string_view id_token) {
      const long long id = detail::parse_int(id_token, line_no);
      if (id != static_cast<long long>(gates.size()))
        throw parse_error("circuit: line " + std::to_string(line_no) +
                          ": gate ids must ascend consecutively from 0");
    };
    if (tok[0] == "v" && tok.size() == 3) {
      expect_id(tok[1]);
      gates.push_back(gate::variable_of(static_cast<int>(detail::parse_int(tok[2], line_no))));
    } else if (tok[0] == "z" && tok.size() == 2) {
      expect_id(tok[1]);
      gates.push_back(gate::zero_of());
    } else if ((tok[0] == "m" || tok[0] == "p") && tok.size() == 4) {
      expect_id(tok[1]);
      const int a = static_cast<int>(detail::parse_int(tok[2], line_no));
      const int b = static_cast<int>(detail::parse_int(tok[3], line_no));
      gates.push_back(tok[0] == "m" ? gate::max_of(a, b) : gate::plus_of(a, b));
    } else {
      throw parse_error("circuit: line " + std::to_string(line_no) + ": unrecognized line '" +
                        std::string(lines[i]) + "'");
    }
  }
  if (output == -1) throw parse_error("circuit: missing output line");
  return circuit::build(std::move(gates), output);
}

// --- weights: whitespace-separated finite reals or "-inf" ---

inline std::vector<ext_real> parse_weights(std::string_view text) {
  std::vector<ext_real> out;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    if (tok == "-inf") {
      out.push_back(ext_real::bottom());
    } else {
      try {
        std::size_t used = 0;
        const double v = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        out.push_back(ext_real(v));
      } catch (const std::exception&) {
        throw parse_error("weights: bad token '" + tok + "'");
      }
    }
  }
  return out;
}

// --- small file helpers ---

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw parse_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw parse_error("cannot write '" + path + "'");
  out << content;
}

}  // namespace tropic
