#pragma once

#include <cstddef>
#include <cstdlib>
#include <sstream>
#include <string>

#include "tropic/error.hpp"

namespace tropic {

// Vertex-count caps for the exact (exponential-time) routines.  Every capped
// routine takes a caps record so callers can raise limits deliberately; the
// CLI honours the TROPIC_MWIS_CAPS environment variable via from_env().
struct caps {
  int exact_treewidth = 12;
  int exact_treedepth = 14;
  int balanced_separation = 16;
  int hit_exact = 22;
  int uniform_sample = 24;  // per connected component
  int mwis_oracle = 30;
  int brute_compile = 24;
  std::size_t monomials = std::size_t{1} << 20;

  // Parses "tw=14,td=16,sep=18,hit=24,uniform=26,oracle=32,brute=26,
  // monomials=2097152"; unknown keys are rejected, missing keys keep their
  // defaults.  Absent or empty variable yields the defaults.
  static caps from_env(const char* var = "TROPIC_MWIS_CAPS") {
    caps c;
    const char* raw = std::getenv(var);
    if (raw == nullptr || *raw == '\0') return c;
    std::istringstream in(raw);
    std::string item;
    while (std::getline(in, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos)
        throw parse_error("caps: expected key=value, got '" + item + "'");
      const std::string key = item.substr(0, eq);
      const long long value = std::stoll(item.substr(eq + 1));
      if (value <= 0) throw parse_error("caps: value for " + key + " must be positive");
      if (key == "tw")
        c.exact_treewidth = static_cast<int>(value);
      else if (key == "td")
        c.exact_treedepth = static_cast<int>(value);
      else if (key == "sep")
        c.balanced_separation = static_cast<int>(value);
      else if (key == "hit")
        c.hit_exact = static_cast<int>(value);
      else if (key == "uniform")
        c.uniform_sample = static_cast<int>(value);
      else if (key == "oracle")
        c.mwis_oracle = static_cast<int>(value);
      else if (key == "brute")
        c.brute_compile = static_cast<int>(value);
      else if (key == "monomials")
        c.monomials = static_cast<std::size_t>(value);
      else
        throw parse_error("caps: unknown key '" + key + "'");
    }
    return c;
  }
};

// Engineering margins for the compiled-size guarantees.  Tests assert the
// compilers stay within margin * (analytic size bound).
struct size_margins {
  int bruteforce = 4;        // gates(brute) <= 4 * 2^n
  int treedepth = 8;         // gates(td formula) <= 8 * n * 2^depth
  int cluster_expander = 3;  // gates(expander formula) <= 3 * d * 2^(w/d)
};

}  // namespace tropic
