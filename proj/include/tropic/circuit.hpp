#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tropic/config.hpp"
#include "tropic/error.hpp"
#include "tropic/vertex_set.hpp"
#include "tropic/weight.hpp"

namespace tropic {

enum class gate_kind : std::uint8_t { variable, zero, max_gate, plus_gate };

struct gate {
  gate_kind kind = gate_kind::zero;
  int var = -1;  // variable gates: vertex id
  int lhs = -1;  // max/plus gates: operand ids, both below the gate's own id
  int rhs = -1;

  static gate variable_of(int v) { return {gate_kind::variable, v, -1, -1}; }
  static gate zero_of() { return {gate_kind::zero, -1, -1, -1}; }
  static gate max_of(int a, int b) { return {gate_kind::max_gate, -1, a, b}; }
  static gate plus_of(int a, int b) { return {gate_kind::plus_gate, -1, a, b}; }
};

// Tropical (max, +) circuit over vertex variables: a gate list in topological
// order plus a designated output.  Operand ids always point backwards, which
// makes acyclicity structural.
class circuit {
 public:
  static circuit build(std::vector<gate> gates, int output) {
    const int n = static_cast<int>(gates.size());
    if (n == 0) throw invalid_input("circuit: no gates");
    if (output < 0 || output >= n)
      throw invalid_input("circuit: output " + std::to_string(output) + " out of range");
    for (int i = 0; i < n; ++i) {
      const gate& g = gates[static_cast<std::size_t>(i)];
      switch (g.kind) {
        case gate_kind::variable:
          if (g.var < 0)
            throw invalid_input("circuit: gate " + std::to_string(i) + " has negative variable");
          break;
        case gate_kind::zero:
          break;
        case gate_kind::max_gate:
        case gate_kind::plus_gate:
          for (const int child : {g.lhs, g.rhs}) {
            if (child < 0 || child >= n)
              throw invalid_input("circuit: gate " + std::to_string(i) +
                                  " has dangling operand " + std::to_string(child));
            if (child >= i)
              throw invalid_input("circuit: gate " + std::to_string(i) +
                                  " creates a cycle (operand " + std::to_string(child) +
                                  " does not precede it)");
          }
          break;
      }
    }
    circuit c;
    c.gates_ = std::move(gates);
    c.output_ = output;
    return c;
  }

  int output() const { return output_; }
  int size() const { return static_cast<int>(gates_.size()); }

  int interior_count() const {
    int k = 0;
    for (const auto& g : gates_)
      if (g.kind == gate_kind::max_gate || g.kind == gate_kind::plus_gate) ++k;
    return k;
  }

  const gate& at(int i) const { return gates_[static_cast<std::size_t>(i)]; }
  std::span<const gate> gates() const { return gates_; }

 private:
  circuit() = default;
  std::vector<gate> gates_;
  int output_ = -1;
};

// Incremental construction; n-ary helpers lower to balanced binary trees,
// left side taking the extra operand on odd splits.
class circuit_builder {
 public:
  int add_variable(int v) {
    gates_.push_back(gate::variable_of(v));
    return last();
  }
  int add_zero() {
    gates_.push_back(gate::zero_of());
    return last();
  }
  int add_max(int a, int b) {
    gates_.push_back(gate::max_of(a, b));
    return last();
  }
  int add_plus(int a, int b) {
    gates_.push_back(gate::plus_of(a, b));
    return last();
  }

  // Balanced max over one or more operands.
  int add_max_of(std::span<const int> xs) {
    if (xs.empty()) throw invalid_input("circuit_builder: max of nothing");
    return balanced(xs, /*is_max=*/true);
  }

  // Balanced plus; the empty product is the constant zero.
  int add_plus_of(std::span<const int> xs) {
    if (xs.empty()) return add_zero();
    return balanced(xs, /*is_max=*/false);
  }

  int size() const { return static_cast<int>(gates_.size()); }

  circuit finish(int output) { return circuit::build(std::move(gates_), output); }

 private:
  int last() const { return static_cast<int>(gates_.size()) - 1; }

  int balanced(std::span<const int> xs, bool is_max) {
    if (xs.size() == 1) return xs.front();
    const std::size_t mid = (xs.size() + 1) / 2;  // left-heavy
    const int a = balanced(xs.first(mid), is_max);
    const int b = balanced(xs.subspan(mid), is_max);
    return is_max ? add_max(a, b) : add_plus(a, b);
  }

  std::vector<gate> gates_;
};

// Gate values in one topological pass; weights are indexed by vertex id.
template <typename T>
extended<T> evaluate(const circuit& c, std::span<const extended<T>> weights) {
  std::vector<extended<T>> value(static_cast<std::size_t>(c.size()), extended<T>::bottom());
  for (int i = 0; i < c.size(); ++i) {
    const gate& g = c.at(i);
    auto& out = value[static_cast<std::size_t>(i)];
    switch (g.kind) {
      case gate_kind::variable:
        if (g.var >= static_cast<int>(weights.size()))
          throw invalid_input("evaluate: no weight for vertex " + std::to_string(g.var));
        out = weights[static_cast<std::size_t>(g.var)];
        break;
      case gate_kind::zero:
        out = extended<T>(T{});
        break;
      case gate_kind::max_gate:
        out = std::max(value[static_cast<std::size_t>(g.lhs)], value[static_cast<std::size_t>(g.rhs)]);
        break;
      case gate_kind::plus_gate:
        out = value[static_cast<std::size_t>(g.lhs)] + value[static_cast<std::size_t>(g.rhs)];
        break;
    }
  }
  return value[static_cast<std::size_t>(c.output())];
}

template <typename T>
extended<T> evaluate(const circuit& c, const std::vector<extended<T>>& weights) {
  return evaluate(c, std::span<const extended<T>>(weights));
}

// Gates referencing each gate as an operand.
inline std::vector<int> fanout_counts(const circuit& c) {
  std::vector<int> fan(static_cast<std::size_t>(c.size()), 0);
  for (int i = 0; i < c.size(); ++i) {
    const gate& g = c.at(i);
    if (g.kind == gate_kind::max_gate || g.kind == gate_kind::plus_gate) {
      ++fan[static_cast<std::size_t>(g.lhs)];
      ++fan[static_cast<std::size_t>(g.rhs)];
    }
  }
  return fan;
}

inline bool is_formula(const circuit& c) {
  const auto fan = fanout_counts(c);
  return std::all_of(fan.begin(), fan.end(), [](int f) { return f <= 1; });
}

inline std::vector<char> reachable_from_output(const circuit& c) {
  std::vector<char> seen(static_cast<std::size_t>(c.size()), 0);
  std::vector<int> stack{c.output()};
  seen[static_cast<std::size_t>(c.output())] = 1;
  while (!stack.empty()) {
    const gate& g = c.at(stack.back());
    stack.pop_back();
    if (g.kind == gate_kind::max_gate || g.kind == gate_kind::plus_gate) {
      for (const int child : {g.lhs, g.rhs})
        if (!seen[static_cast<std::size_t>(child)]) {
          seen[static_cast<std::size_t>(child)] = 1;
          stack.push_back(child);
        }
    }
  }
  return seen;
}

// Syntactic support per gate: variable leaves reachable below it.
inline std::vector<vertex_set> supports(const circuit& c) {
  std::vector<vertex_set> sup(static_cast<std::size_t>(c.size()));
  for (int i = 0; i < c.size(); ++i) {
    const gate& g = c.at(i);
    switch (g.kind) {
      case gate_kind::variable:
        sup[static_cast<std::size_t>(i)] = vertex_set{g.var};
        break;
      case gate_kind::zero:
        break;
      case gate_kind::max_gate:
      case gate_kind::plus_gate:
        sup[static_cast<std::size_t>(i)] = sup[static_cast<std::size_t>(g.lhs)].unite(
            sup[static_cast<std::size_t>(g.rhs)]);
        break;
    }
  }
  return sup;
}

inline vertex_set support(const circuit& c) { return supports(c)[static_cast<std::size_t>(c.output())]; }

struct restriction {
  std::optional<circuit> result;  // nullopt iff the polynomial became empty
  bool empty_polynomial = false;
};

// Pins gate g to -inf, folds constants (max(-inf,x) -> x, plus(-inf,x) ->
// -inf) and drops gates unreachable from the folded output.  The gate count
// strictly decreases; if the output itself folds away the result is the empty
// polynomial.
inline restriction restrict_gate_neg_inf(const circuit& c, int g) {
  if (g < 0 || g >= c.size())
    throw invalid_input("restrict_gate_neg_inf: gate " + std::to_string(g) + " out of range");

  // fold[i]: -1 when gate i becomes -inf, otherwise the old id it folds to.
  std::vector<int> fold(static_cast<std::size_t>(c.size()));
  for (int i = 0; i < c.size(); ++i) {
    auto& f = fold[static_cast<std::size_t>(i)];
    if (i == g) {
      f = -1;
      continue;
    }
    const gate& gt = c.at(i);
    switch (gt.kind) {
      case gate_kind::variable:
      case gate_kind::zero:
        f = i;
        break;
      case gate_kind::max_gate: {
        const int a = fold[static_cast<std::size_t>(gt.lhs)];
        const int b = fold[static_cast<std::size_t>(gt.rhs)];
        f = (a == -1) ? b : (b == -1) ? a : i;
        break;
      }
      case gate_kind::plus_gate: {
        const int a = fold[static_cast<std::size_t>(gt.lhs)];
        const int b = fold[static_cast<std::size_t>(gt.rhs)];
        f = (a == -1 || b == -1) ? -1 : i;
        break;
      }
    }
  }

  restriction out;
  const int root = fold[static_cast<std::size_t>(c.output())];
  if (root == -1) {
    out.empty_polynomial = true;
    return out;
  }

  // Reachability over the folded structure, then re-emit in ascending order.
  std::vector<char> keep(static_cast<std::size_t>(c.size()), 0);
  std::vector<int> stack{root};
  keep[static_cast<std::size_t>(root)] = 1;
  while (!stack.empty()) {
    const gate& gt = c.at(stack.back());
    stack.pop_back();
    if (gt.kind == gate_kind::max_gate || gt.kind == gate_kind::plus_gate) {
      for (const int child : {fold[static_cast<std::size_t>(gt.lhs)], fold[static_cast<std::size_t>(gt.rhs)]})
        if (child != -1 && !keep[static_cast<std::size_t>(child)]) {
          keep[static_cast<std::size_t>(child)] = 1;
          stack.push_back(child);
        }
    }
  }
  // A kept max gate may have had a folded child; its operands are the folded
  // ids, which are kept by the walk above exactly when used.
  std::vector<int> re(static_cast<std::size_t>(c.size()), -1);
  std::vector<gate> gates;
  for (int i = 0; i < c.size(); ++i) {
    if (!keep[static_cast<std::size_t>(i)]) continue;
    gate gt = c.at(i);
    if (gt.kind == gate_kind::max_gate || gt.kind == gate_kind::plus_gate) {
      gt.lhs = re[static_cast<std::size_t>(fold[static_cast<std::size_t>(gt.lhs)])];
      gt.rhs = re[static_cast<std::size_t>(fold[static_cast<std::size_t>(gt.rhs)])];
    }
    re[static_cast<std::size_t>(i)] = static_cast<int>(gates.size());
    gates.push_back(gt);
  }
  out.result = circuit::build(std::move(gates), re[static_cast<std::size_t>(root)]);
  return out;
}

// Monomials of the output as plain vertex sets, deduplicated (max-plus is
// idempotent, so coefficients do not matter).  multilinearity_violated records
// any plus gate joining overlapping supports on the way; truncated aborts the
// computation once any gate exceeds the cap.
struct monomial_set {
  std::vector<vertex_set> monomials;  // sorted
  bool truncated = false;
  bool multilinearity_violated = false;
  vertex_set violation;  // union behind the first violation; see verify_mwis_circuit

  bool contains(const vertex_set& m) const {
    return std::binary_search(monomials.begin(), monomials.end(), m);
  }
  std::size_t size() const { return monomials.size(); }
};

inline monomial_set monomials(const circuit& c, const caps& limits = {}) {
  monomial_set out;
  const auto reach = reachable_from_output(c);
  std::vector<std::vector<vertex_set>> sets(static_cast<std::size_t>(c.size()));
  for (int i = 0; i < c.size(); ++i) {
    if (!reach[static_cast<std::size_t>(i)]) continue;
    const gate& g = c.at(i);
    auto& mine = sets[static_cast<std::size_t>(i)];
    switch (g.kind) {
      case gate_kind::variable:
        mine.push_back(vertex_set{g.var});
        break;
      case gate_kind::zero:
        mine.push_back(vertex_set{});
        break;
      case gate_kind::max_gate: {
        const auto& a = sets[static_cast<std::size_t>(g.lhs)];
        const auto& b = sets[static_cast<std::size_t>(g.rhs)];
        mine.reserve(a.size() + b.size());
        std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(mine));
        break;
      }
      case gate_kind::plus_gate: {
        const auto& a = sets[static_cast<std::size_t>(g.lhs)];
        const auto& b = sets[static_cast<std::size_t>(g.rhs)];
        for (const auto& ma : a)
          for (const auto& mb : b) {
            vertex_set u = ma.unite(mb);
            if (u.size() != ma.size() + mb.size() && !out.multilinearity_violated) {
              out.multilinearity_violated = true;
              out.violation = u;
            }
            mine.push_back(std::move(u));
          }
        std::sort(mine.begin(), mine.end());
        mine.erase(std::unique(mine.begin(), mine.end()), mine.end());
        break;
      }
    }
    if (mine.size() > limits.monomials) {
      out.truncated = true;
      return out;
    }
  }
  out.monomials = std::move(sets[static_cast<std::size_t>(c.output())]);
  return out;
}

// Does the output contain exactly the multilinear monomial over m?  Runs the
// monomial recursion restricted to subsets of m, so it stays cheap on circuits
// whose full monomial set would blow the cap.
inline bool computes_monomial(const circuit& c, const vertex_set& m) {
  if (m.size() > 32) throw size_error("computes_monomial: target set larger than 32 vertices");
  const auto bit_of = [&](int v) -> int {
    int lo = 0;
    int hi = m.size();
    const auto& xs = m.values();
    while (lo < hi) {
      const int mid = (lo + hi) / 2;
      if (xs[static_cast<std::size_t>(mid)] < v)
        lo = mid + 1;
      else
        hi = mid;
    }
    return (lo < m.size() && xs[static_cast<std::size_t>(lo)] == v) ? lo : -1;
  };

  const auto reach = reachable_from_output(c);
  std::vector<std::vector<std::uint32_t>> sets(static_cast<std::size_t>(c.size()));
  for (int i = 0; i < c.size(); ++i) {
    if (!reach[static_cast<std::size_t>(i)]) continue;
    const gate& g = c.at(i);
    auto& mine = sets[static_cast<std::size_t>(i)];
    switch (g.kind) {
      case gate_kind::variable: {
        const int b = bit_of(g.var);
        if (b >= 0) mine.push_back(std::uint32_t{1} << b);
        break;
      }
      case gate_kind::zero:
        mine.push_back(0);
        break;
      case gate_kind::max_gate: {
        const auto& a = sets[static_cast<std::size_t>(g.lhs)];
        const auto& b = sets[static_cast<std::size_t>(g.rhs)];
        std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(mine));
        break;
      }
      case gate_kind::plus_gate: {
        // Overlapping submonomials would square a variable; such products can
        // never fold back into the multilinear target, so they are dropped.
        for (const std::uint32_t ma : sets[static_cast<std::size_t>(g.lhs)])
          for (const std::uint32_t mb : sets[static_cast<std::size_t>(g.rhs)])
            if ((ma & mb) == 0) mine.push_back(ma | mb);
        std::sort(mine.begin(), mine.end());
        mine.erase(std::unique(mine.begin(), mine.end()), mine.end());
        break;
      }
    }
  }
  const std::uint32_t target =
      (m.size() == 32) ? ~std::uint32_t{0} : (std::uint32_t{1} << m.size()) - 1;
  const auto& top = sets[static_cast<std::size_t>(c.output())];
  return std::binary_search(top.begin(), top.end(), target);
}

// Replaces every variable leaf x by max(x, 0), adding two gates per leaf, so
// circuits that assume nonnegative weights keep their value on arbitrary ones.
inline circuit wrap_nonneg(const circuit& c) {
  std::vector<int> re(static_cast<std::size_t>(c.size()), -1);
  circuit_builder b;
  for (int i = 0; i < c.size(); ++i) {
    const gate& g = c.at(i);
    switch (g.kind) {
      case gate_kind::variable: {
        const int x = b.add_variable(g.var);
        const int z = b.add_zero();
        re[static_cast<std::size_t>(i)] = b.add_max(x, z);
        break;
      }
      case gate_kind::zero:
        re[static_cast<std::size_t>(i)] = b.add_zero();
        break;
      case gate_kind::max_gate:
        re[static_cast<std::size_t>(i)] = b.add_max(re[static_cast<std::size_t>(g.lhs)],
                                                    re[static_cast<std::size_t>(g.rhs)]);
        break;
      case gate_kind::plus_gate:
        re[static_cast<std::size_t>(i)] = b.add_plus(re[static_cast<std::size_t>(g.lhs)],
                                                     re[static_cast<std::size_t>(g.rhs)]);
        break;
    }
  }
  return b.finish(re[static_cast<std::size_t>(c.output())]);
}

}  // namespace tropic
