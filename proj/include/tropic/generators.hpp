#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tropic/error.hpp"
#include "tropic/graph.hpp"
#include "tropic/minor.hpp"
#include "tropic/rng.hpp"
#include "tropic/vertex_set.hpp"

namespace tropic {

// rows x cols grid; vertex (r, c) has id r*cols + c.
inline graph gen_grid(int rows, int cols) {
  if (rows < 1 || cols < 1) throw invalid_input("gen_grid: dimensions must be positive");
  std::vector<std::pair<int, int>> edges;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      const int v = r * cols + c;
      if (c + 1 < cols) edges.emplace_back(v, v + 1);
      if (r + 1 < rows) edges.emplace_back(v, v + cols);
    }
  return graph::build(rows * cols, edges);
}

// K_n with every edge subdivided once.  Branch vertices are 0..n-1; the
// subdivision vertex of edge {i,j} (i < j, lexicographic) is n + rank(i,j).
inline graph gen_subdivided_clique(int n) {
  if (n < 1) throw invalid_input("gen_subdivided_clique: n must be positive");
  std::vector<std::pair<int, int>> edges;
  int next = n;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      edges.emplace_back(i, next);
      edges.emplace_back(j, next);
      ++next;
    }
  return graph::build(next, edges);
}

struct spectral_certificate {
  bool certified = false;
  double lambda2 = 0.0;
  double threshold = 0.0;
};

// Second-largest adjacency eigenvalue against the near-Ramanujan threshold
// 2*sqrt(r-1)*slack.  Disconnected graphs are rejected outright: at degree 3
// the threshold exceeds r, so the eigenvalue test alone cannot see a split.
inline spectral_certificate certify_expander(const graph& g, int degree, double slack = 1.1) {
  spectral_certificate cert;
  cert.threshold = 2.0 * std::sqrt(static_cast<double>(std::max(0, degree - 1))) * slack;
  const int n = g.vertex_count();
  if (n < 2) {
    cert.certified = true;
    return cert;
  }
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [u, v] : g.edges()) {
    a(u, v) = 1.0;
    a(v, u) = 1.0;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
  cert.lambda2 = solver.eigenvalues()(n - 2);  // ascending order
  cert.certified = g.connected() && cert.lambda2 <= cert.threshold;
  return cert;
}

// Seeded r-regular graph by the configuration model; simple graphs only,
// resampled until one comes out.
inline graph gen_random_regular(int n, int r, std::uint64_t seed, int attempts = 200) {
  if (n <= r || r < 1 || (n * r) % 2 != 0)
    throw invalid_input("gen_random_regular: infeasible parameters n=" + std::to_string(n) +
                        " r=" + std::to_string(r));
  rng gen(mix_seed(seed, 0x5e6u));
  std::vector<int> stubs;
  stubs.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(r));
  for (int attempt = 0; attempt < attempts; ++attempt) {
    stubs.clear();
    for (int v = 0; v < n; ++v)
      for (int k = 0; k < r; ++k) stubs.push_back(v);
    gen.shuffle(stubs);
    std::vector<std::pair<int, int>> edges;
    std::vector<std::vector<char>> seen(static_cast<std::size_t>(n),
                                        std::vector<char>(static_cast<std::size_t>(n), 0));
    bool simple = true;
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
      const int u = stubs[i];
      const int v = stubs[i + 1];
      if (u == v || seen[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)]) {
        simple = false;
        break;
      }
      seen[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = 1;
      seen[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] = 1;
      edges.emplace_back(u, v);
    }
    if (simple) return graph::build(n, edges);
  }
  throw generation_error("gen_random_regular: no simple pairing after " +
                         std::to_string(attempts) + " attempts");
}

inline graph gen_complete(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  return graph::build(n, edges);
}

struct cluster_expander {
  graph host;
  induced_minor_model model;  // pattern is the certified base expander
};

// Base expander on ceil(w/d) vertices, each blown up to a d-clique, adjacent
// clusters fully joined.  Tiny bases (<= 4 vertices) are complete graphs,
// certified trivially; larger bases are seeded random 3-regular graphs (4 when
// parity demands) re-sampled with seed+1, seed+2, ... until spectrally
// certified.  d > w degenerates to a single d-clique.
inline cluster_expander gen_cluster_expander(int w, int d, std::uint64_t seed,
                                             int certify_attempts = 64) {
  if (w < 1 || d < 1) throw invalid_input("gen_cluster_expander: w and d must be positive");
  const int m = (d > w) ? 1 : (w + d - 1) / d;

  graph base;
  if (m <= 4) {
    base = gen_complete(m);
  } else {
    const int r = (m % 2 == 1) ? 4 : 3;
    bool done = false;
    for (int attempt = 0; attempt < certify_attempts && !done; ++attempt) {
      base = gen_random_regular(m, r, seed + static_cast<std::uint64_t>(attempt));
      done = certify_expander(base, r).certified;
    }
    if (!done)
      throw generation_error("gen_cluster_expander: no certified base within " +
                             std::to_string(certify_attempts) + " attempts");
  }

  std::vector<std::pair<int, int>> edges;
  const auto vertex = [d](int cluster, int k) { return cluster * d + k; };
  for (int i = 0; i < m; ++i)
    for (int a = 0; a < d; ++a)
      for (int b = a + 1; b < d; ++b) edges.emplace_back(vertex(i, a), vertex(i, b));
  for (const auto& [i, j] : base.edges())
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) edges.emplace_back(vertex(i, a), vertex(j, b));

  cluster_expander out;
  out.host = graph::build(m * d, edges);
  out.model.pattern = std::move(base);
  for (int i = 0; i < m; ++i) {
    std::vector<int> members;
    for (int k = 0; k < d; ++k) members.push_back(vertex(i, k));
    out.model.clusters.emplace_back(std::move(members));
  }
  return out;
}

}  // namespace tropic
