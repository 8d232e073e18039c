#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "hyperspec/hypergraph.hpp"

namespace testsupport {

using hyperspec::Hypergraph;
using hyperspec::Vertex;

/// Each r-subset kept independently with probability `density`.
inline Hypergraph random_graph(std::size_t n, std::size_t r, double density, std::mt19937_64& rng) {
  std::bernoulli_distribution keep(density);
  std::vector<std::vector<Vertex>> edges;
  hyperspec::for_each_subset(n, r, [&](std::span<const Vertex> e) {
    if (keep(rng)) edges.emplace_back(e.begin(), e.end());
  });
  return hyperspec::make_hypergraph(n, r, edges);
}

inline std::vector<Vertex> random_perm(std::size_t n, std::mt19937_64& rng) {
  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), Vertex{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  return perm;
}

inline std::vector<std::vector<Vertex>> edge_list(const Hypergraph& h) {
  std::vector<std::vector<Vertex>> out;
  for (std::size_t i = 0; i < h.edge_count(); ++i) {
    auto e = h.edge(i);
    out.emplace_back(e.begin(), e.end());
  }
  return out;
}

/// Binomial by Pascal's triangle.
inline std::uint64_t choose(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::vector<std::uint64_t> row(k + 1, 0);
  row[0] = 1;
  for (std::uint64_t i = 1; i <= n; ++i) {
    for (std::uint64_t j = std::min(i, k); j > 0; --j) row[j] += row[j - 1];
  }
  return row[k];
}

inline double fact(std::size_t r) {
  double f = 1.0;
  for (std::size_t i = 2; i <= r; ++i) f *= static_cast<double>(i);
  return f;
}

/// r! C(n, r) n^(-r/p): value of the uniform unit vector on K_n^r.
inline double complete_lambda(std::size_t n, std::size_t r, double p) {
  return fact(r) * static_cast<double>(choose(n, r)) * std::pow(static_cast<double>(n), -static_cast<double>(r) / p);
}

/// Counts r-subsets of [n] meeting r distinct classes of a near-balanced k-partition.
inline std::uint64_t count_crossing_subsets(std::size_t n, std::size_t k, std::size_t r) {
  std::vector<std::size_t> cls(n);
  for (std::size_t v = 0; v < n; ++v) cls[v] = v % k;
  std::uint64_t count = 0;
  hyperspec::for_each_subset(n, r, [&](std::span<const Vertex> e) {
    std::vector<std::size_t> seen;
    for (Vertex v : e) seen.push_back(cls[v]);
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) == seen.end()) ++count;
  });
  return count;
}

}  // namespace testsupport
