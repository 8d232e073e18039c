#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hyperspec/hypergraph.hpp"
#include "hyperspec/report.hpp"

namespace hyperspec {

struct Partition {
  /// Class index in [0, k) per vertex.
  std::vector<std::size_t> assignment;
  std::size_t k = 0;

  std::vector<std::size_t> class_sizes() const;
  std::vector<std::vector<Vertex>> classes() const;
  /// Throws InputError on a class index >= k.
  void validate() const;
};

/// Consecutive blocks with the given sizes, in order.
Partition block_partition(std::span<const std::size_t> sizes);

struct AnalysisConfig {
  double epsilon = 0.01;
  double theta = 0.5;
  std::size_t k = 3;
  std::size_t r = 3;
  std::size_t t = 1;
  std::size_t n = 0;

  /// t * ((k + 1) + (r - 2) * C(k + 1, 2))
  std::uint64_t h() const;
  /// h * C(n, r - 3); equals h when r = 3.
  std::uint64_t d() const;
  /// epsilon^(3 / (2 r^2)) * n^(r - 1)
  double ell() const;
  /// (k)_r / (2 k^r)
  double c0() const;
  /// epsilon^(1 / r^2) * n
  double sparse_threshold() const;
  /// theta * n
  double dominant_threshold() const;
  /// epsilon^((r - 1) / r^2); theta must exceed it.
  double theta_floor() const;

  /// Throws InputError unless 0 < epsilon < 1, theta > theta_floor(),
  /// k >= 2, r >= 2, t >= 1.
  void validate() const;
};

/// Sum over edges of the number of classes the edge meets.
std::uint64_t partition_score(const Hypergraph& h, const Partition& sigma);

struct PartitionSearch {
  Partition sigma;
  std::uint64_t score = 0;
  bool exact = false;
  /// Heuristic moves spent (0 for exact runs).
  std::uint64_t moves = 0;
};

/// Orders up to this size are optimized exhaustively.
inline constexpr std::size_t kExactPartitionOrder = 12;

/// Maximizes partition_score over partitions into k nonempty classes
/// (all partitions when n < k). Exhaustive for n <= 12, otherwise
/// single-vertex hill climbing from seeded random restarts until `budget`
/// moves are spent.
PartitionSearch optimize_partition(const Hypergraph& h, std::size_t k, std::uint64_t budget,
                                   std::uint64_t seed = 0);

struct EdgeDiff {
  std::uint64_t missing = 0;  ///< edges of the complete k-partite graph absent from h
  std::uint64_t bad = 0;      ///< edges of h not in it
};

EdgeDiff missing_bad_edges(const Hypergraph& h, const Partition& sigma);

struct Closeness {
  std::uint64_t distance = 0;
  Partition sigma;
  /// distance / C(n, r)
  double epsilon_equiv = 0.0;
  bool exact = false;
};

/// Fewest edge edits turning h into a copy of T_r(n, k), minimized over
/// partitions whose class sizes are the Turan sizes.
Closeness closeness_to_turan(const Hypergraph& h, std::size_t k, std::uint64_t budget,
                             std::uint64_t seed = 0);

struct VertexPair {
  Vertex u = 0;
  Vertex v = 0;
  std::uint64_t codegree = 0;
};

struct PairClassification {
  std::vector<VertexPair> sparse_pairs;
  std::vector<VertexPair> dense_pairs;
  std::vector<VertexPair> dominant_pairs;
  std::vector<std::size_t> sparse_count;    ///< per vertex
  std::vector<std::size_t> dominant_count;  ///< per vertex
  std::vector<Vertex> L;
  std::vector<Vertex> W;
  std::vector<std::vector<Vertex>> D;  ///< per class
  std::vector<std::vector<Vertex>> T;  ///< per class
};

PairClassification classify_pairs(const Hypergraph& h, const Partition& sigma, const AnalysisConfig& config);

/// Full stability summary: optimized partition, missing/bad edges,
/// closeness, pair classification sizes and the thresholds used.
Report stability_report(const Hypergraph& h, const AnalysisConfig& config, std::uint64_t budget,
                        std::uint64_t seed = 0);

// Bounded-degree, bounded-matching graphs.

std::size_t matching_number(const SimpleGraph& g);
std::size_t max_degree(const SimpleGraph& g);

/// Delta * beta + floor(Delta / 2) * floor(beta / ceil(Delta / 2)).
std::uint64_t chvatal_hanson(std::uint64_t beta, std::uint64_t delta);

/// Most edges in a graph on n_max vertices with matching number <= beta and
/// maximum degree <= delta, by exhaustive search. Requires n_max <= 9.
std::uint64_t brute_force_f(std::size_t beta, std::size_t delta, std::size_t n_max);

struct IntersectionBound {
  long long bound = 0;  ///< sum |A_i| - (p - 1) |union|
  std::size_t exact = 0;
};

/// Sets are taken with duplicates removed.
IntersectionBound intersection_lower_bound(std::span<const std::vector<long long>> sets);

}  // namespace hyperspec
