#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "hyperspec/hypergraph.hpp"
#include "hyperspec/patterns.hpp"
#include "hyperspec/report.hpp"
#include "hyperspec/spectral.hpp"

namespace hyperspec {

enum class Objective { max_edges, max_lambda };

inline constexpr std::size_t kMaxWitnesses = 10;
/// Caps on C(n, r) for the two exhaustive searches.
inline constexpr std::uint64_t kMaxEdgeSearchSpace = 24;
inline constexpr std::uint64_t kMaxLambdaSearchSpace = 20;

inline constexpr std::size_t kMaxCanonicalOrder = 8;

/// The isomorphic copy with the lexicographically smallest edge list.
/// Requires order <= 8.
Hypergraph canonical_form(const Hypergraph& h);

struct SearchResult {
  Objective objective = Objective::max_edges;
  double best_value = 0.0;
  /// Graphs attaining best_value in discovery order, one per isomorphism
  /// class (canonical_form) when n <= 8.
  std::vector<Hypergraph> witnesses;
  /// Edge subsets visited.
  std::uint64_t explored = 0;
  bool exact = false;
};

/// Largest edge count of a spec-free r-graph on n labeled vertices.
SearchResult exhaustive_max_edges(std::size_t n, std::size_t r, const PatternSpec& spec);

struct LambdaSearch {
  /// best_value is the largest certified lower bound found; exact is false.
  SearchResult result;
  /// Maximal free graphs, one per isomorphism class.
  std::size_t maximal_classes = 0;
  /// Grid-oracle values for the top candidates, best first.
  std::vector<double> oracle_values;
  std::vector<double> solver_values;
  /// lambda of T_r(n, k - 1) for family:k and expansion:K<k> specs with
  /// k - 1 >= r; NaN otherwise.
  double turan_lambda = 0.0;
  bool turan_among_maximizers = false;
};

/// Scores every maximal spec-free r-graph on n vertices with the solver.
LambdaSearch exhaustive_max_lambda(std::size_t n, std::size_t r, double p, const PatternSpec& spec,
                                   const SolverConfig& solver);

Report search_report(const SearchResult& result);
Report lambda_search_report(const LambdaSearch& search);

struct CompositionRow {
  std::vector<std::size_t> parts;
  double lambda = 0.0;
  double residual = 0.0;
  bool converged = false;
};

struct CompositionSweep {
  std::vector<CompositionRow> rows;
  std::vector<std::size_t> balanced;
  double balanced_lambda = 0.0;
  /// Row with the largest lambda (first on ties).
  std::size_t argmax = 0;
  /// balanced_lambda minus the best unbalanced lambda (infinite when every
  /// composition is balanced).
  double margin = 0.0;
  /// Largest lambda spread among rows that are permutations of each other.
  double permutation_spread = 0.0;
};

inline constexpr std::size_t kMaxCompositions = 10000;

/// lambda of K_{t-1}^r v K_k^r(n_1..n_k) over every composition of n - t + 1
/// into k positive parts. Requires p > 9/8.
CompositionSweep composition_sweep(std::size_t n, std::size_t k, std::size_t r, std::size_t t, double p,
                                   const SolverConfig& solver);

Report sweep_report(const CompositionSweep& sweep);

struct Improver {
  std::vector<std::vector<Vertex>> added;
  std::vector<std::vector<Vertex>> removed;
  double lambda = 0.0;
};

struct PerturbationProbe {
  double base_lambda = 0.0;
  std::uint64_t neighbors = 0;
  std::uint64_t free_neighbors = 0;
  std::vector<Improver> improvers;
};

/// Every spec-free graph within `radius` edge toggles of h0 (radius <= 2),
/// reporting those whose lambda beats lambda(h0) by more than 1e-7.
PerturbationProbe perturbation_probe(const Hypergraph& h0, const PatternSpec& spec, double p,
                                     const SolverConfig& solver, std::size_t radius);

Report probe_report(const PerturbationProbe& probe);

}  // namespace hyperspec
