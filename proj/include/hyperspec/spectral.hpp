#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "hyperspec/hypergraph.hpp"
#include "hyperspec/report.hpp"

namespace hyperspec {

inline constexpr double kInfiniteP = std::numeric_limits<double>::infinity();

/// Nonnegative vertex weights with the norm exponent they are measured in.
struct WeightVector {
  std::vector<double> values;
  double p = 2.0;

  /// p-norm; max-norm when p is infinite.
  double norm() const;
};

struct SpectralEstimate {
  double lambda = 0.0;
  WeightVector vector;
  /// Max eigen-equation violation over non-isolated vertices.
  double residual = 0.0;
  std::size_t iterations = 0;
  std::size_t restarts_used = 0;
  bool converged = false;
};

struct SolverConfig {
  double p = 2.0;
  double tolerance = 1e-10;
  std::size_t max_iterations = 100000;
  std::size_t restarts = 16;
  std::uint64_t seed = 0;
  /// Initial weight of the fixed-point image when mixing with the previous
  /// iterate; halved (down to 1/16) when the residual stalls.
  double damping = 1.0;
  /// Worker threads for restarts. Results do not depend on this.
  std::size_t jobs = 1;

  void validate() const;
};

/// r! * sum over edges of the product of the edge's weights.
double poly_form(const Hypergraph& h, std::span<const double> x);

/// (r-1)! * sum over edges e containing i of the product over e \ {i}.
double link_value(const Hypergraph& h, std::span<const double> x, Vertex i);
std::vector<double> link_values(const Hypergraph& h, std::span<const double> x);

/// max_i |lambda * x_i^(p-1) - link_i| over non-isolated i. For p == 1 the
/// maximum runs over the support of x only.
double eigen_residual(const Hypergraph& h, std::span<const double> x, double lambda, double p);

/// Lower bound on the p-spectral radius from the best of several runs of the
/// fixed-point iteration x_i <- link_i^(1/(p-1)), p-normalized. Restart 0
/// starts from `warm_start` when given, otherwise from the uniform vector on
/// non-isolated vertices; the rest start from seeded random positive vectors.
/// Infinite p is answered analytically as r! * m.
SpectralEstimate p_spectral_radius(const Hypergraph& h, const SolverConfig& config,
                                   std::span<const double> warm_start = {});

/// Lagrangian (p = 1) by multiplicative ascent on the simplex. config.p is
/// ignored.
SpectralEstimate lagrangian(const Hypergraph& h, const SolverConfig& config);

struct EdgeCountLimit {
  SpectralEstimate estimate;
  double lower = 0.0;  ///< r! m n^(-r/p)
  double upper = 0.0;  ///< (r! m)^(1 - 1/p)
};

/// Large-p estimate with the bracket it must fall in. Requires p_large >= 32.
EdgeCountLimit edge_count_limit(const Hypergraph& h, double p_large, SolverConfig config);

/// Test oracle: best value over a simplex grid mapped onto the nonnegative
/// p-sphere (x_i = w_i^(1/p)), polished by pairwise mass transfers.
/// Requires order <= 6.
double brute_force_spectral(const Hypergraph& h, double p, std::size_t resolution);

Report spectral_report(const SpectralEstimate& est, const SolverConfig& config);

}  // namespace hyperspec
