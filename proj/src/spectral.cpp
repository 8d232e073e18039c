#include "hyperspec/spectral.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <thread>

#include "hyperspec/error.hpp"
#include "hyperspec/kernels.hpp"
#include "hyperspec/seed.hpp"

namespace hyperspec {

double WeightVector::norm() const {
  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
  }
  double s = 0.0;
  for (double v : values) s += std::pow(std::abs(v), p);
  return std::pow(s, 1.0 / p);
}

void SolverConfig::validate() const {
  if (!(p > 1.0)) throw InputError("p-spectral radius requires p > 1 (use the Lagrangian for p = 1)");
  if (!(tolerance > 0.0)) throw InputError("tolerance must be positive");
  if (restarts < 1) throw InputError("restarts must be at least 1");
  if (!(damping > 0.0 && damping <= 1.0)) throw InputError("damping must lie in (0, 1]");
  if (max_iterations < 1) throw InputError("max_iterations must be at least 1");
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Shared evaluation buffers for one hypergraph; one instance per worker.
class Evaluator {
 public:
  explicit Evaluator(const Hypergraph& h)
      : table_(h),
        kernels_(kernels::active_kernels()),
        products_(table_.m),
        loo_(table_.m * table_.r),
        r_fact_(factorial(table_.r)),
        r1_fact_(factorial(table_.r - 1)) {}

  double poly(std::span<const double> x) {
    kernels_.edge_products(table_, x, products_);
    return r_fact_ * kernels::sum_in_edge_order(products_);
  }

  void links(std::span<const double> x, std::span<double> out) {
    kernels_.leave_one_out(table_, x, loo_);
    kernels::scatter_links(table_, loo_, out);
    for (double& v : out) v *= r1_fact_;
  }

 private:
  kernels::EdgeTable table_;
  const kernels::KernelSet& kernels_;
  std::vector<double> products_;
  std::vector<double> loo_;
  double r_fact_;
  double r1_fact_;
};

double p_norm(std::span<const double> x, double p) {
  if (p == 1.0) {
    double s = 0.0;
    for (double v : x) s += v;
    return s;
  }
  double s = 0.0;
  for (double v : x) s += std::pow(v, p);
  return std::pow(s, 1.0 / p);
}

bool normalize(std::span<double> x, double p) {
  const double nrm = p_norm(x, p);
  if (!(nrm > 0.0) || !std::isfinite(nrm)) return false;
  for (double& v : x) v /= nrm;
  return true;
}

double residual_from_links(std::span<const double> x, std::span<const double> links,
                           const std::vector<bool>& isolated, double lambda, double p) {
  double res = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (isolated[i]) continue;
    if (p == 1.0) {
      if (x[i] > 0.0) res = std::max(res, std::abs(lambda - links[i]));
    } else {
      res = std::max(res, std::abs(lambda * std::pow(x[i], p - 1.0) - links[i]));
    }
  }
  return res;
}

std::vector<double> random_start(std::uint64_t seed, std::size_t restart,
                                 const std::vector<bool>& isolated) {
  std::mt19937_64 rng(derive_seed(seed, restart));
  std::vector<double> x(isolated.size(), 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    // Uniform on (0, 1], drawn for every vertex so the stream does not depend
    // on which vertices are isolated.
    const double u = static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
    if (!isolated[i]) x[i] = u;
  }
  return x;
}

std::vector<double> uniform_start(const std::vector<bool>& isolated) {
  std::vector<double> x(isolated.size(), 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = isolated[i] ? 0.0 : 1.0;
  return x;
}

struct RunResult {
  std::vector<double> x;
  double lambda = 0.0;
  double residual = std::numeric_limits<double>::infinity();
  std::size_t iterations = 0;
  bool converged = false;
};

double ascent_slack(double lambda) { return 1e-14 * std::max(1.0, std::abs(lambda)); }

// Convergence: residual <= tol and |delta lambda| <= tol * max(1, lambda) on
// two consecutive iterations.
class ConvergenceTest {
 public:
  explicit ConvergenceTest(double tol) : tol_(tol) {}
  bool update(double residual, double lambda) {
    const bool ok = residual <= tol_ && std::abs(lambda - prev_) <= tol_ * std::max(1.0, lambda);
    prev_ = lambda;
    streak_ = ok ? streak_ + 1 : 0;
    return streak_ >= 2;
  }

 private:
  double tol_;
  double prev_ = kNaN;
  int streak_ = 0;
};

RunResult run_fixed_point(Evaluator& ev, const std::vector<bool>& isolated, std::vector<double> x,
                          const SolverConfig& cfg) {
  const std::size_t n = x.size();
  const double p = cfg.p;
  const double q = 1.0 / (p - 1.0);
  RunResult out;
  for (std::size_t i = 0; i < n; ++i) {
    if (isolated[i] || !(x[i] >= 0.0)) x[i] = 0.0;
  }
  if (!normalize(x, p)) {
    x = uniform_start(isolated);
    normalize(x, p);
  }

  std::vector<double> g(n), t(n), y(n);
  double lambda = ev.poly(x);
  ev.links(x, g);
  ConvergenceTest conv(cfg.tolerance);
  // Step weight halves, down to 1/16, after 64 iterations with no new best residual.
  double step = cfg.damping;
  double best_res = std::numeric_limits<double>::infinity();
  std::size_t stalled = 0;
  std::size_t it = 0;
  for (; it < cfg.max_iterations; ++it) {
    const double res = residual_from_links(x, g, isolated, lambda, p);
    if (conv.update(res, lambda)) {
      out.converged = true;
      break;
    }
    if (res < best_res) {
      best_res = res;
      stalled = 0;
    } else if (++stalled >= 64 && step > 0.0625) {
      step *= 0.5;
      stalled = 0;
      best_res = res;
    }
    for (std::size_t i = 0; i < n; ++i) t[i] = isolated[i] ? 0.0 : std::pow(g[i], q);
    if (!normalize(t, p)) break;
    // Step halving keeps the form non-decreasing (up to round-off).
    bool accepted = false;
    double ly = lambda;
    for (double alpha = step; alpha >= 1e-12; alpha *= 0.5) {
      for (std::size_t i = 0; i < n; ++i) y[i] = (1.0 - alpha) * x[i] + alpha * t[i];
      if (!normalize(y, p)) continue;
      ly = ev.poly(y);
      if (ly >= lambda - ascent_slack(lambda)) {
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
    x.swap(y);
    lambda = ly;
    ev.links(x, g);
  }
  out.iterations = it;
  out.lambda = lambda;
  out.residual = residual_from_links(x, g, isolated, lambda, p);
  if (out.converged && out.residual > cfg.tolerance) out.converged = false;
  out.x = std::move(x);
  return out;
}

RunResult run_simplex_ascent(Evaluator& ev, const std::vector<bool>& isolated, std::vector<double> x,
                             const SolverConfig& cfg) {
  const std::size_t n = x.size();
  RunResult out;
  normalize(x, 1.0);
  std::vector<double> g(n), y(n);
  double lambda = ev.poly(x);
  ev.links(x, g);
  ConvergenceTest conv(cfg.tolerance);
  std::size_t it = 0;
  for (; it < cfg.max_iterations; ++it) {
    const double res = residual_from_links(x, g, isolated, lambda, 1.0);
    if (conv.update(res, lambda)) {
      out.converged = true;
      break;
    }
    if (!(lambda > 0.0)) break;
    // Multiplicative update x_i <- x_i * link_i / lambda stays on the simplex
    // and never decreases a polynomial with nonnegative coefficients.
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = x[i] * g[i] / lambda;
      if (y[i] < 1e-14 && g[i] < lambda) y[i] = 0.0;
    }
    if (!normalize(y, 1.0)) break;
    const double ly = ev.poly(y);
    if (ly < lambda - ascent_slack(lambda)) break;
    x.swap(y);
    lambda = ly;
    ev.links(x, g);
  }
  out.iterations = it;
  out.lambda = lambda;
  out.residual = residual_from_links(x, g, isolated, lambda, 1.0);
  if (out.converged && out.residual > cfg.tolerance) out.converged = false;
  out.x = std::move(x);
  return out;
}

template <typename Run>
SpectralEstimate best_of_restarts(const Hypergraph& h, const SolverConfig& cfg,
                                  std::span<const double> warm_start, double p, Run run) {
  const auto isolated = isolated_vertices(h);
  const std::size_t restarts = cfg.restarts;
  std::vector<RunResult> results(restarts);
  auto start_for = [&](std::size_t k) {
    if (k == 0) {
      if (!warm_start.empty()) return std::vector<double>(warm_start.begin(), warm_start.end());
      return uniform_start(isolated);
    }
    return random_start(cfg.seed, k, isolated);
  };
  const std::size_t workers = std::max<std::size_t>(1, std::min(cfg.jobs, restarts));
  if (workers == 1) {
    Evaluator ev(h);
    for (std::size_t k = 0; k < restarts; ++k) results[k] = run(ev, isolated, start_for(k));
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        Evaluator ev(h);
        for (std::size_t k = next++; k < restarts; k = next++) results[k] = run(ev, isolated, start_for(k));
      });
    }
    for (auto& th : pool) th.join();
  }
  // Highest lambda wins; lambdas within tolerance tie and the lower residual
  // (then the lower restart index) wins.
  std::size_t best = 0;
  for (std::size_t k = 1; k < restarts; ++k) {
    const double tie = cfg.tolerance * std::max(1.0, std::abs(results[best].lambda));
    if (results[k].lambda > results[best].lambda + tie) {
      best = k;
    } else if (std::abs(results[k].lambda - results[best].lambda) <= tie &&
               results[k].residual < results[best].residual) {
      best = k;
    }
  }
  SpectralEstimate est;
  est.lambda = results[best].lambda;
  est.vector = WeightVector{std::move(results[best].x), p};
  est.residual = results[best].residual;
  est.iterations = results[best].iterations;
  est.restarts_used = restarts;
  est.converged = results[best].converged;
  return est;
}

SpectralEstimate edgeless_estimate(const Hypergraph& h, double p) {
  SpectralEstimate est;
  est.vector = WeightVector{std::vector<double>(h.order(), 0.0), p};
  est.converged = true;
  return est;
}

}  // namespace

double poly_form(const Hypergraph& h, std::span<const double> x) {
  if (x.size() != h.order()) throw InputError("weight vector size does not match vertex count");
  if (h.empty()) return 0.0;
  Evaluator ev(h);
  return ev.poly(x);
}

std::vector<double> link_values(const Hypergraph& h, std::span<const double> x) {
  if (x.size() != h.order()) throw InputError("weight vector size does not match vertex count");
  std::vector<double> g(h.order(), 0.0);
  if (h.empty()) return g;
  Evaluator ev(h);
  ev.links(x, g);
  return g;
}

double link_value(const Hypergraph& h, std::span<const double> x, Vertex i) {
  if (i >= h.order()) throw InputError("vertex out of range");
  return link_values(h, x)[i];
}

double eigen_residual(const Hypergraph& h, std::span<const double> x, double lambda, double p) {
  const auto g = link_values(h, x);
  return residual_from_links(x, g, isolated_vertices(h), lambda, p);
}

SpectralEstimate p_spectral_radius(const Hypergraph& h, const SolverConfig& config,
                                   std::span<const double> warm_start) {
  if (std::isinf(config.p) && config.p > 0) {
    SpectralEstimate est;
    est.lambda = factorial(h.uniformity()) * static_cast<double>(h.edge_count());
    est.vector = WeightVector{std::vector<double>(h.order(), 1.0), kInfiniteP};
    est.converged = true;
    return est;
  }
  config.validate();
  if (!warm_start.empty() && warm_start.size() != h.order()) {
    throw InputError("warm start size does not match vertex count");
  }
  if (h.empty()) return edgeless_estimate(h, config.p);
  return best_of_restarts(h, config, warm_start, config.p,
                          [&](Evaluator& ev, const std::vector<bool>& iso, std::vector<double> x0) {
                            return run_fixed_point(ev, iso, std::move(x0), config);
                          });
}

SpectralEstimate lagrangian(const Hypergraph& h, const SolverConfig& config) {
  SolverConfig cfg = config;
  cfg.p = 2.0;  // only to pass the shared validation
  cfg.validate();
  if (h.empty()) return edgeless_estimate(h, 1.0);
  return best_of_restarts(h, config, {}, 1.0,
                          [&](Evaluator& ev, const std::vector<bool>& iso, std::vector<double> x0) {
                            return run_simplex_ascent(ev, iso, std::move(x0), config);
                          });
}

EdgeCountLimit edge_count_limit(const Hypergraph& h, double p_large, SolverConfig config) {
  if (!(p_large >= 32.0)) throw InputError("edge_count_limit requires p >= 32");
  config.p = p_large;
  EdgeCountLimit out;
  out.estimate = p_spectral_radius(h, config);
  if (h.empty()) return out;
  const double rm = factorial(h.uniformity()) * static_cast<double>(h.edge_count());
  const double n = static_cast<double>(h.order());
  const double r = static_cast<double>(h.uniformity());
  out.lower = rm * std::pow(n, -r / p_large);
  out.upper = std::pow(rm, 1.0 - 1.0 / p_large);
  return out;
}

Report spectral_report(const SpectralEstimate& est, const SolverConfig& config) {
  Report rep;
  rep.add("lambda", est.lambda);
  rep.add("p", est.vector.p);
  rep.add("residual", est.residual);
  rep.add("iterations", est.iterations);
  rep.add("restarts_used", est.restarts_used);
  rep.add("converged", est.converged);
  rep.add("vector", std::span<const double>(est.vector.values));
  rep.add("seed", config.seed);
  return rep;
}

}  // namespace hyperspec
