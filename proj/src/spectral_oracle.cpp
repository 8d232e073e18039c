// Grid-search oracle for small p-spectral radius instances. Deliberately
// shares no code with the fixed-point solver.

#include <algorithm>
#include <cmath>
#include <functional>

#include "hyperspec/error.hpp"
#include "hyperspec/spectral.hpp"

namespace hyperspec {

namespace {

double direct_form(const Hypergraph& h, const std::vector<double>& x) {
  double s = 0.0;
  for (std::size_t e = 0; e < h.edge_count(); ++e) {
    double prod = 1.0;
    for (Vertex v : h.edge(e)) prod *= x[v];
    s += prod;
  }
  return factorial(h.uniformity()) * s;
}

double value_at(const Hypergraph& h, const std::vector<double>& w, double p,
                std::vector<double>& scratch) {
  for (std::size_t i = 0; i < w.size(); ++i) scratch[i] = std::pow(std::max(w[i], 0.0), 1.0 / p);
  return direct_form(h, scratch);
}

}  // namespace

double brute_force_spectral(const Hypergraph& h, double p, std::size_t resolution) {
  const std::size_t n = h.order();
  if (n > 6) throw CapExceeded("brute_force_spectral supports at most 6 vertices");
  if (!(p >= 1.0)) throw InputError("brute_force_spectral requires p >= 1");
  if (resolution < 1) throw InputError("resolution must be positive");
  if (h.empty()) return 0.0;
  if (std::isinf(p)) return factorial(h.uniformity()) * static_cast<double>(h.edge_count());

  // Enumerate all compositions of `resolution` into n nonnegative parts; keep
  // the best few as polish seeds.
  constexpr std::size_t kSeeds = 8;
  std::vector<std::pair<double, std::vector<double>>> seeds;
  std::vector<double> w(n), scratch(n);
  std::vector<std::size_t> parts(n, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t left) {
    if (i + 1 == n) {
      parts[i] = left;
      for (std::size_t j = 0; j < n; ++j) {
        w[j] = static_cast<double>(parts[j]) / static_cast<double>(resolution);
      }
      const double v = value_at(h, w, p, scratch);
      if (seeds.size() < kSeeds || v > seeds.back().first) {
        seeds.emplace_back(v, w);
        std::sort(seeds.begin(), seeds.end(),
                  [](const auto& a, const auto& b) { return a.first > b.first; });
        if (seeds.size() > kSeeds) seeds.pop_back();
      }
      return;
    }
    for (std::size_t c = 0; c <= left; ++c) {
      parts[i] = c;
      rec(i + 1, left - c);
    }
  };
  rec(0, resolution);

  // Pairwise mass transfer with a shrinking step.
  double best = 0.0;
  for (auto& [value, ws] : seeds) {
    double cur = value;
    for (double step = 1.0 / static_cast<double>(resolution); step > 1e-13; step *= 0.5) {
      bool improved = true;
      while (improved) {
        improved = false;
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = 0; j < n; ++j) {
            if (i == j || ws[i] <= 0.0) continue;
            const double d = std::min(step, ws[i]);
            ws[i] -= d;
            ws[j] += d;
            const double v = value_at(h, ws, p, scratch);
            if (v > cur) {
              cur = v;
              improved = true;
            } else {
              ws[i] += d;
              ws[j] -= d;
            }
          }
        }
      }
    }
    best = std::max(best, cur);
  }
  return best;
}

}  // namespace hyperspec
