#include <doctest.h>

#include <cstring>
#include <random>

#include "hyperspec/kernels.hpp"
#include "hyperspec/spectral.hpp"
#include "support.hpp"

using namespace hyperspec;
namespace k = hyperspec::kernels;

namespace {

bool bit_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

std::vector<double> random_weights(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> x(n);
  for (auto& v : x) v = u(rng);
  return x;
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("scalar kernels match a naive product") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    auto h = testsupport::random_graph(9, 3 + trial % 2, 0.4, rng);
    k::EdgeTable table(h);
    auto x = random_weights(h.order(), rng);
    std::vector<double> prod(h.edge_count()), loo(h.edge_count() * h.uniformity());
    k::scalar_kernels().edge_products(table, x, prod);
    k::scalar_kernels().leave_one_out(table, x, loo);
    for (std::size_t e = 0; e < h.edge_count(); ++e) {
      auto verts = h.edge(e);
      double p = 1.0;
      for (Vertex v : verts) p *= x[v];
      CHECK(prod[e] == doctest::Approx(p).epsilon(1e-14));
      for (std::size_t j = 0; j < verts.size(); ++j) {
        double q = 1.0;
        for (std::size_t i = 0; i < verts.size(); ++i) {
          if (i != j) q *= x[verts[i]];
        }
        CHECK(loo[j * h.edge_count() + e] == doctest::Approx(q).epsilon(1e-14));
      }
    }
  }
}

TEST_CASE("avx2 kernels are bit-identical to scalar") {
  const k::KernelSet* avx = k::avx2_kernels();
  if (avx == nullptr || !k::cpu_supports(k::Isa::avx2)) {
    MESSAGE("avx2 variant unavailable on this host; skipped");
    return;
  }
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t r = 2 + trial % 4;
    const std::size_t n = r + 1 + rng() % 8;
    auto h = testsupport::random_graph(n, r, 0.5, rng);
    k::EdgeTable table(h);
    auto x = random_weights(n, rng);
    std::vector<double> ps(h.edge_count()), pa(h.edge_count());
    std::vector<double> ls(h.edge_count() * r), la(h.edge_count() * r);
    k::scalar_kernels().edge_products(table, x, ps);
    avx->edge_products(table, x, pa);
    k::scalar_kernels().leave_one_out(table, x, ls);
    avx->leave_one_out(table, x, la);
    CHECK(bit_equal(ps, pa));
    CHECK(bit_equal(ls, la));
  }
}

TEST_CASE("active kernels give bit-identical solver output to the scalar path") {
  std::mt19937_64 rng(8);
  auto h = testsupport::random_graph(10, 3, 0.5, rng);
  SolverConfig cfg;
  cfg.p = 3.0;
  cfg.restarts = 4;
  auto a = p_spectral_radius(h, cfg);
  auto b = p_spectral_radius(h, cfg);
  CHECK(std::memcmp(&a.lambda, &b.lambda, sizeof(double)) == 0);
  CHECK(bit_equal(a.vector.values, b.vector.values));
  MESSAGE("active kernel set: " << k::active_kernels().name);
}

}  // TEST_SUITE
