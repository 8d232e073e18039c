#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "hyperspec/error.hpp"
#include "hyperspec/stability.hpp"
#include "support.hpp"

using namespace hyperspec;

namespace {

std::uint64_t naive_score(const Hypergraph& h, const std::vector<std::size_t>& cls) {
  std::uint64_t s = 0;
  for (auto& e : testsupport::edge_list(h)) {
    std::set<std::size_t> seen;
    for (Vertex v : e) seen.insert(cls[v]);
    s += seen.size();
  }
  return s;
}

/// Calls f on every map [n] -> [k].
template <typename F>
void for_each_coloring(std::size_t n, std::size_t k, F&& f) {
  std::vector<std::size_t> c(n, 0);
  while (true) {
    f(c);
    std::size_t i = 0;
    while (i < n && ++c[i] == k) c[i++] = 0;
    if (i == n) return;
  }
}

std::size_t naive_matching(const std::vector<std::pair<int, int>>& edges, std::size_t from, std::uint32_t used) {
  std::size_t best = 0;
  for (std::size_t i = from; i < edges.size(); ++i) {
    const std::uint32_t bits = (1u << edges[i].first) | (1u << edges[i].second);
    if (used & bits) continue;
    best = std::max(best, 1 + naive_matching(edges, i + 1, used | bits));
  }
  return best;
}

std::uint64_t closed_form_f(std::uint64_t b, std::uint64_t d) { return b * d + (d / 2) * (b / ((d + 1) / 2)); }

}  // namespace

TEST_SUITE("stability") {

TEST_CASE("partition score matches a direct count") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    auto h = testsupport::random_graph(8, 3, 0.4, rng);
    Partition sigma;
    sigma.k = 3;
    sigma.assignment.resize(8);
    for (auto& c : sigma.assignment) c = rng() % 3;
    CHECK(partition_score(h, sigma) == naive_score(h, sigma.assignment));
  }
}

TEST_CASE("exact partition optimum equals exhaustive colorings") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 12; ++trial) {
    const std::size_t n = 6 + trial % 3;
    const std::size_t k = 2 + trial % 2;
    auto h = testsupport::random_graph(n, 3, 0.5, rng);
    std::uint64_t best = 0;
    for_each_coloring(n, k, [&](const std::vector<std::size_t>& c) { best = std::max(best, naive_score(h, c)); });
    auto res = optimize_partition(h, k, 1000, 0);
    CHECK(res.exact);
    CHECK(res.score == best);
    CHECK(partition_score(h, res.sigma) == res.score);
  }
}

TEST_CASE("turan graphs are recovered exactly") {
  for (std::size_t n = 6; n <= 12; ++n) {
    auto t = turan(n, 3, 3);
    auto res = optimize_partition(t, 3, 1000, 0);
    CHECK(res.score == 3 * t.edge_count());
    auto sizes = res.sigma.class_sizes();
    std::sort(sizes.begin(), sizes.end());
    CHECK(sizes == turan_part_sizes(n, 3).sizes);
    auto close = closeness_to_turan(t, 3, 1000, 0);
    CHECK(close.distance == 0);
    CHECK(close.exact);
  }
}

TEST_CASE("heuristic partition search reaches the turan optimum above the exact cap") {
  auto t = turan(18, 3, 3);
  auto res = optimize_partition(t, 3, 20000, 1);
  CHECK_FALSE(res.exact);
  CHECK(res.score == 3 * t.edge_count());
}

TEST_CASE("closeness equals the best edit distance over turan-sized colorings") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 6; ++trial) {
    auto h = testsupport::random_graph(7, 3, 0.5, rng);
    auto sizes = turan_part_sizes(7, 3).sizes;
    std::uint64_t best = UINT64_MAX;
    for_each_coloring(7, 3, [&](const std::vector<std::size_t>& c) {
      std::vector<std::size_t> count(3, 0);
      for (auto x : c) ++count[x];
      std::sort(count.begin(), count.end());
      if (count != sizes) return;
      std::uint64_t diff = 0;
      hyperspec::for_each_subset(7, 3, [&](std::span<const Vertex> e) {
        const bool crossing = c[e[0]] != c[e[1]] && c[e[1]] != c[e[2]] && c[e[0]] != c[e[2]];
        diff += crossing != h.has_edge(e) ? 1 : 0;
      });
      best = std::min(best, diff);
    });
    auto close = closeness_to_turan(h, 3, 1000, 0);
    CHECK(close.distance == best);
    CHECK(close.epsilon_equiv == doctest::Approx(static_cast<double>(best) / 35.0));
    auto diff = missing_bad_edges(h, close.sigma);
    CHECK(diff.missing + diff.bad == best);
  }
}

TEST_CASE("pair classification is consistent") {
  std::mt19937_64 rng(41);
  auto h = testsupport::random_graph(10, 3, 0.5, rng);
  AnalysisConfig cfg;
  cfg.n = 10;
  cfg.k = 3;
  cfg.epsilon = 0.01;
  cfg.theta = std::pow(cfg.epsilon, 2.0 / 18.0);
  auto sigma = optimize_partition(h, 3, 1000).sigma;
  auto pc = classify_pairs(h, sigma, cfg);
  const double d = static_cast<double>(cfg.d());
  for (const auto& p : pc.sparse_pairs) {
    CHECK(sigma.assignment[p.u] != sigma.assignment[p.v]);
    CHECK(static_cast<double>(p.codegree) <= d);
    CHECK(p.codegree == codegree(h, p.u, p.v));
  }
  for (const auto& p : pc.dense_pairs) CHECK(static_cast<double>(p.codegree) > d);
  for (const auto& p : pc.dominant_pairs) {
    CHECK(sigma.assignment[p.u] == sigma.assignment[p.v]);
    CHECK(static_cast<double>(p.codegree) >= d);
  }
  CHECK(pc.sparse_pairs.size() + pc.dense_pairs.size() ==
        45 - [&] {
          std::size_t same = 0;
          for (Vertex u = 0; u < 10; ++u)
            for (Vertex v = u + 1; v < 10; ++v) same += sigma.assignment[u] == sigma.assignment[v];
          return same;
        }());
  CHECK(pc.D.size() == 3);
  CHECK(pc.T.size() == 3);
}

TEST_CASE("analysis config thresholds") {
  AnalysisConfig cfg;
  cfg.n = 12;
  cfg.r = 4;
  cfg.k = 5;
  cfg.epsilon = 0.01;
  cfg.theta = 0.9;
  CHECK(cfg.d() == cfg.h() * 12);
  CHECK(cfg.c0() == doctest::Approx(5.0 * 4 * 3 * 2 / (2.0 * 625)));
  CHECK(cfg.ell() == doctest::Approx(std::pow(0.01, 3.0 / 32.0) * std::pow(12.0, 3.0)));
  CHECK(cfg.theta_floor() == doctest::Approx(std::pow(0.01, 3.0 / 16.0)));
  cfg.theta = 0.1;
  CHECK_THROWS_AS(cfg.validate(), InputError);
  cfg.theta = 0.9;
  cfg.epsilon = 1.5;
  CHECK_THROWS_AS(cfg.validate(), InputError);
}

TEST_CASE("stability report carries the documented keys") {
  AnalysisConfig cfg;
  cfg.n = 9;
  cfg.k = 3;
  cfg.t = 2;
  cfg.theta = 0.8;
  auto rep = stability_report(turan(9, 3, 3), cfg, 1000);
  for (const char* key : {"h", "d", "ell", "c0", "c1", "partition.class_sizes", "partition.missing",
                          "partition.bad", "closeness.distance", "L", "W", "D_sizes", "T_sizes", "f_bound"}) {
    CAPTURE(key);
    CHECK_FALSE(rep.get(key).empty());
  }
  CHECK(rep.get("c1") == "unavailable");
  CHECK(rep.get("closeness.distance") == "0");
  cfg.n = 10;
  CHECK_THROWS_AS(stability_report(turan(9, 3, 3), cfg, 1000), InputError);
}

TEST_CASE("matching number matches a naive search") {
  std::mt19937_64 rng(55);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng() % 9;
    std::vector<SimpleGraph::Edge> edges;
    std::vector<std::pair<int, int>> plain;
    for (Vertex u = 0; u < n; ++u) {
      for (Vertex v = u + 1; v < n; ++v) {
        if (rng() % 3 == 0) {
          edges.emplace_back(u, v);
          plain.emplace_back(u, v);
        }
      }
    }
    SimpleGraph g(n, edges);
    CHECK(matching_number(g) == naive_matching(plain, 0, 0));
  }
}

TEST_CASE("chvatal-hanson agrees with a naive graph enumeration") {
  // Every graph on 6 vertices; extremal graphs for beta, delta <= 2 fit.
  const std::size_t n = 6;
  std::vector<std::pair<int, int>> all;
  for (int u = 0; u < 6; ++u)
    for (int v = u + 1; v < 6; ++v) all.emplace_back(u, v);
  std::uint64_t best[3][3] = {};
  for (std::uint32_t mask = 0; mask < (1u << all.size()); ++mask) {
    std::vector<std::pair<int, int>> edges;
    std::vector<int> deg(n, 0);
    for (std::size_t i = 0; i < all.size(); ++i) {
      if (mask >> i & 1) {
        edges.push_back(all[i]);
        ++deg[all[i].first];
        ++deg[all[i].second];
      }
    }
    const int delta = *std::max_element(deg.begin(), deg.end());
    if (delta > 2 || delta == 0) continue;
    const std::size_t beta = naive_matching(edges, 0, 0);
    if (beta > 2) continue;
    for (std::size_t b = beta; b <= 2; ++b)
      for (int d = delta; d <= 2; ++d) best[b][d] = std::max<std::uint64_t>(best[b][d], edges.size());
  }
  for (std::uint64_t b = 1; b <= 2; ++b) {
    for (std::uint64_t d = 1; d <= 2; ++d) {
      CHECK(chvatal_hanson(b, d) == best[b][d]);
      CHECK(brute_force_f(b, d, 9) == best[b][d]);
    }
  }
  for (std::uint64_t b = 1; b <= 3; ++b)
    for (std::uint64_t d = 1; d <= 3; ++d) CHECK(chvatal_hanson(b, d) == closed_form_f(b, d));
  CHECK_THROWS_AS(chvatal_hanson(0, 2), InputError);
  CHECK_THROWS_AS(brute_force_f(2, 2, 10), CapExceeded);
}

TEST_CASE("intersection lower bound never exceeds the true intersection") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t p = 2 + rng() % 3;
    std::vector<std::vector<long long>> sets(p);
    for (auto& s : sets) {
      for (long long x = 0; x < 12; ++x)
        if (rng() % 3) s.push_back(x);
    }
    auto ib = intersection_lower_bound(sets);
    std::set<long long> inter(sets[0].begin(), sets[0].end()), uni;
    long long total = 0;
    for (auto& s : sets) {
      std::set<long long> next;
      for (auto x : s) {
        uni.insert(x);
        if (inter.count(x)) next.insert(x);
      }
      inter = next;
      total += static_cast<long long>(s.size());
    }
    CHECK(ib.exact == inter.size());
    CHECK(ib.bound == total - static_cast<long long>(p - 1) * static_cast<long long>(uni.size()));
    CHECK(static_cast<long long>(ib.exact) >= ib.bound);
  }
}

}  // TEST_SUITE
