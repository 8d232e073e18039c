#include <doctest.h>

#include <random>
#include <set>

#include "hyperspec/error.hpp"
#include "hyperspec/hgr_io.hpp"
#include "hyperspec/hypergraph.hpp"
#include "support.hpp"

using namespace hyperspec;
using testsupport::choose;

TEST_SUITE("hypergraph") {

TEST_CASE("binomial agrees with Pascal's triangle") {
  for (std::uint64_t n = 0; n <= 40; ++n) {
    for (std::uint64_t k = 0; k <= n; ++k) CHECK(binomial(n, k) == choose(n, k));
  }
  CHECK(binomial(3, 5) == 0);
}

TEST_CASE("edges are canonicalized: sorted, deduplicated") {
  Hypergraph h(5, 3, {4, 1, 0, 0, 1, 4, 2, 3, 1});
  CHECK(h.edge_count() == 2);
  CHECK(std::vector<Vertex>(h.edge(0).begin(), h.edge(0).end()) == std::vector<Vertex>{0, 1, 4});
  CHECK(std::vector<Vertex>(h.edge(1).begin(), h.edge(1).end()) == std::vector<Vertex>{1, 2, 3});
  const Vertex probe[] = {0, 1, 4};
  CHECK(h.has_edge(probe));
}

TEST_CASE("malformed edges are rejected") {
  CHECK_THROWS_AS(Hypergraph(3, 3, {0, 1, 3}), InputError);
  CHECK_THROWS_AS(Hypergraph(3, 3, {0, 1, 1}), InputError);
  CHECK_THROWS_AS(Hypergraph(3, 3, {0, 1}), InputError);
  CHECK_THROWS_AS(Hypergraph(3, 1, {0}), InputError);
}

TEST_CASE("complete graph sizes") {
  for (std::size_t n = 3; n <= 9; ++n) {
    for (std::size_t r = 2; r <= std::min<std::size_t>(n, 5); ++r) {
      CHECK(complete(n, r).edge_count() == choose(n, r));
    }
  }
}

TEST_CASE("turan edge counts match a direct enumeration") {
  for (std::size_t r = 3; r <= 5; ++r) {
    for (std::size_t k = r; k <= 5; ++k) {
      for (std::size_t n = k; n <= 15; ++n) {
        const auto expected = testsupport::count_crossing_subsets(n, k, r);
        CHECK(turan(n, k, r).edge_count() == expected);
        CHECK(turan_edge_count(n, k, r) == expected);
      }
    }
  }
}

TEST_CASE("turan part sizes differ by at most one") {
  for (std::size_t k = 1; k <= 6; ++k) {
    for (std::size_t n = k; n <= 20; ++n) {
      auto p = turan_part_sizes(n, k);
      CHECK(p.total() == n);
      auto [lo, hi] = std::minmax_element(p.sizes.begin(), p.sizes.end());
      CHECK(*hi - *lo <= 1);
    }
  }
}

TEST_CASE("join adds exactly the crossing edges") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t na = 1 + rng() % 4, nb = 1 + rng() % 4;
    auto a = testsupport::random_graph(na, 3, 0.5, rng);
    auto b = testsupport::random_graph(nb, 3, 0.5, rng);
    auto j = join(a, b);
    const std::size_t n = na + nb;
    CHECK(j.edge_count() ==
          a.edge_count() + b.edge_count() + choose(n, 3) - choose(na, 3) - choose(nb, 3));
  }
  // K_1 join K_n^r is K_{n+1}^r.
  CHECK(join(Hypergraph::edgeless(1, 3), complete(5, 3)) == complete(6, 3));
}

TEST_CASE("disjoint union, t copies and sum") {
  auto k4 = complete(4, 3);
  auto two = t_copies(k4, 2);
  CHECK(two.order() == 8);
  CHECK(two.edge_count() == 8);
  CHECK(disjoint_union(k4, k4) == two);
  CHECK_FALSE(is_connected(two));
  CHECK(is_connected(k4));

  std::mt19937_64 rng(5);
  auto g = testsupport::random_graph(7, 3, 0.5, rng);
  std::vector<std::vector<Vertex>> e1, e2;
  for (auto& e : testsupport::edge_list(g)) (rng() & 1 ? e1 : e2).push_back(e);
  CHECK(sum(make_hypergraph(7, 3, e1), make_hypergraph(7, 3, e2)) == g);
}

TEST_CASE("expansion of K_k has the expected shape") {
  for (std::size_t k = 3; k <= 5; ++k) {
    for (std::size_t r = 3; r <= 4; ++r) {
      auto e = expansion(SimpleGraph::complete(k), r);
      const auto pairs = choose(k, 2);
      CHECK(e.edge_count() == pairs);
      CHECK(e.order() == k + pairs * (r - 2));
      auto deg = degrees(e);
      CHECK(std::count(deg.begin(), deg.end(), k - 1) == static_cast<long>(k));
      CHECK(std::count(deg.begin(), deg.end(), 1) == static_cast<long>(pairs * (r - 2)));
      CHECK(shadow(e).edge_count() == pairs * choose(r, 2));
    }
  }
}

TEST_CASE("shadow, degrees and codegrees agree with direct counts") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    auto h = testsupport::random_graph(8, 3, 0.3, rng);
    auto table = codegree_table(h);
    auto sh = shadow(h);
    for (Vertex u = 0; u < 8; ++u) {
      std::size_t d = 0;
      for (auto& e : testsupport::edge_list(h)) d += std::count(e.begin(), e.end(), u);
      CHECK(degree(h, u) == d);
      for (Vertex v = u + 1; v < 8; ++v) {
        std::size_t c = 0;
        for (auto& e : testsupport::edge_list(h)) {
          c += (std::count(e.begin(), e.end(), u) && std::count(e.begin(), e.end(), v)) ? 1 : 0;
        }
        CHECK(codegree(h, u, v) == c);
        CHECK(table[u * 8 + v] == c);
        CHECK(sh.has_edge(u, v) == (c > 0));
      }
    }
  }
}

TEST_CASE("relabel preserves the edge multiset of degrees") {
  std::mt19937_64 rng(9);
  auto h = testsupport::random_graph(9, 3, 0.4, rng);
  auto perm = testsupport::random_perm(9, rng);
  auto g = relabel(h, perm);
  CHECK(g.edge_count() == h.edge_count());
  for (Vertex v = 0; v < 9; ++v) CHECK(degree(g, perm[v]) == degree(h, v));
  std::vector<Vertex> bad{0, 0, 1, 2, 3, 4, 5, 6, 7};
  CHECK_THROWS_AS(relabel(h, bad), InputError);
}

TEST_CASE("induced subgraphs") {
  auto k6 = complete(6, 3);
  const Vertex keep[] = {1, 3, 5, 4};
  auto sub = induced_vertices(k6, keep);
  CHECK(sub.graph == complete(4, 3));
  const std::size_t idx[] = {0, 19};
  auto es = induced_edges(k6, idx);
  CHECK(es.graph.edge_count() == 2);
}

}  // TEST_SUITE
