#include <doctest.h>

#include <random>

#include "hyperspec/error.hpp"
#include "hyperspec/patterns.hpp"
#include "support.hpp"

using namespace hyperspec;

namespace {

SimpleGraph path3() { return SimpleGraph(3, {{0, 1}, {1, 2}}); }
SimpleGraph star3() { return SimpleGraph(4, {{0, 1}, {0, 2}, {0, 3}}); }

}  // namespace

TEST_SUITE("patterns") {

TEST_CASE("spec parsing round trips") {
  for (const char* text : {"none", "expansion:K4", "family:4", "disjoint:2 x K4", "expansion:K3"}) {
    auto spec = PatternSpec::parse(text);
    CHECK(spec.to_string() == text);
    CHECK(PatternSpec::parse(spec.to_string()).to_string() == text);
  }
  CHECK(PatternSpec::parse("disjoint:2xK4").to_string() == "disjoint:2 x K4");
  for (const char* bad : {"", "family", "family:x", "expansion:4", "disjoint:0 x K4", "clique:3"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(PatternSpec::parse(bad), InputError);
  }
}

TEST_CASE("an expansion contains itself with a valid certificate") {
  for (std::size_t k = 3; k <= 5; ++k) {
    auto f = SimpleGraph::complete(k);
    auto host = expansion(f, 3);
    auto emb = contains_expansion(host, f, 3);
    REQUIRE(emb.has_value());
    CHECK(validate_embedding(host, f, *emb));
    CHECK(emb->host_vertices().size() == host.order());
  }
}

TEST_CASE("turan graphs avoid the next clique's family and expansion") {
  for (std::size_t k = 3; k <= 4; ++k) {
    for (std::size_t n = k; n <= 12; ++n) {
      auto t = turan(n, k, 3);
      CHECK_FALSE(contains_family_member(t, k + 1).has_value());
      CHECK_FALSE(contains_expansion(t, SimpleGraph::complete(k + 1), 3).has_value());
    }
  }
  // T_3(n,3) does contain members of the 3-family once n >= 3.
  auto core = contains_family_member(turan(6, 3, 3), 3);
  REQUIRE(core.has_value());
  CHECK(validate_family_core(turan(6, 3, 3), *core, 3));
}

TEST_CASE("fast and reference searches agree on random graphs") {
  std::mt19937_64 rng(2024);
  const SimpleGraph patterns[] = {SimpleGraph::complete(3), path3(), star3()};
  int positives = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t n = 5 + trial % 4;
    auto h = testsupport::random_graph(n, 3, 0.15 + 0.05 * (trial % 5), rng);
    for (const auto& f : patterns) {
      auto emb = contains_expansion(h, f, 3);
      CHECK(emb.has_value() == reference::contains_expansion(h, f));
      if (emb) {
        ++positives;
        CHECK(validate_embedding(h, f, *emb));
      }
    }
    for (std::size_t k = 3; k <= 4; ++k) {
      auto core = contains_family_member(h, k);
      CHECK(core.has_value() == reference::contains_family_member(h, k));
      if (core) CHECK(validate_family_core(h, *core, k));
    }
  }
  CHECK(positives > 20);
}

TEST_CASE("disjoint copies agree with the reference search") {
  std::mt19937_64 rng(7);
  const auto f = SimpleGraph(2, {{0, 1}});
  for (int trial = 0; trial < 60; ++trial) {
    auto h = testsupport::random_graph(8, 3, 0.05 + 0.02 * (trial % 6), rng);
    for (std::size_t t = 1; t <= 2; ++t) {
      auto copies = contains_t_disjoint(h, f, 3, t);
      CHECK(copies.has_value() == reference::contains_t_disjoint(h, f, t));
      if (copies) CHECK(validate_disjoint(h, f, *copies, t));
    }
    auto p3 = contains_t_disjoint(h, path3(), 3, 2);
    CHECK(p3.has_value() == reference::contains_t_disjoint(h, path3(), 2));
  }
}

TEST_CASE("two disjoint K4 expansions") {
  auto k4 = SimpleGraph::complete(4);
  auto single = expansion(k4, 3);
  auto two = t_copies(single, 2);
  auto copies = contains_t_disjoint(two, k4, 3, 2);
  REQUIRE(copies.has_value());
  CHECK(validate_disjoint(two, k4, *copies, 2));
  CHECK_FALSE(contains_t_disjoint(single, k4, 3, 2).has_value());
  // K_1 v T_3(n-1,3) avoids two disjoint copies.
  for (std::size_t n = 4; n <= 13; ++n) {
    auto h = join(Hypergraph::edgeless(1, 3), turan(n - 1, 3, 3));
    CHECK_FALSE(contains_t_disjoint(h, k4, 3, 2).has_value());
  }
}

TEST_CASE("is_free dispatches on the spec kind") {
  auto k5 = complete(5, 3);
  CHECK(is_free(k5, PatternSpec::parse("none")));
  CHECK_FALSE(is_free(k5, PatternSpec::parse("family:4")));
  CHECK(is_free(k5, PatternSpec::parse("expansion:K4")));
  CHECK(is_free(k5, PatternSpec::parse("disjoint:2 x K4")));
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 30; ++trial) {
    auto h = testsupport::random_graph(7, 3, 0.3, rng);
    for (const char* s : {"family:4", "expansion:K3", "none"}) {
      auto spec = PatternSpec::parse(s);
      CHECK(is_free(h, spec) == reference::is_free(h, spec));
    }
  }
}

TEST_CASE("corrupted certificates are rejected") {
  auto f = SimpleGraph::complete(3);
  auto host = expansion(f, 3);
  auto emb = contains_expansion(host, f, 3);
  REQUIRE(emb.has_value());
  auto broken = *emb;
  std::swap(broken.core_map[0], broken.core_map[1]);
  broken.edge_assignment[0].host_edge = broken.edge_assignment[1].host_edge;
  CHECK_FALSE(validate_embedding(host, f, broken));
  const Vertex not_core[] = {0, 1, 2, 3};
  CHECK_FALSE(validate_family_core(turan(6, 3, 3), not_core, 4));
}

TEST_CASE("hosts above the order cap are refused") {
  auto big = Hypergraph::edgeless(kMaxSearchOrder + 1, 3);
  CHECK_THROWS_AS(contains_expansion(big, SimpleGraph::complete(3), 3), CapExceeded);
}

}  // TEST_SUITE
