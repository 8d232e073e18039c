#include "hyperspec/stability.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <string>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/max_cardinality_matching.hpp>

#include "hyperspec/error.hpp"
#include "hyperspec/seed.hpp"

namespace hyperspec {

// ---------------------------------------------------------------------------
// Partitions and configuration

std::vector<std::size_t> Partition::class_sizes() const {
  std::vector<std::size_t> sizes(k, 0);
  for (std::size_t c : assignment) ++sizes.at(c);
  return sizes;
}

std::vector<std::vector<Vertex>> Partition::classes() const {
  std::vector<std::vector<Vertex>> out(k);
  for (std::size_t v = 0; v < assignment.size(); ++v) out.at(assignment[v]).push_back(static_cast<Vertex>(v));
  return out;
}

void Partition::validate() const {
  for (std::size_t c : assignment) {
    if (c >= k) throw InputError("partition class index " + std::to_string(c) + " out of range");
  }
}

Partition block_partition(std::span<const std::size_t> sizes) {
  Partition p;
  p.k = sizes.size();
  for (std::size_t i = 0; i < sizes.size(); ++i) p.assignment.insert(p.assignment.end(), sizes[i], i);
  return p;
}

std::uint64_t AnalysisConfig::h() const {
  return t * ((k + 1) + (r - 2) * binomial(k + 1, 2));
}

std::uint64_t AnalysisConfig::d() const {
  if (r < 3) return h();
  return h() * binomial(n, r - 3);
}

double AnalysisConfig::ell() const {
  const double rr = static_cast<double>(r);
  return std::pow(epsilon, 3.0 / (2.0 * rr * rr)) * std::pow(static_cast<double>(n), rr - 1.0);
}

double AnalysisConfig::c0() const {
  double falling = 1.0;
  for (std::size_t i = 0; i < r; ++i) falling *= static_cast<double>(k) - static_cast<double>(i);
  return falling / (2.0 * std::pow(static_cast<double>(k), static_cast<double>(r)));
}

double AnalysisConfig::sparse_threshold() const {
  const double rr = static_cast<double>(r);
  return std::pow(epsilon, 1.0 / (rr * rr)) * static_cast<double>(n);
}

double AnalysisConfig::dominant_threshold() const { return theta * static_cast<double>(n); }

double AnalysisConfig::theta_floor() const {
  const double rr = static_cast<double>(r);
  return std::pow(epsilon, (rr - 1.0) / (rr * rr));
}

void AnalysisConfig::validate() const {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw InputError("epsilon must lie in (0, 1)");
  if (r < 2) throw InputError("r must be at least 2");
  if (k < 2) throw InputError("k must be at least 2");
  if (t < 1) throw InputError("t must be at least 1");
  if (!(theta > theta_floor())) {
    throw InputError("theta must exceed epsilon^((r-1)/r^2) = " + format_double(theta_floor()));
  }
}

// ---------------------------------------------------------------------------
// Scores

namespace {

std::size_t classes_met(std::span<const Vertex> edge, const std::vector<std::size_t>& assignment) {
  std::size_t count = 0;
  for (std::size_t a = 0; a < edge.size(); ++a) {
    bool fresh = true;
    for (std::size_t b = 0; b < a && fresh; ++b) fresh = assignment[edge[a]] != assignment[edge[b]];
    count += fresh;
  }
  return count;
}

void check_partition(const Hypergraph& h, const Partition& sigma) {
  if (sigma.assignment.size() != h.order()) {
    throw InputError("partition covers " + std::to_string(sigma.assignment.size()) + " vertices, graph has " +
                     std::to_string(h.order()));
  }
  sigma.validate();
}

// Edge indices grouped by their largest vertex, so a vertex-by-vertex
// search knows which edges become fully assigned at each step.
std::vector<std::vector<std::size_t>> edges_by_last_vertex(const Hypergraph& h) {
  std::vector<std::vector<std::size_t>> out(h.order());
  for (std::size_t e = 0; e < h.edge_count(); ++e) out[h.edge(e).back()].push_back(e);
  return out;
}

std::vector<std::vector<std::size_t>> incidence(const Hypergraph& h) {
  std::vector<std::vector<std::size_t>> inc(h.order());
  for (std::size_t e = 0; e < h.edge_count(); ++e) {
    for (Vertex v : h.edge(e)) inc[v].push_back(e);
  }
  return inc;
}

}  // namespace

std::uint64_t partition_score(const Hypergraph& h, const Partition& sigma) {
  check_partition(h, sigma);
  std::uint64_t score = 0;
  for (std::size_t e = 0; e < h.edge_count(); ++e) score += classes_met(h.edge(e), sigma.assignment);
  return score;
}

PartitionSearch optimize_partition(const Hypergraph& h, std::size_t k, std::uint64_t budget, std::uint64_t seed) {
  if (k < 2) throw InputError("optimize_partition requires k >= 2");
  const std::size_t n = h.order();
  const std::size_t r = h.uniformity();
  const std::size_t blocks = std::min(k, n);
  PartitionSearch best;
  best.sigma.k = k;

  if (n <= kExactPartitionOrder) {
    // Restricted growth strings with exactly `blocks` classes; splitting a
    // class never lowers the score, so this loses nothing.
    const auto by_last = edges_by_last_vertex(h);
    std::vector<std::size_t> suffix_edges(n + 1, 0);
    for (std::size_t v = n; v-- > 0;) suffix_edges[v] = suffix_edges[v + 1] + by_last[v].size();
    std::vector<std::size_t> a(n, 0);
    best.exact = true;
    bool have = false;
    std::function<void(std::size_t, std::size_t, std::uint64_t)> rec = [&](std::size_t v, std::size_t used,
                                                                          std::uint64_t score) {
      if (used + (n - v) < blocks) return;
      if (have && score + r * suffix_edges[v] <= best.score) return;
      if (v == n) {
        best.score = score;
        best.sigma.assignment = a;
        have = true;
        return;
      }
      const std::size_t limit = std::min(used + 1, blocks);
      for (std::size_t c = 0; c < limit; ++c) {
        a[v] = c;
        std::uint64_t add = 0;
        for (std::size_t e : by_last[v]) add += classes_met(h.edge(e), a);
        rec(v + 1, std::max(used, c + 1), score + add);
      }
    };
    rec(0, 0, 0);
    if (!have) best.sigma.assignment.assign(n, 0);
    return best;
  }

  const auto inc = incidence(h);
  std::vector<std::size_t> a(n);
  std::vector<Vertex> perm(n);
  std::uint64_t spent = 0;
  bool have = false;
  for (std::uint64_t restart = 0; spent < budget || !have; ++restart) {
    std::mt19937_64 rng(derive_seed(seed, restart));
    std::iota(perm.begin(), perm.end(), Vertex{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    for (std::size_t i = 0; i < n; ++i) a[perm[i]] = i % k;
    ++spent;
    bool improved = true;
    while (improved && spent < budget) {
      improved = false;
      for (std::size_t v = 0; v < n && spent < budget; ++v) {
        const std::size_t from = a[v];
        std::uint64_t current = 0;
        for (std::size_t e : inc[v]) current += classes_met(h.edge(e), a);
        std::size_t best_class = from;
        std::uint64_t best_local = current;
        for (std::size_t c = 0; c < k; ++c) {
          if (c == from) continue;
          a[v] = c;
          std::uint64_t s = 0;
          for (std::size_t e : inc[v]) s += classes_met(h.edge(e), a);
          if (s > best_local) {
            best_local = s;
            best_class = c;
          }
        }
        a[v] = best_class;
        if (best_class != from) {
          ++spent;
          improved = true;
        }
      }
    }
    Partition p{a, k};
    const std::uint64_t score = partition_score(h, p);
    if (!have || score > best.score) {
      best.score = score;
      best.sigma = std::move(p);
      have = true;
    }
  }
  best.moves = spent;
  return best;
}

EdgeDiff missing_bad_edges(const Hypergraph& h, const Partition& sigma) {
  check_partition(h, sigma);
  const std::size_t r = h.uniformity();
  if (sigma.k < r) throw InputError("missing/bad edges need at least r classes");
  std::uint64_t good = 0;
  for (std::size_t e = 0; e < h.edge_count(); ++e) good += classes_met(h.edge(e), sigma.assignment) == r;
  const auto sizes = sigma.class_sizes();
  const std::uint64_t total = multipartite_edge_count(sizes, r);
  return {total - good, h.edge_count() - good};
}

Closeness closeness_to_turan(const Hypergraph& h, std::size_t k, std::uint64_t budget, std::uint64_t seed) {
  const std::size_t n = h.order();
  const std::size_t r = h.uniformity();
  if (k < r || n < k) throw InputError("closeness_to_turan requires n >= k >= r");
  const std::uint64_t target = turan_edge_count(n, k, r);
  const std::size_t lo = n / k, hi = (n + k - 1) / k;
  Closeness out;
  std::uint64_t best_good = 0;
  std::vector<std::size_t> best_a;

  if (n <= kExactPartitionOrder) {
    out.exact = true;
    const auto by_last = edges_by_last_vertex(h);
    std::vector<std::size_t> suffix_edges(n + 1, 0);
    for (std::size_t v = n; v-- > 0;) suffix_edges[v] = suffix_edges[v + 1] + by_last[v].size();
    std::vector<std::size_t> a(n, 0), sizes(k, 0);
    bool have = false;
    std::function<void(std::size_t, std::size_t, std::uint64_t)> rec = [&](std::size_t v, std::size_t used,
                                                                          std::uint64_t good) {
      // Vertices still needed to bring every class up to the smaller size.
      std::size_t need = (k - used) * lo;
      for (std::size_t c = 0; c < used; ++c) need += sizes[c] < lo ? lo - sizes[c] : 0;
      if (need > n - v) return;
      if (have && good + suffix_edges[v] <= best_good) return;
      if (v == n) {
        best_good = good;
        best_a = a;
        have = true;
        return;
      }
      const std::size_t limit = std::min(used + 1, k);
      for (std::size_t c = 0; c < limit; ++c) {
        if (sizes[c] == hi) continue;
        a[v] = c;
        ++sizes[c];
        std::uint64_t add = 0;
        for (std::size_t e : by_last[v]) add += classes_met(h.edge(e), a) == r;
        rec(v + 1, std::max(used, c + 1), good + add);
        --sizes[c];
      }
    };
    rec(0, 0, 0);
  } else {
    // Swaps between classes keep the Turan sizes; accept strict gains.
    const auto inc = incidence(h);
    const auto part = turan_part_sizes(n, k);
    std::vector<std::size_t> a(n);
    std::vector<Vertex> perm(n);
    std::uint64_t spent = 0;
    bool have = false;
    auto local_good = [&](Vertex u, Vertex v) {
      std::uint64_t g = 0;
      for (std::size_t e : inc[u]) g += classes_met(h.edge(e), a) == r;
      for (std::size_t e : inc[v]) {
        auto ed = h.edge(e);
        if (std::find(ed.begin(), ed.end(), u) != ed.end()) continue;
        g += classes_met(ed, a) == r;
      }
      return g;
    };
    for (std::uint64_t restart = 0; spent < budget || !have; ++restart) {
      std::mt19937_64 rng(derive_seed(seed, restart));
      std::iota(perm.begin(), perm.end(), Vertex{0});
      std::shuffle(perm.begin(), perm.end(), rng);
      std::size_t pos = 0;
      for (std::size_t c = 0; c < k; ++c) {
        for (std::size_t j = 0; j < part.sizes[c]; ++j) a[perm[pos++]] = c;
      }
      ++spent;
      bool improved = true;
      while (improved && spent < budget) {
        improved = false;
        for (Vertex u = 0; u < n && spent < budget; ++u) {
          for (Vertex v = u + 1; v < n && spent < budget; ++v) {
            if (a[u] == a[v]) continue;
            const std::uint64_t before = local_good(u, v);
            std::swap(a[u], a[v]);
            if (local_good(u, v) > before) {
              ++spent;
              improved = true;
            } else {
              std::swap(a[u], a[v]);
            }
          }
        }
      }
      std::uint64_t good = 0;
      for (std::size_t e = 0; e < h.edge_count(); ++e) good += classes_met(h.edge(e), a) == r;
      if (!have || good > best_good) {
        best_good = good;
        best_a = a;
        have = true;
      }
    }
  }
  out.sigma = Partition{best_a, k};
  out.distance = target + h.edge_count() - 2 * best_good;
  out.epsilon_equiv = static_cast<double>(out.distance) / static_cast<double>(binomial(n, r));
  return out;
}

// ---------------------------------------------------------------------------
// Pair classification

PairClassification classify_pairs(const Hypergraph& h, const Partition& sigma, const AnalysisConfig& config) {
  check_partition(h, sigma);
  const std::size_t n = h.order();
  const auto cod = codegree_table(h);
  const std::uint64_t d = config.d();
  PairClassification pc;
  pc.sparse_count.assign(n, 0);
  pc.dominant_count.assign(n, 0);
  std::vector<std::vector<Vertex>> dominant_adj(n);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      const VertexPair pair{u, v, cod[u * n + v]};
      if (sigma.assignment[u] != sigma.assignment[v]) {
        if (pair.codegree <= d) {
          pc.sparse_pairs.push_back(pair);
          ++pc.sparse_count[u];
          ++pc.sparse_count[v];
        } else {
          pc.dense_pairs.push_back(pair);
        }
      } else if (pair.codegree >= d) {
        pc.dominant_pairs.push_back(pair);
        ++pc.dominant_count[u];
        ++pc.dominant_count[v];
        dominant_adj[u].push_back(v);
        dominant_adj[v].push_back(u);
      }
    }
  }
  std::vector<bool> in_l(n), in_w(n);
  for (Vertex v = 0; v < n; ++v) {
    in_l[v] = static_cast<double>(pc.sparse_count[v]) >= config.sparse_threshold();
    in_w[v] = static_cast<double>(pc.dominant_count[v]) >= config.dominant_threshold();
    if (in_l[v]) pc.L.push_back(v);
    if (in_w[v]) pc.W.push_back(v);
  }
  pc.D.assign(sigma.k, {});
  pc.T.assign(sigma.k, {});
  for (Vertex v = 0; v < n; ++v) {
    const std::size_t i = sigma.assignment[v];
    const bool in_d = std::any_of(dominant_adj[v].begin(), dominant_adj[v].end(),
                                  [&](Vertex w) { return !in_w[w] && !in_l[w]; });
    if (in_d) {
      pc.D[i].push_back(v);
    } else if (!in_w[v] && !in_l[v]) {
      pc.T[i].push_back(v);
    }
  }
  return pc;
}

Report stability_report(const Hypergraph& h, const AnalysisConfig& config, std::uint64_t budget,
                        std::uint64_t seed) {
  config.validate();
  if (config.n != h.order() || config.r != h.uniformity()) {
    throw InputError("analysis config does not match the graph's order and uniformity");
  }
  Report rep;
  rep.add("n", h.order());
  rep.add("r", h.uniformity());
  rep.add("edges", h.edge_count());
  rep.add("k", config.k);
  rep.add("t", config.t);
  rep.add("epsilon", config.epsilon);
  rep.add("theta", config.theta);
  rep.add("theta_floor", config.theta_floor());
  rep.add("h", config.h());
  rep.add("d", config.d());
  rep.add("ell", config.ell());
  rep.add("c0", config.c0());
  rep.add("c1", "unavailable");
  rep.add("sparse_threshold", config.sparse_threshold());
  rep.add("dominant_threshold", config.dominant_threshold());
  if (config.t >= 2) rep.add("f_bound", chvatal_hanson(config.t - 1, config.h() - 1));

  const auto opt = optimize_partition(h, config.k, budget, seed);
  rep.add("partition.exact", opt.exact);
  rep.add("partition.class_sizes", std::span<const std::size_t>(opt.sigma.class_sizes()));
  rep.add("partition.score", opt.score);
  rep.add("partition.score_max", static_cast<std::uint64_t>(h.uniformity() * h.edge_count()));
  if (config.k >= h.uniformity()) {
    const auto diff = missing_bad_edges(h, opt.sigma);
    rep.add("partition.missing", diff.missing);
    rep.add("partition.bad", diff.bad);
  }
  if (h.order() >= config.k && config.k >= h.uniformity()) {
    const auto close = closeness_to_turan(h, config.k, budget, seed);
    rep.add("closeness.exact", close.exact);
    rep.add("closeness.distance", close.distance);
    rep.add("closeness.epsilon_equiv", close.epsilon_equiv);
    rep.add("closeness.within_epsilon", close.epsilon_equiv <= config.epsilon);
  }
  const auto pc = classify_pairs(h, opt.sigma, config);
  rep.add("pairs.sparse", pc.sparse_pairs.size());
  rep.add("pairs.dense", pc.dense_pairs.size());
  rep.add("pairs.dominant", pc.dominant_pairs.size());
  rep.add("L", pc.L.size());
  rep.add("W", pc.W.size());
  std::vector<std::size_t> dsz, tsz;
  for (const auto& c : pc.D) dsz.push_back(c.size());
  for (const auto& c : pc.T) tsz.push_back(c.size());
  rep.add("D_sizes", std::span<const std::size_t>(dsz));
  rep.add("T_sizes", std::span<const std::size_t>(tsz));
  return rep;
}

// ---------------------------------------------------------------------------
// Matchings and bounded-degree graphs

std::size_t matching_number(const SimpleGraph& g) {
  using Graph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
  Graph bg(g.order());
  for (auto [u, v] : g.edges()) boost::add_edge(u, v, bg);
  std::vector<boost::graph_traits<Graph>::vertex_descriptor> mate(g.order());
  boost::edmonds_maximum_cardinality_matching(bg, &mate[0]);
  return boost::matching_size(bg, &mate[0]);
}

std::size_t max_degree(const SimpleGraph& g) {
  const auto deg = g.degrees();
  return deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
}

std::uint64_t chvatal_hanson(std::uint64_t beta, std::uint64_t delta) {
  if (beta < 1 || delta < 1) throw InputError("chvatal_hanson requires beta >= 1 and delta >= 1");
  return delta * beta + (delta / 2) * (beta / ((delta + 1) / 2));
}

std::uint64_t brute_force_f(std::size_t beta, std::size_t delta, std::size_t n_max) {
  if (n_max > 9) throw CapExceeded("brute_force_f supports n_max <= 9");
  const std::size_t n = n_max;
  using Mask = std::uint32_t;
  std::vector<Mask> adj(n, 0);
  std::vector<std::size_t> deg(n, 0);

  // Matching number of the current graph restricted to `mask`.
  std::function<std::size_t(Mask)> matching = [&](Mask mask) -> std::size_t {
    if (mask == 0) return 0;
    const int v = std::countr_zero(mask);
    const Mask rest = mask & (mask - 1);
    std::size_t best = matching(rest);
    for (Mask nb = adj[v] & rest; nb; nb &= nb - 1) {
      const int u = std::countr_zero(nb);
      best = std::max(best, 1 + matching(rest & ~(Mask{1} << u)));
    }
    return best;
  };
  const Mask all = (Mask{1} << n) - 1;

  std::uint64_t best = 0, edges = 0;
  // Vertex i chooses its neighbors among later vertices. Vertices with no
  // edges yet are interchangeable, so they are only ever taken as a prefix.
  std::function<void(std::size_t)> vertex_step;
  std::function<void(std::size_t, std::size_t, bool)> choose = [&](std::size_t i, std::size_t j, bool skipped_fresh) {
    std::size_t capacity = 0;
    for (std::size_t v = i; v < n; ++v) capacity += delta - deg[v];
    // Every remaining edge uses two units of capacity among vertices >= i,
    // and at least one at vertex i or beyond for the current vertex.
    if (edges + capacity / 2 <= best && best > 0) return;
    if (j == n || deg[i] == delta) {
      vertex_step(i + 1);
      return;
    }
    const bool fresh = deg[j] == 0;
    if (deg[j] < delta && !(fresh && skipped_fresh)) {
      adj[i] |= Mask{1} << j;
      adj[j] |= Mask{1} << i;
      ++deg[i];
      ++deg[j];
      ++edges;
      if (matching(all) <= beta) choose(i, j + 1, skipped_fresh);
      --edges;
      --deg[i];
      --deg[j];
      adj[i] &= ~(Mask{1} << j);
      adj[j] &= ~(Mask{1} << i);
    }
    choose(i, j + 1, skipped_fresh || fresh);
  };
  vertex_step = [&](std::size_t i) {
    if (i >= n) {
      best = std::max(best, edges);
      return;
    }
    choose(i, i + 1, false);
  };
  vertex_step(0);
  return best;
}

IntersectionBound intersection_lower_bound(std::span<const std::vector<long long>> sets) {
  if (sets.empty()) throw InputError("intersection_lower_bound needs at least one set");
  std::vector<std::vector<long long>> norm;
  for (const auto& s : sets) {
    auto c = s;
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    norm.push_back(std::move(c));
  }
  std::vector<long long> uni, inter = norm.front();
  long long total = 0;
  for (const auto& s : norm) {
    total += static_cast<long long>(s.size());
    std::vector<long long> u2, i2;
    std::set_union(uni.begin(), uni.end(), s.begin(), s.end(), std::back_inserter(u2));
    std::set_intersection(inter.begin(), inter.end(), s.begin(), s.end(), std::back_inserter(i2));
    uni = std::move(u2);
    inter = std::move(i2);
  }
  IntersectionBound out;
  out.bound = total - static_cast<long long>(norm.size() - 1) * static_cast<long long>(uni.size());
  out.exact = inter.size();
  return out;
}

}  // namespace hyperspec
