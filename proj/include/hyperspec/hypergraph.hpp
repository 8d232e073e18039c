#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace hyperspec {

using Vertex = std::uint32_t;

/// C(n, m) with C(n, 0) = 1 and C(n, m) = 0 for m > n. Throws on overflow.
std::uint64_t binomial(std::uint64_t n, std::uint64_t m);

/// r! as a double (exact for r <= 18).
double factorial(std::size_t r);

/// Immutable r-uniform hypergraph on vertices 0..n-1.
///
/// Edges are stored flat, each sorted ascending, the edge list sorted
/// lexicographically and deduplicated. Equality and serialization rely on
/// this canonical form.
class Hypergraph {
 public:
  Hypergraph() = default;

  /// Canonicalizes `flat_edges` (r vertices per edge). Throws InputError on
  /// repeated vertices within an edge, vertices >= n, a length that is not a
  /// multiple of r, or r < 2.
  Hypergraph(std::size_t n, std::size_t r, std::vector<Vertex> flat_edges);

  static Hypergraph edgeless(std::size_t n, std::size_t r);

  std::size_t order() const { return n_; }
  std::size_t uniformity() const { return r_; }
  std::size_t edge_count() const { return r_ == 0 ? 0 : flat_.size() / r_; }
  bool empty() const { return flat_.empty(); }

  std::span<const Vertex> edge(std::size_t i) const {
    return {flat_.data() + i * r_, r_};
  }
  std::span<const Vertex> flat() const { return flat_; }

  /// `sorted_edge` must be sorted ascending.
  bool has_edge(std::span<const Vertex> sorted_edge) const;
  /// Index of the edge in canonical order, or edge_count() if absent.
  std::size_t find_edge(std::span<const Vertex> sorted_edge) const;

  bool operator==(const Hypergraph&) const = default;

 private:
  std::size_t n_ = 0;
  std::size_t r_ = 2;
  std::vector<Vertex> flat_;
};

/// Simple graph in the same canonical form as a 2-uniform Hypergraph.
class SimpleGraph {
 public:
  using Edge = std::pair<Vertex, Vertex>;

  SimpleGraph() = default;
  SimpleGraph(std::size_t n, std::vector<Edge> edges);

  static SimpleGraph complete(std::size_t k);

  std::size_t order() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }
  bool has_edge(Vertex u, Vertex v) const;
  std::vector<std::size_t> degrees() const;

  bool operator==(const SimpleGraph&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
};

/// Sizes of the k vertex classes of a multipartite construction.
struct PartSizes {
  std::vector<std::size_t> sizes;

  std::size_t classes() const { return sizes.size(); }
  std::size_t total() const;
};

Hypergraph make_hypergraph(std::size_t n, std::size_t r,
                           std::span<const std::vector<Vertex>> edges);

Hypergraph to_hypergraph(const SimpleGraph& g);
/// Requires uniformity 2.
SimpleGraph to_simple_graph(const Hypergraph& h);

Hypergraph complete(std::size_t n, std::size_t r);

/// Classes occupy consecutive index blocks in part order.
Hypergraph complete_multipartite(const PartSizes& parts, std::size_t r);

/// Part i (1-based) gets floor((n + i - 1) / k) vertices.
PartSizes turan_part_sizes(std::size_t n, std::size_t k);
Hypergraph turan(std::size_t n, std::size_t k, std::size_t r);
/// Elementary symmetric sum over the Turan part sizes, exact.
std::uint64_t turan_edge_count(std::size_t n, std::size_t k, std::size_t r);
/// e_r(sizes): edge count of the complete multipartite r-graph.
std::uint64_t multipartite_edge_count(std::span<const std::size_t> sizes,
                                      std::size_t r);

/// Second operand relabeled by offset order(a) in all three.
Hypergraph join(const Hypergraph& a, const Hypergraph& b);
Hypergraph disjoint_union(const Hypergraph& a, const Hypergraph& b);
Hypergraph t_copies(const Hypergraph& h, std::size_t t);

/// Edge-set union on a shared vertex set.
Hypergraph sum(const Hypergraph& a, const Hypergraph& b);

/// Expansion vertices are appended after V(F), r-2 per edge, in F's
/// canonical edge order.
Hypergraph expansion(const SimpleGraph& f, std::size_t r);

SimpleGraph shadow(const Hypergraph& h);

struct InducedSubgraph {
  Hypergraph graph;
  /// vertices[new_label] = old_label, ascending.
  std::vector<Vertex> vertices;
};

InducedSubgraph induced_vertices(const Hypergraph& h,
                                 std::span<const Vertex> keep);
InducedSubgraph induced_edges(const Hypergraph& h,
                              std::span<const std::size_t> edge_indices);

std::size_t degree(const Hypergraph& h, Vertex u);
std::size_t codegree(const Hypergraph& h, Vertex u, Vertex v);
std::vector<std::size_t> degrees(const Hypergraph& h);

/// Codegree of every pair as a dense n*n table (diagonal zero).
std::vector<std::size_t> codegree_table(const Hypergraph& h);

/// Applies `perm` (old label -> new label), which must be a permutation.
Hypergraph relabel(const Hypergraph& h, std::span<const Vertex> perm);

bool is_connected(const Hypergraph& h);
std::vector<bool> isolated_vertices(const Hypergraph& h);

/// Calls f(span of r ascending indices in [0,n)) for every r-subset in
/// lexicographic order.
template <typename F>
void for_each_subset(std::size_t n, std::size_t r, F&& f) {
  if (r > n) return;
  std::vector<Vertex> idx(r);
  for (std::size_t i = 0; i < r; ++i) idx[i] = static_cast<Vertex>(i);
  while (true) {
    f(std::span<const Vertex>(idx));
    std::size_t i = r;
    while (i > 0 && idx[i - 1] == n - r + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace hyperspec
