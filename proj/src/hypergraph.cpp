#include "hyperspec/hypergraph.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "hyperspec/error.hpp"

namespace hyperspec {

std::uint64_t binomial(std::uint64_t n, std::uint64_t m) {
  if (m > n) return 0;
  m = std::min(m, n - m);
  std::uint64_t c = 1;
  for (std::uint64_t i = 1; i <= m; ++i) {
    // c * (n - m + i) is divisible by i; divide first where possible.
    const std::uint64_t num = n - m + i;
    const std::uint64_t g = std::gcd(c, i);
    const std::uint64_t c1 = c / g;
    const std::uint64_t num1 = num / (i / g);
    if (c1 != 0 && num1 > UINT64_MAX / c1) throw CapExceeded("binomial overflow");
    c = c1 * num1;
  }
  return c;
}

double factorial(std::size_t r) {
  double f = 1.0;
  for (std::size_t i = 2; i <= r; ++i) f *= static_cast<double>(i);
  return f;
}

namespace {

void canonicalize(std::size_t n, std::size_t r, std::vector<Vertex>& flat) {
  if (r < 2) throw InputError("uniformity must be at least 2");
  if (flat.size() % r != 0) throw InputError("edge list length is not a multiple of r");
  const std::size_t m = flat.size() / r;
  for (std::size_t e = 0; e < m; ++e) {
    auto first = flat.begin() + static_cast<std::ptrdiff_t>(e * r);
    std::sort(first, first + static_cast<std::ptrdiff_t>(r));
    for (std::size_t j = 0; j < r; ++j) {
      const Vertex v = first[static_cast<std::ptrdiff_t>(j)];
      if (v >= n) {
        throw InputError("vertex " + std::to_string(v) + " out of range for n = " +
                         std::to_string(n));
      }
      if (j > 0 && first[static_cast<std::ptrdiff_t>(j - 1)] == v) {
        throw InputError("edge repeats vertex " + std::to_string(v));
      }
    }
  }
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto edge_at = [&](std::size_t e) {
    return std::span<const Vertex>(flat.data() + e * r, r);
  };
  auto less = [&](std::size_t a, std::size_t b) {
    auto ea = edge_at(a), eb = edge_at(b);
    return std::lexicographical_compare(ea.begin(), ea.end(), eb.begin(), eb.end());
  };
  if (!std::is_sorted(order.begin(), order.end(), less)) {
    std::sort(order.begin(), order.end(), less);
  }
  std::vector<Vertex> out;
  out.reserve(flat.size());
  for (std::size_t i = 0; i < m; ++i) {
    auto e = edge_at(order[i]);
    if (i > 0 && std::equal(e.begin(), e.end(), edge_at(order[i - 1]).begin())) continue;
    out.insert(out.end(), e.begin(), e.end());
  }
  flat = std::move(out);
}

}  // namespace

Hypergraph::Hypergraph(std::size_t n, std::size_t r, std::vector<Vertex> flat_edges)
    : n_(n), r_(r), flat_(std::move(flat_edges)) {
  canonicalize(n_, r_, flat_);
}

Hypergraph Hypergraph::edgeless(std::size_t n, std::size_t r) { return {n, r, {}}; }

std::size_t Hypergraph::find_edge(std::span<const Vertex> sorted_edge) const {
  const std::size_t m = edge_count();
  if (sorted_edge.size() != r_) return m;
  std::size_t lo = 0, hi = m;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    auto e = edge(mid);
    if (std::lexicographical_compare(e.begin(), e.end(), sorted_edge.begin(),
                                     sorted_edge.end())) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  if (lo < m && std::equal(sorted_edge.begin(), sorted_edge.end(), edge(lo).begin())) {
    return lo;
  }
  return m;
}

bool Hypergraph::has_edge(std::span<const Vertex> sorted_edge) const {
  return find_edge(sorted_edge) != edge_count();
}

SimpleGraph::SimpleGraph(std::size_t n, std::vector<Edge> edges) : n_(n) {
  for (auto& [u, v] : edges) {
    if (u == v) throw InputError("graph edge repeats vertex " + std::to_string(u));
    if (u >= n || v >= n) throw InputError("graph vertex out of range");
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges_ = std::move(edges);
}

SimpleGraph SimpleGraph::complete(std::size_t k) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < k; ++u) {
    for (Vertex v = u + 1; v < k; ++v) edges.emplace_back(u, v);
  }
  return {k, std::move(edges)};
}

bool SimpleGraph::has_edge(Vertex u, Vertex v) const {
  if (u > v) std::swap(u, v);
  return std::binary_search(edges_.begin(), edges_.end(), Edge{u, v});
}

std::vector<std::size_t> SimpleGraph::degrees() const {
  std::vector<std::size_t> d(n_, 0);
  for (auto [u, v] : edges_) {
    ++d[u];
    ++d[v];
  }
  return d;
}

std::size_t PartSizes::total() const {
  return std::accumulate(sizes.begin(), sizes.end(), std::size_t{0});
}

Hypergraph make_hypergraph(std::size_t n, std::size_t r,
                           std::span<const std::vector<Vertex>> edges) {
  std::vector<Vertex> flat;
  flat.reserve(edges.size() * r);
  for (const auto& e : edges) {
    if (e.size() != r) {
      throw InputError("edge has " + std::to_string(e.size()) + " vertices, expected " +
                       std::to_string(r));
    }
    flat.insert(flat.end(), e.begin(), e.end());
  }
  return {n, r, std::move(flat)};
}

Hypergraph to_hypergraph(const SimpleGraph& g) {
  std::vector<Vertex> flat;
  flat.reserve(2 * g.edge_count());
  for (auto [u, v] : g.edges()) {
    flat.push_back(u);
    flat.push_back(v);
  }
  return {g.order(), 2, std::move(flat)};
}

SimpleGraph to_simple_graph(const Hypergraph& h) {
  if (h.uniformity() != 2) throw InputError("expected a 2-uniform graph");
  std::vector<SimpleGraph::Edge> edges;
  for (std::size_t i = 0; i < h.edge_count(); ++i) edges.emplace_back(h.edge(i)[0], h.edge(i)[1]);
  return {h.order(), std::move(edges)};
}

Hypergraph complete(std::size_t n, std::size_t r) {
  if (r < 2) throw InputError("uniformity must be at least 2");
  if (n < r) throw InputError("complete(n, r) requires n >= r");
  std::vector<Vertex> flat;
  flat.reserve(binomial(n, r) * r);
  for_each_subset(n, r, [&](std::span<const Vertex> s) { flat.insert(flat.end(), s.begin(), s.end()); });
  return {n, r, std::move(flat)};
}

Hypergraph complete_multipartite(const PartSizes& parts, std::size_t r) {
  const std::size_t k = parts.classes();
  if (r < 2) throw InputError("uniformity must be at least 2");
  if (k < r) {
    throw InputError("complete_multipartite needs at least r classes (k = " + std::to_string(k) +
                     ", r = " + std::to_string(r) + ")");
  }
  for (std::size_t s : parts.sizes) {
    if (s == 0) throw InputError("part sizes must be positive");
  }
  std::vector<Vertex> start(k);
  Vertex offset = 0;
  for (std::size_t i = 0; i < k; ++i) {
    start[i] = offset;
    offset += static_cast<Vertex>(parts.sizes[i]);
  }
  std::vector<Vertex> flat;
  std::vector<Vertex> pick(r);
  for_each_subset(k, r, [&](std::span<const Vertex> classes) {
    // Odometer over one vertex per chosen class.
    std::vector<std::size_t> digit(r, 0);
    while (true) {
      for (std::size_t j = 0; j < r; ++j) pick[j] = start[classes[j]] + static_cast<Vertex>(digit[j]);
      flat.insert(flat.end(), pick.begin(), pick.end());
      std::size_t j = r;
      while (j > 0) {
        --j;
        if (++digit[j] < parts.sizes[classes[j]]) break;
        digit[j] = 0;
        if (j == 0) return;
      }
    }
  });
  return {parts.total(), r, std::move(flat)};
}

PartSizes turan_part_sizes(std::size_t n, std::size_t k) {
  if (k == 0 || n < k) throw InputError("turan part sizes require n >= k >= 1");
  PartSizes p;
  for (std::size_t i = 1; i <= k; ++i) p.sizes.push_back((n + i - 1) / k);
  return p;
}

Hypergraph turan(std::size_t n, std::size_t k, std::size_t r) {
  if (!(n >= k && k >= r && r >= 2)) throw InputError("turan requires n >= k >= r >= 2");
  return complete_multipartite(turan_part_sizes(n, k), r);
}

std::uint64_t multipartite_edge_count(std::span<const std::size_t> sizes, std::size_t r) {
  // e[j] = elementary symmetric polynomial of degree j over processed sizes.
  std::vector<std::uint64_t> e(r + 1, 0);
  e[0] = 1;
  for (std::size_t s : sizes) {
    for (std::size_t j = r; j >= 1; --j) e[j] += e[j - 1] * s;
  }
  return e[r];
}

std::uint64_t turan_edge_count(std::size_t n, std::size_t k, std::size_t r) {
  if (!(n >= k && k >= r && r >= 2)) throw InputError("turan_edge_count requires n >= k >= r >= 2");
  return multipartite_edge_count(turan_part_sizes(n, k).sizes, r);
}

namespace {

void require_same_r(const Hypergraph& a, const Hypergraph& b) {
  if (a.uniformity() != b.uniformity()) {
    throw InputError("uniformity mismatch: " + std::to_string(a.uniformity()) + " vs " +
                     std::to_string(b.uniformity()));
  }
}

void append_shifted(std::vector<Vertex>& flat, const Hypergraph& h, Vertex offset) {
  for (Vertex v : h.flat()) flat.push_back(v + offset);
}

}  // namespace

Hypergraph join(const Hypergraph& a, const Hypergraph& b) {
  require_same_r(a, b);
  const std::size_t r = a.uniformity();
  const std::size_t n1 = a.order();
  const std::size_t n = n1 + b.order();
  std::vector<Vertex> flat(a.flat().begin(), a.flat().end());
  append_shifted(flat, b, static_cast<Vertex>(n1));
  for_each_subset(n, r, [&](std::span<const Vertex> s) {
    const bool meets_a = s.front() < n1;
    const bool meets_b = s.back() >= n1;
    if (meets_a && meets_b) flat.insert(flat.end(), s.begin(), s.end());
  });
  return {n, r, std::move(flat)};
}

Hypergraph disjoint_union(const Hypergraph& a, const Hypergraph& b) {
  require_same_r(a, b);
  std::vector<Vertex> flat(a.flat().begin(), a.flat().end());
  append_shifted(flat, b, static_cast<Vertex>(a.order()));
  return {a.order() + b.order(), a.uniformity(), std::move(flat)};
}

Hypergraph t_copies(const Hypergraph& h, std::size_t t) {
  if (t == 0) throw InputError("t_copies requires t >= 1");
  std::vector<Vertex> flat;
  flat.reserve(h.flat().size() * t);
  for (std::size_t c = 0; c < t; ++c) append_shifted(flat, h, static_cast<Vertex>(c * h.order()));
  return {h.order() * t, h.uniformity(), std::move(flat)};
}

Hypergraph sum(const Hypergraph& a, const Hypergraph& b) {
  require_same_r(a, b);
  if (a.order() != b.order()) throw InputError("sum requires equal vertex counts");
  std::vector<Vertex> flat(a.flat().begin(), a.flat().end());
  flat.insert(flat.end(), b.flat().begin(), b.flat().end());
  return {a.order(), a.uniformity(), std::move(flat)};
}

Hypergraph expansion(const SimpleGraph& f, std::size_t r) {
  if (r < 3) throw InputError("expansion requires r >= 3");
  const std::size_t n = f.order() + (r - 2) * f.edge_count();
  std::vector<Vertex> flat;
  flat.reserve(r * f.edge_count());
  Vertex next = static_cast<Vertex>(f.order());
  for (auto [u, v] : f.edges()) {
    flat.push_back(u);
    flat.push_back(v);
    for (std::size_t j = 0; j + 2 < r; ++j) flat.push_back(next++);
  }
  return {n, r, std::move(flat)};
}

SimpleGraph shadow(const Hypergraph& h) {
  std::vector<SimpleGraph::Edge> pairs;
  const std::size_t r = h.uniformity();
  for (std::size_t i = 0; i < h.edge_count(); ++i) {
    auto e = h.edge(i);
    for (std::size_t a = 0; a < r; ++a) {
      for (std::size_t b = a + 1; b < r; ++b) pairs.emplace_back(e[a], e[b]);
    }
  }
  return {h.order(), std::move(pairs)};
}

InducedSubgraph induced_vertices(const Hypergraph& h, std::span<const Vertex> keep) {
  std::vector<Vertex> verts(keep.begin(), keep.end());
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  constexpr Vertex kAbsent = ~Vertex{0};
  std::vector<Vertex> to_new(h.order(), kAbsent);
  for (std::size_t i = 0; i < verts.size(); ++i) {
    if (verts[i] >= h.order()) throw InputError("induced vertex out of range");
    to_new[verts[i]] = static_cast<Vertex>(i);
  }
  std::vector<Vertex> flat;
  for (std::size_t i = 0; i < h.edge_count(); ++i) {
    auto e = h.edge(i);
    if (std::all_of(e.begin(), e.end(), [&](Vertex v) { return to_new[v] != kAbsent; })) {
      for (Vertex v : e) flat.push_back(to_new[v]);
    }
  }
  return {Hypergraph(verts.size(), h.uniformity(), std::move(flat)), std::move(verts)};
}

InducedSubgraph induced_edges(const Hypergraph& h, std::span<const std::size_t> edge_indices) {
  if (edge_indices.empty()) throw InputError("edge-induced subhypergraph needs at least one edge");
  std::vector<Vertex> verts;
  for (std::size_t idx : edge_indices) {
    if (idx >= h.edge_count()) throw InputError("edge index out of range");
    auto e = h.edge(idx);
    verts.insert(verts.end(), e.begin(), e.end());
  }
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  std::vector<Vertex> flat;
  for (std::size_t idx : edge_indices) {
    for (Vertex v : h.edge(idx)) {
      flat.push_back(static_cast<Vertex>(std::lower_bound(verts.begin(), verts.end(), v) - verts.begin()));
    }
  }
  return {Hypergraph(verts.size(), h.uniformity(), std::move(flat)), std::move(verts)};
}

std::size_t degree(const Hypergraph& h, Vertex u) {
  if (u >= h.order()) throw InputError("vertex out of range");
  std::size_t d = 0;
  for (Vertex v : h.flat()) d += (v == u);
  return d;
}

std::size_t codegree(const Hypergraph& h, Vertex u, Vertex v) {
  if (u >= h.order() || v >= h.order()) throw InputError("vertex out of range");
  if (u == v) throw InputError("codegree needs two distinct vertices");
  std::size_t c = 0;
  for (std::size_t i = 0; i < h.edge_count(); ++i) {
    auto e = h.edge(i);
    c += std::binary_search(e.begin(), e.end(), u) && std::binary_search(e.begin(), e.end(), v);
  }
  return c;
}

std::vector<std::size_t> degrees(const Hypergraph& h) {
  std::vector<std::size_t> d(h.order(), 0);
  for (Vertex v : h.flat()) ++d[v];
  return d;
}

std::vector<std::size_t> codegree_table(const Hypergraph& h) {
  const std::size_t n = h.order();
  const std::size_t r = h.uniformity();
  std::vector<std::size_t> table(n * n, 0);
  for (std::size_t i = 0; i < h.edge_count(); ++i) {
    auto e = h.edge(i);
    for (std::size_t a = 0; a < r; ++a) {
      for (std::size_t b = a + 1; b < r; ++b) {
        ++table[e[a] * n + e[b]];
        ++table[e[b] * n + e[a]];
      }
    }
  }
  return table;
}

Hypergraph relabel(const Hypergraph& h, std::span<const Vertex> perm) {
  if (perm.size() != h.order()) throw InputError("permutation size mismatch");
  std::vector<bool> seen(h.order(), false);
  for (Vertex v : perm) {
    if (v >= h.order() || seen[v]) throw InputError("not a permutation");
    seen[v] = true;
  }
  std::vector<Vertex> flat;
  flat.reserve(h.flat().size());
  for (Vertex v : h.flat()) flat.push_back(perm[v]);
  return {h.order(), h.uniformity(), std::move(flat)};
}

std::vector<bool> isolated_vertices(const Hypergraph& h) {
  std::vector<bool> iso(h.order(), true);
  for (Vertex v : h.flat()) iso[v] = false;
  return iso;
}

bool is_connected(const Hypergraph& h) {
  const std::size_t n = h.order();
  if (n <= 1) return true;
  std::vector<Vertex> parent(n);
  std::iota(parent.begin(), parent.end(), Vertex{0});
  auto find = [&](Vertex x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < h.edge_count(); ++i) {
    auto e = h.edge(i);
    for (std::size_t j = 1; j < e.size(); ++j) parent[find(e[j])] = find(e[0]);
  }
  const Vertex root = find(0);
  for (Vertex v = 1; v < n; ++v) {
    if (find(v) != root) return false;
  }
  return true;
}

}  // namespace hyperspec
