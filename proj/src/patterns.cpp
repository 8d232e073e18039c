#include "hyperspec/patterns.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <functional>

#include "hyperspec/error.hpp"

namespace hyperspec {

namespace {

using Mask = std::uint64_t;

inline Mask bit(Vertex v) { return Mask{1} << v; }

std::size_t footprint(const SimpleGraph& f, std::size_t r) {
  return f.order() + (r - 2) * f.edge_count();
}

void require_search_order(const Hypergraph& h) {
  if (h.order() > kMaxSearchOrder) {
    throw CapExceeded("pattern search supports hosts with at most " + std::to_string(kMaxSearchOrder) +
                      " vertices (got " + std::to_string(h.order()) + ")");
  }
}

struct HostIndex {
  std::size_t n = 0;
  std::size_t r = 0;
  std::vector<Mask> edge_mask;
  std::vector<std::vector<std::uint32_t>> pair_edges;  // keyed min * n + max
  std::vector<std::size_t> degree;
  std::vector<Mask> shadow_adj;

  explicit HostIndex(const Hypergraph& h)
      : n(h.order()),
        r(h.uniformity()),
        edge_mask(h.edge_count(), 0),
        pair_edges(n * n),
        degree(n, 0),
        shadow_adj(n, 0) {
    for (std::size_t e = 0; e < h.edge_count(); ++e) {
      auto verts = h.edge(e);
      for (std::size_t a = 0; a < r; ++a) {
        edge_mask[e] |= bit(verts[a]);
        ++degree[verts[a]];
        for (std::size_t b = a + 1; b < r; ++b) {
          pair_edges[verts[a] * n + verts[b]].push_back(static_cast<std::uint32_t>(e));
          shadow_adj[verts[a]] |= bit(verts[b]);
          shadow_adj[verts[b]] |= bit(verts[a]);
        }
      }
    }
  }

  const std::vector<std::uint32_t>& edges_of(Vertex a, Vertex b) const {
    return a < b ? pair_edges[a * n + b] : pair_edges[b * n + a];
  }
};

struct PatternIndex {
  std::vector<SimpleGraph::Edge> edges;
  std::vector<Mask> adj;
  std::vector<std::size_t> degree;
  /// Non-isolated vertices, most constrained first.
  std::vector<Vertex> order;
  std::size_t isolated_count = 0;
  /// earlier[pos] = neighbors of order[pos] that appear before it in order.
  std::vector<std::vector<Vertex>> earlier;
  /// twins[u] = pattern vertices interchangeable with u (same open or same
  /// closed neighborhood). Images must increase with pattern label.
  std::vector<std::vector<Vertex>> twins;

  explicit PatternIndex(const SimpleGraph& f) : edges(f.edges().begin(), f.edges().end()) {
    const std::size_t k = f.order();
    if (k > 64) throw CapExceeded("pattern graphs are limited to 64 vertices");
    adj.assign(k, 0);
    for (auto [u, v] : edges) {
      adj[u] |= bit(v);
      adj[v] |= bit(u);
    }
    degree = f.degrees();
    std::vector<bool> placed(k, false);
    Mask placed_mask = 0;
    for (std::size_t step = 0; step < k; ++step) {
      // Most already-placed neighbors, then highest degree, then lowest label.
      std::size_t best = k;
      for (std::size_t u = 0; u < k; ++u) {
        if (placed[u] || degree[u] == 0) continue;
        if (best == k) {
          best = u;
          continue;
        }
        const auto conn = std::popcount(adj[u] & placed_mask);
        const auto best_conn = std::popcount(adj[best] & placed_mask);
        if (conn > best_conn || (conn == best_conn && degree[u] > degree[best])) best = u;
      }
      if (best == k) break;
      placed[best] = true;
      placed_mask |= bit(static_cast<Vertex>(best));
      order.push_back(static_cast<Vertex>(best));
    }
    for (std::size_t u = 0; u < k; ++u) isolated_count += degree[u] == 0;
    earlier.resize(order.size());
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
      for (std::size_t q = 0; q < pos; ++q) {
        if (adj[order[pos]] & bit(order[q])) earlier[pos].push_back(order[q]);
      }
    }
    twins.resize(k);
    for (std::size_t u = 0; u < k; ++u) {
      if (degree[u] == 0) continue;
      for (std::size_t v = 0; v < k; ++v) {
        if (u == v || degree[v] == 0) continue;
        const Mask bu = bit(static_cast<Vertex>(u)), bv = bit(static_cast<Vertex>(v));
        const bool false_twins = adj[u] == adj[v];
        const bool true_twins = (adj[u] | bu) == (adj[v] | bv);
        if (false_twins || true_twins) twins[u].push_back(static_cast<Vertex>(v));
      }
    }
  }
};

constexpr Vertex kUnmapped = ~Vertex{0};

// Finds t vertex-disjoint copies of F^(r): core maps for every copy first,
// then one joint assignment of all pattern edges to host edges. Copies are
// ordered by ascending minimum core image.
class CopySearch {
 public:
  CopySearch(const Hypergraph& host, const HostIndex& idx, const PatternIndex& pat, std::size_t f_order,
             std::size_t t)
      : host_(host),
        idx_(idx),
        pat_(pat),
        t_(t),
        e_(pat.edges.size()),
        phi_(t, std::vector<Vertex>(f_order, kUnmapped)),
        floor_(t, -1) {
    const std::size_t core = pat.order.size();
    const std::size_t extras = e_ * (idx.r - 2);
    per_copy_ = core + extras + pat.isolated_count;
    all_ = idx.n == 64 ? ~Mask{0} : (Mask{1} << idx.n) - 1;
  }

  std::optional<std::vector<Embedding>> run() {
    if (t_ * per_copy_ > idx_.n) return std::nullopt;
    if (!map_core(0, 0)) return std::nullopt;
    return result_;
  }

 private:
  // Every pattern edge with both ends mapped must keep a host edge avoiding
  // the other core images. Vertices lying in all such host edges of a
  // pattern edge are forced; forced sets must be pairwise disjoint. Updates
  // forced_ and reports consistency.
  bool propagate(std::size_t copies) {
    Mask acc = 0;
    for (std::size_t c = 0; c < copies; ++c) {
      const auto& phi = phi_[c];
      for (const auto& [pa, pb] : pat_.edges) {
        if (phi[pa] == kUnmapped || phi[pb] == kUnmapped) continue;
        const Mask pair = bit(phi[pa]) | bit(phi[pb]);
        Mask common = ~Mask{0};
        bool any = false;
        for (std::uint32_t e : idx_.edges_of(phi[pa], phi[pb])) {
          const Mask m = idx_.edge_mask[e];
          if ((m & core_mask_) != pair) continue;
          any = true;
          common &= m & ~pair;
          if (common == 0) break;
        }
        if (!any || (common & acc)) return false;
        acc |= common;
      }
    }
    forced_ = acc;
    return true;
  }

  // Host vertices still open to copy `copy` and adjacent in the shadow to
  // the images of every mapped neighbor of pattern vertex u.
  Mask domain(std::size_t copy, Vertex u) const {
    const long fl = floor_[copy];
    Mask d = fl + 1 >= 64 ? 0 : ~((Mask{1} << (fl + 1)) - 1);
    d &= all_ & ~core_mask_ & ~forced_;
    const auto& phi = phi_[copy];
    for (Mask nb = pat_.adj[u]; nb; nb &= nb - 1) {
      const Vertex w = static_cast<Vertex>(std::countr_zero(nb));
      if (phi[w] != kUnmapped) d &= idx_.shadow_adj[phi[w]];
    }
    return d;
  }

  bool map_core(std::size_t copy, std::size_t pos) {
    auto& phi = phi_[copy];
    if (pos == pat_.order.size()) {
      if (copy + 1 == t_) return start_assignment();
      Vertex lowest = kUnmapped;
      for (Vertex u : pat_.order) lowest = std::min(lowest, phi[u]);
      floor_[copy + 1] = static_cast<long>(lowest);
      return map_core(copy + 1, 0);
    }
    const Vertex u = pat_.order[pos];
    for (Mask cand = domain(copy, u); cand; cand &= cand - 1) {
      const Vertex h = static_cast<Vertex>(std::countr_zero(cand));
      if (idx_.degree[h] < pat_.degree[u]) continue;
      bool ok = true;
      for (Vertex w : pat_.twins[u]) {
        if (phi[w] == kUnmapped) continue;
        if ((w < u) != (phi[w] < h)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      core_mask_ |= bit(h);
      phi[u] = h;
      const Mask saved_forced = forced_;
      ok = propagate(copy + 1);
      if (ok) {
        for (std::size_t q = pos + 1; q < pat_.order.size() && ok; ++q) {
          ok = domain(copy, pat_.order[q]) != 0;
        }
        if (ok && map_core(copy, pos + 1)) return true;
      }
      forced_ = saved_forced;
      phi[u] = kUnmapped;
      core_mask_ &= ~bit(h);
    }
    return false;
  }

  bool start_assignment() {
    const std::size_t total = t_ * e_;
    candidates_.assign(total, {});
    for (std::size_t i = 0; i < total; ++i) {
      const auto& phi = phi_[i / e_];
      const auto [pa, pb] = pat_.edges[i % e_];
      const Mask pair = bit(phi[pa]) | bit(phi[pb]);
      for (std::uint32_t he : idx_.edges_of(phi[pa], phi[pb])) {
        if ((idx_.edge_mask[he] & core_mask_) == pair) candidates_[i].push_back(he);
      }
      if (candidates_[i].empty()) return false;
    }
    chosen_.assign(total, kNone);
    return assign(0, core_mask_);
  }

  // Minimum-remaining-values backtracking over pattern edges of all copies.
  bool assign(std::size_t done, Mask used) {
    const std::size_t total = chosen_.size();
    if (done == total) return emit(used);
    std::size_t pick = total, pick_count = 0;
    for (std::size_t i = 0; i < total; ++i) {
      if (chosen_[i] != kNone) continue;
      std::size_t cnt = 0;
      for (std::uint32_t he : candidates_[i]) {
        cnt += (idx_.edge_mask[he] & ~core_mask_ & used) == 0;
      }
      if (cnt == 0) return false;
      if (pick == total || cnt < pick_count) {
        pick = i;
        pick_count = cnt;
        if (cnt == 1) break;
      }
    }
    for (std::uint32_t he : candidates_[pick]) {
      const Mask extra = idx_.edge_mask[he] & ~core_mask_;
      if (extra & used) continue;
      chosen_[pick] = he;
      if (assign(done + 1, used | extra)) return true;
      chosen_[pick] = kNone;
    }
    return false;
  }

  bool emit(Mask used) {
    if (idx_.n - static_cast<std::size_t>(std::popcount(used)) < t_ * pat_.isolated_count) return false;
    result_.assign(t_, {});
    for (std::size_t c = 0; c < t_; ++c) {
      auto& emb = result_[c];
      emb.core_map = phi_[c];
      emb.edge_assignment.resize(e_);
      for (std::size_t i = 0; i < e_; ++i) {
        auto& img = emb.edge_assignment[i];
        img.host_edge = chosen_[c * e_ + i];
        for (Vertex v : host_.edge(img.host_edge)) {
          if (!(core_mask_ & bit(v))) img.expansion_vertices.push_back(v);
        }
      }
    }
    // Isolated pattern vertices take the smallest unused host vertices.
    Vertex next = 0;
    for (auto& emb : result_) {
      for (std::size_t u = 0; u < emb.core_map.size(); ++u) {
        if (pat_.degree[u] != 0) continue;
        while (used & bit(next)) ++next;
        emb.core_map[u] = next;
        used |= bit(next);
      }
    }
    return true;
  }

  static constexpr std::uint32_t kNone = ~std::uint32_t{0};

  const Hypergraph& host_;
  const HostIndex& idx_;
  const PatternIndex& pat_;
  std::size_t t_;
  std::size_t e_;
  std::size_t per_copy_ = 0;
  std::vector<std::vector<Vertex>> phi_;
  std::vector<long> floor_;
  Mask core_mask_ = 0;
  Mask forced_ = 0;
  Mask all_ = 0;
  std::vector<std::vector<std::uint32_t>> candidates_;
  std::vector<std::uint32_t> chosen_;
  std::vector<Embedding> result_;
};

void check_uniformity(const Hypergraph& h, std::size_t r) {
  if (h.uniformity() != r) {
    throw InputError("pattern uniformity " + std::to_string(r) + " does not match host uniformity " +
                     std::to_string(h.uniformity()));
  }
  if (r < 3) throw InputError("expansions require r >= 3");
}

}  // namespace

std::vector<Vertex> Embedding::host_vertices() const {
  std::vector<Vertex> out(core_map.begin(), core_map.end());
  for (const auto& img : edge_assignment) {
    out.insert(out.end(), img.expansion_vertices.begin(), img.expansion_vertices.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<Embedding> contains_expansion(const Hypergraph& h, const SimpleGraph& f, std::size_t r) {
  auto copies = contains_t_disjoint(h, f, r, 1);
  if (!copies) return std::nullopt;
  return std::move(copies->front());
}

std::optional<std::vector<Vertex>> contains_family_member(const Hypergraph& h, std::size_t k) {
  require_search_order(h);
  if (k < h.uniformity()) throw InputError("family core size must be at least r");
  if (k > h.order()) return std::nullopt;
  const std::size_t n = h.order();
  std::vector<Mask> adj(n, 0);
  const SimpleGraph sh = shadow(h);
  for (auto [u, v] : sh.edges()) {
    adj[u] |= bit(v);
    adj[v] |= bit(u);
  }
  std::vector<Vertex> clique;
  std::function<bool(Mask, std::size_t)> grow = [&](Mask cand, std::size_t need) {
    if (need == 0) return true;
    while (static_cast<std::size_t>(std::popcount(cand)) >= need) {
      const Vertex v = static_cast<Vertex>(std::countr_zero(cand));
      cand &= ~bit(v);
      clique.push_back(v);
      if (grow(cand & adj[v], need - 1)) return true;
      clique.pop_back();
    }
    return false;
  };
  const Mask all = n == 64 ? ~Mask{0} : (bit(static_cast<Vertex>(n)) - 1);
  if (grow(all, k)) return clique;
  return std::nullopt;
}

std::optional<std::vector<Embedding>> contains_t_disjoint(const Hypergraph& h, const SimpleGraph& f,
                                                          std::size_t r, std::size_t t) {
  check_uniformity(h, r);
  require_search_order(h);
  if (t < 1) throw InputError("t must be at least 1");
  if (t * footprint(f, r) > h.order()) return std::nullopt;
  const HostIndex idx(h);
  const PatternIndex pat(f);
  return CopySearch(h, idx, pat, f.order(), t).run();
}

bool is_free(const Hypergraph& h, const PatternSpec& spec) {
  spec.validate(h.uniformity());
  switch (spec.kind) {
    case PatternKind::none:
      return true;
    case PatternKind::expansion:
      return !contains_expansion(h, spec.graph, h.uniformity()).has_value();
    case PatternKind::family:
      return !contains_family_member(h, spec.k).has_value();
    case PatternKind::disjoint:
      return !contains_t_disjoint(h, spec.graph, h.uniformity(), spec.t).has_value();
  }
  return true;
}

// ---------------------------------------------------------------------------
// Certificate checkers

bool validate_embedding(const Hypergraph& h, const SimpleGraph& f, const Embedding& emb) {
  const std::size_t r = h.uniformity();
  if (emb.core_map.size() != f.order() || emb.edge_assignment.size() != f.edge_count()) return false;
  std::vector<int> owner(h.order(), 0);  // 0 free, 1 core, 2 expansion
  for (Vertex v : emb.core_map) {
    if (v >= h.order() || owner[v] != 0) return false;
    owner[v] = 1;
  }
  for (std::size_t i = 0; i < f.edge_count(); ++i) {
    const auto [a, b] = f.edges()[i];
    const auto& img = emb.edge_assignment[i];
    if (img.host_edge >= h.edge_count() || img.expansion_vertices.size() + 2 != r) return false;
    const auto he = h.edge(img.host_edge);
    std::vector<Vertex> expected{emb.core_map[a], emb.core_map[b]};
    expected.insert(expected.end(), img.expansion_vertices.begin(), img.expansion_vertices.end());
    std::sort(expected.begin(), expected.end());
    if (!std::equal(expected.begin(), expected.end(), he.begin(), he.end())) return false;
    for (Vertex x : img.expansion_vertices) {
      if (owner[x] != 0) return false;
      owner[x] = 2;
    }
  }
  return true;
}

bool validate_family_core(const Hypergraph& h, std::span<const Vertex> core, std::size_t k) {
  if (core.size() != k) return false;
  for (std::size_t i = 0; i < core.size(); ++i) {
    if (core[i] >= h.order()) return false;
    for (std::size_t j = 0; j < i; ++j) {
      if (core[i] == core[j]) return false;
    }
  }
  for (std::size_t i = 0; i < core.size(); ++i) {
    for (std::size_t j = i + 1; j < core.size(); ++j) {
      bool covered = false;
      for (std::size_t e = 0; e < h.edge_count() && !covered; ++e) {
        auto verts = h.edge(e);
        covered = std::find(verts.begin(), verts.end(), core[i]) != verts.end() &&
                  std::find(verts.begin(), verts.end(), core[j]) != verts.end();
      }
      if (!covered) return false;
    }
  }
  return true;
}

bool validate_disjoint(const Hypergraph& h, const SimpleGraph& f, std::span<const Embedding> copies,
                       std::size_t t) {
  if (copies.size() != t) return false;
  std::vector<bool> seen(h.order(), false);
  for (const auto& emb : copies) {
    if (!validate_embedding(h, f, emb)) return false;
    for (Vertex v : emb.host_vertices()) {
      if (seen[v]) return false;
      seen[v] = true;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Pattern specs

PatternSpec PatternSpec::parse(std::string_view text) {
  auto strip = [](std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    return s;
  };
  auto number = [&](std::string_view s) -> std::size_t {
    s = strip(s);
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
      throw InputError("bad number '" + std::string(s) + "' in pattern '" + std::string(text) + "'");
    }
    return v;
  };
  auto clique = [&](std::string_view s) {
    s = strip(s);
    if (s.size() < 2 || (s[0] != 'K' && s[0] != 'k')) {
      throw InputError("expected K<k> in pattern '" + std::string(text) + "'");
    }
    return SimpleGraph::complete(number(s.substr(1)));
  };
  text = strip(text);
  PatternSpec spec;
  if (text == "none") return spec;
  const std::size_t colon = text.find(':');
  if (colon == std::string_view::npos) throw InputError("unknown pattern '" + std::string(text) + "'");
  const std::string_view kind = text.substr(0, colon);
  const std::string_view rest = text.substr(colon + 1);
  if (kind == "expansion") {
    spec.kind = PatternKind::expansion;
    spec.graph = clique(rest);
    spec.k = spec.graph.order();
  } else if (kind == "family") {
    spec.kind = PatternKind::family;
    spec.k = number(rest);
  } else if (kind == "disjoint") {
    spec.kind = PatternKind::disjoint;
    const std::size_t x = rest.find_first_of("xX");
    if (x == std::string_view::npos) throw InputError("expected 'disjoint:<t> x K<k>'");
    spec.t = number(rest.substr(0, x));
    if (spec.t == 0) throw InputError("disjoint pattern needs t >= 1");
    spec.graph = clique(rest.substr(x + 1));
    spec.k = spec.graph.order();
  } else {
    throw InputError("unknown pattern kind '" + std::string(kind) + "'");
  }
  return spec;
}

std::string PatternSpec::to_string() const {
  auto graph_name = [&] {
    if (graph == SimpleGraph::complete(graph.order())) return "K" + std::to_string(graph.order());
    return "graph(n=" + std::to_string(graph.order()) + ",m=" + std::to_string(graph.edge_count()) + ")";
  };
  switch (kind) {
    case PatternKind::none:
      return "none";
    case PatternKind::expansion:
      return "expansion:" + graph_name();
    case PatternKind::family:
      return "family:" + std::to_string(k);
    case PatternKind::disjoint:
      return "disjoint:" + std::to_string(t) + " x " + graph_name();
  }
  return "none";
}

void PatternSpec::validate(std::size_t r) const {
  switch (kind) {
    case PatternKind::none:
      return;
    case PatternKind::family:
      if (k < r) throw InputError("family:k requires k >= r");
      return;
    case PatternKind::disjoint:
      if (t < 1) throw InputError("disjoint pattern needs t >= 1");
      [[fallthrough]];
    case PatternKind::expansion:
      if (r < 3) throw InputError("expansion patterns require r >= 3");
      if (graph.edge_count() == 0) throw InputError("expansion pattern graph needs an edge");
      return;
  }
}

// ---------------------------------------------------------------------------
// Reference searches

namespace reference {

namespace {

// Tries every host edge for each pattern edge in label order.
bool place_edges(const Hypergraph& h, const SimpleGraph& f, const std::vector<Vertex>& phi,
                 std::vector<char>& used, std::size_t i,
                 const std::function<bool(std::vector<char>&)>& done) {
  if (i == f.edge_count()) return done(used);
  const auto [a, b] = f.edges()[i];
  for (std::size_t e = 0; e < h.edge_count(); ++e) {
    auto verts = h.edge(e);
    bool has_a = false, has_b = false, clash = false;
    for (Vertex v : verts) {
      if (v == phi[a]) {
        has_a = true;
      } else if (v == phi[b]) {
        has_b = true;
      } else if (used[v]) {
        clash = true;
      }
    }
    if (!has_a || !has_b || clash) continue;
    for (Vertex v : verts) {
      if (v != phi[a] && v != phi[b]) used[v] = 1;
    }
    if (place_edges(h, f, phi, used, i + 1, done)) return true;
    for (Vertex v : verts) {
      if (v != phi[a] && v != phi[b]) used[v] = 0;
    }
  }
  return false;
}

// Every injective map of V(F) avoiding `used`, then every edge choice.
bool each_copy(const Hypergraph& h, const SimpleGraph& f, std::vector<char>& used,
               const std::function<bool(std::vector<char>&)>& done) {
  std::vector<Vertex> phi(f.order());
  std::function<bool(std::size_t)> map = [&](std::size_t u) {
    if (u == f.order()) return place_edges(h, f, phi, used, 0, done);
    for (Vertex v = 0; v < h.order(); ++v) {
      if (used[v]) continue;
      used[v] = 1;
      phi[u] = v;
      if (map(u + 1)) return true;
      used[v] = 0;
    }
    return false;
  };
  return map(0);
}

}  // namespace

bool contains_expansion(const Hypergraph& h, const SimpleGraph& f) {
  std::vector<char> used(h.order(), 0);
  return each_copy(h, f, used, [](std::vector<char>&) { return true; });
}

bool contains_family_member(const Hypergraph& h, std::size_t k) {
  bool found = false;
  for_each_subset(h.order(), k, [&](std::span<const Vertex> core) {
    if (!found) found = validate_family_core(h, core, k);
  });
  return found;
}

bool contains_t_disjoint(const Hypergraph& h, const SimpleGraph& f, std::size_t t) {
  if (t * footprint(f, h.uniformity()) > h.order()) return false;
  std::vector<char> used(h.order(), 0);
  std::function<bool(std::size_t)> copy = [&](std::size_t j) {
    if (j == t) return true;
    return each_copy(h, f, used, [&](std::vector<char>&) { return copy(j + 1); });
  };
  return copy(0);
}

bool is_free(const Hypergraph& h, const PatternSpec& spec) {
  spec.validate(h.uniformity());
  switch (spec.kind) {
    case PatternKind::none:
      return true;
    case PatternKind::expansion:
      return !reference::contains_expansion(h, spec.graph);
    case PatternKind::family:
      return !reference::contains_family_member(h, spec.k);
    case PatternKind::disjoint:
      return !reference::contains_t_disjoint(h, spec.graph, spec.t);
  }
  return true;
}

}  // namespace reference

}  // namespace hyperspec
