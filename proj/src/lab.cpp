#include "hyperspec/lab.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

#include "hyperspec/error.hpp"

namespace hyperspec {

namespace {

constexpr double kTieTolerance = 1e-7;

std::vector<std::vector<Vertex>> all_r_sets(std::size_t n, std::size_t r) {
  std::vector<std::vector<Vertex>> out;
  for_each_subset(n, r, [&](std::span<const Vertex> s) { out.emplace_back(s.begin(), s.end()); });
  return out;
}

Hypergraph from_indices(std::size_t n, std::size_t r, const std::vector<std::vector<Vertex>>& sets,
                        const std::vector<std::size_t>& chosen) {
  std::vector<Vertex> flat;
  flat.reserve(chosen.size() * r);
  for (std::size_t i : chosen) flat.insert(flat.end(), sets[i].begin(), sets[i].end());
  return {n, r, std::move(flat)};
}

bool has_clique(std::uint64_t cand, std::size_t need, const std::vector<std::uint64_t>& adj) {
  if (need == 0) return true;
  while (static_cast<std::size_t>(std::popcount(cand)) >= need) {
    const int v = std::countr_zero(cand);
    cand &= cand - 1;
    if (has_clique(cand & adj[v], need - 1, adj)) return true;
  }
  return false;
}

// Freeness of a growing edge set. Family patterns are tracked through the
// shadow incrementally; other patterns rebuild the graph and ask is_free.
class FreenessTracker {
 public:
  FreenessTracker(std::size_t n, std::size_t r, const PatternSpec& spec,
                  const std::vector<std::vector<Vertex>>& sets)
      : n_(n), r_(r), spec_(spec), sets_(sets), cover_(n * n, 0), adj_(n, 0) {}

  /// Adds set i; returns false (and leaves the state unchanged) when the
  /// result would contain the pattern.
  bool try_add(std::size_t i) {
    chosen_.push_back(i);
    bool ok = true;
    if (spec_.kind == PatternKind::family) {
      std::vector<std::pair<Vertex, Vertex>> fresh;
      cover(i, +1, &fresh);
      for (auto [u, v] : fresh) {
        if (spec_.k >= 2 && has_clique(adj_[u] & adj_[v], spec_.k - 2, adj_)) {
          ok = false;
          break;
        }
      }
      if (!ok) cover(i, -1, nullptr);
    } else if (spec_.kind != PatternKind::none) {
      ok = is_free(from_indices(n_, r_, sets_, chosen_), spec_);
    }
    if (!ok) chosen_.pop_back();
    return ok;
  }

  void remove_last() {
    const std::size_t i = chosen_.back();
    chosen_.pop_back();
    if (spec_.kind == PatternKind::family) cover(i, -1, nullptr);
  }

  /// Whether set i could be added without creating the pattern.
  bool addable(std::size_t i) {
    if (!try_add(i)) return false;
    remove_last();
    return true;
  }

  const std::vector<std::size_t>& chosen() const { return chosen_; }

 private:
  void cover(std::size_t i, int delta, std::vector<std::pair<Vertex, Vertex>>* fresh) {
    const auto& s = sets_[i];
    for (std::size_t a = 0; a < s.size(); ++a) {
      for (std::size_t b = a + 1; b < s.size(); ++b) {
        auto& c = cover_[s[a] * n_ + s[b]];
        if (delta > 0) {
          if (c++ == 0) {
            adj_[s[a]] |= std::uint64_t{1} << s[b];
            adj_[s[b]] |= std::uint64_t{1} << s[a];
            if (fresh) fresh->emplace_back(s[a], s[b]);
          }
        } else if (--c == 0) {
          adj_[s[a]] &= ~(std::uint64_t{1} << s[b]);
          adj_[s[b]] &= ~(std::uint64_t{1} << s[a]);
        }
      }
    }
  }

  std::size_t n_, r_;
  const PatternSpec& spec_;
  const std::vector<std::vector<Vertex>>& sets_;
  std::vector<int> cover_;
  std::vector<std::uint64_t> adj_;
  std::vector<std::size_t> chosen_;
};

void check_space(std::size_t n, std::size_t r, std::uint64_t cap) {
  if (r < 2 || n < r) throw InputError("exhaustive search needs n >= r >= 2");
  if (n > kMaxSearchOrder) throw CapExceeded("exhaustive search order too large");
  const std::uint64_t space = binomial(n, r);
  if (space > cap) {
    throw CapExceeded("C(n, r) = " + std::to_string(space) + " exceeds the search cap of " + std::to_string(cap));
  }
}

void revalidate(const Hypergraph& h, const PatternSpec& spec) {
  if (!reference::is_free(h, spec)) throw std::logic_error("witness failed independent freeness check");
}

SpectralEstimate solve(const Hypergraph& h, double p, const SolverConfig& base, std::span<const double> warm = {}) {
  SolverConfig cfg = base;
  cfg.p = p;
  if (p == 1.0) return lagrangian(h, cfg);
  return p_spectral_radius(h, cfg, warm);
}

std::string edge_list(const Hypergraph& h) {
  std::string out;
  for (std::size_t e = 0; e < h.edge_count(); ++e) {
    if (e) out += ' ';
    auto verts = h.edge(e);
    for (std::size_t j = 0; j < verts.size(); ++j) {
      if (j) out += '-';
      out += std::to_string(verts[j]);
    }
  }
  return out;
}

std::string set_list(const std::vector<std::vector<Vertex>>& sets) {
  std::string out;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (i) out += ' ';
    for (std::size_t j = 0; j < sets[i].size(); ++j) {
      if (j) out += '-';
      out += std::to_string(sets[i][j]);
    }
  }
  return out.empty() ? "-" : out;
}

}  // namespace

Hypergraph canonical_form(const Hypergraph& h) {
  if (h.order() > kMaxCanonicalOrder) throw CapExceeded("canonical_form supports at most 8 vertices");
  std::vector<Vertex> perm(h.order());
  std::iota(perm.begin(), perm.end(), Vertex{0});
  Hypergraph best = h;
  do {
    Hypergraph g = relabel(h, perm);
    if (std::lexicographical_compare(g.flat().begin(), g.flat().end(), best.flat().begin(), best.flat().end())) {
      best = std::move(g);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

SearchResult exhaustive_max_edges(std::size_t n, std::size_t r, const PatternSpec& spec) {
  spec.validate(r);
  check_space(n, r, kMaxEdgeSearchSpace);
  const auto sets = all_r_sets(n, r);
  const std::size_t total = sets.size();
  FreenessTracker tracker(n, r, spec, sets);
  SearchResult res;
  res.objective = Objective::max_edges;
  res.exact = true;
  std::size_t best = 0;
  bool have = false;
  const bool canonical = n <= kMaxCanonicalOrder;

  std::function<void(std::size_t)> dfs = [&](std::size_t i) {
    ++res.explored;
    const std::size_t count = tracker.chosen().size();
    if (have) {
      const std::size_t reach = count + (total - i);
      if (reach < best || (reach == best && !canonical && res.witnesses.size() >= kMaxWitnesses)) return;
    }
    if (i == total) {
      if (!have || count > best) {
        best = count;
        have = true;
        res.witnesses.clear();
      }
      if (res.witnesses.size() < kMaxWitnesses) {
        Hypergraph g = from_indices(n, r, sets, tracker.chosen());
        if (canonical) g = canonical_form(g);
        if (std::find(res.witnesses.begin(), res.witnesses.end(), g) == res.witnesses.end()) {
          res.witnesses.push_back(std::move(g));
        }
      }
      return;
    }
    if (tracker.try_add(i)) {
      dfs(i + 1);
      tracker.remove_last();
    }
    dfs(i + 1);
  };
  dfs(0);
  res.best_value = static_cast<double>(best);
  for (const auto& w : res.witnesses) revalidate(w, spec);
  return res;
}

LambdaSearch exhaustive_max_lambda(std::size_t n, std::size_t r, double p, const PatternSpec& spec,
                                   const SolverConfig& solver) {
  spec.validate(r);
  check_space(n, r, kMaxLambdaSearchSpace);
  if (!(p >= 1.0)) throw InputError("p must be at least 1");
  const auto sets = all_r_sets(n, r);
  const std::size_t total = sets.size();
  FreenessTracker tracker(n, r, spec, sets);
  LambdaSearch out;
  out.result.objective = Objective::max_lambda;
  out.result.exact = false;

  // Maximal free edge sets; lambda never drops when an edge is added.
  std::vector<std::vector<std::size_t>> maximal;
  std::vector<std::size_t> excluded;
  std::function<void(std::size_t)> dfs = [&](std::size_t i) {
    ++out.result.explored;
    if (i == total) {
      for (std::size_t j : excluded) {
        if (tracker.addable(j)) return;
      }
      maximal.push_back(tracker.chosen());
      return;
    }
    if (tracker.try_add(i)) {
      dfs(i + 1);
      tracker.remove_last();
    }
    excluded.push_back(i);
    dfs(i + 1);
    excluded.pop_back();
  };
  dfs(0);

  // One representative per isomorphism class (labeled classes above n = 8).
  std::vector<Hypergraph> reps;
  {
    std::map<std::vector<Vertex>, std::size_t> seen;
    for (const auto& m : maximal) {
      Hypergraph g = from_indices(n, r, sets, m);
      if (n <= kMaxCanonicalOrder) {
        g = canonical_form(g);
        std::vector<Vertex> key(g.flat().begin(), g.flat().end());
        if (!seen.emplace(std::move(key), reps.size()).second) continue;
      }
      reps.push_back(std::move(g));
    }
  }
  out.maximal_classes = reps.size();

  std::vector<double> values;
  for (const auto& g : reps) values.push_back(solve(g, p, solver).lambda);
  std::vector<std::size_t> order(reps.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  const double best = values.empty() ? 0.0 : values[order.front()];
  out.result.best_value = best;
  for (std::size_t idx : order) {
    if (values[idx] < best - kTieTolerance || out.result.witnesses.size() >= kMaxWitnesses) break;
    revalidate(reps[idx], spec);
    out.result.witnesses.push_back(reps[idx]);
  }
  if (n <= 6 && std::isfinite(p)) {
    for (std::size_t j = 0; j < std::min<std::size_t>(3, order.size()); ++j) {
      out.solver_values.push_back(values[order[j]]);
      out.oracle_values.push_back(brute_force_spectral(reps[order[j]], p, 24));
    }
  }

  out.turan_lambda = std::numeric_limits<double>::quiet_NaN();
  std::size_t k = 0;
  if (spec.kind == PatternKind::family) k = spec.k;
  if (spec.kind == PatternKind::expansion && spec.graph == SimpleGraph::complete(spec.graph.order())) {
    k = spec.graph.order();
  }
  if (k >= 1 && k - 1 >= r && n >= k - 1) {
    const Hypergraph t = turan(n, k - 1, r);
    out.turan_lambda = solve(t, p, solver).lambda;
    out.turan_among_maximizers = out.turan_lambda >= best - kTieTolerance;
  }
  return out;
}

Report search_report(const SearchResult& result) {
  Report rep;
  rep.add("objective", result.objective == Objective::max_edges ? "max-edges" : "max-lambda");
  rep.add("best_value", result.best_value);
  rep.add("exact", result.exact);
  rep.add("explored", result.explored);
  rep.add("witnesses", result.witnesses.size());
  for (std::size_t i = 0; i < result.witnesses.size(); ++i) {
    rep.add("witness." + std::to_string(i), edge_list(result.witnesses[i]));
  }
  return rep;
}

Report lambda_search_report(const LambdaSearch& search) {
  Report rep = search_report(search.result);
  rep.add("semantics", "certified lower bounds");
  rep.add("maximal_classes", search.maximal_classes);
  rep.add("solver_top", std::span<const double>(search.solver_values));
  rep.add("oracle_top", std::span<const double>(search.oracle_values));
  if (!std::isnan(search.turan_lambda)) {
    rep.add("turan_lambda", search.turan_lambda);
    rep.add("turan_among_maximizers", search.turan_among_maximizers);
  }
  return rep;
}

CompositionSweep composition_sweep(std::size_t n, std::size_t k, std::size_t r, std::size_t t, double p,
                                   const SolverConfig& solver) {
  if (!(p > 9.0 / 8.0)) throw InputError("composition_sweep requires p > 9/8");
  if (t < 1) throw InputError("t must be at least 1");
  if (k < r) throw InputError("composition_sweep requires k >= r");
  if (n + 1 < t + k) throw InputError("n - t + 1 must be at least k");
  const std::size_t total = n - t + 1;
  if (binomial(total - 1, k - 1) > kMaxCompositions) throw CapExceeded("too many compositions");

  const Hypergraph apex = t - 1 >= r ? complete(t - 1, r) : Hypergraph::edgeless(t - 1, r);
  CompositionSweep sweep;
  std::vector<std::size_t> parts(k);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t left) {
    if (i + 1 == k) {
      parts[i] = left;
      const Hypergraph body = complete_multipartite(PartSizes{parts}, r);
      const Hypergraph g = t == 1 ? body : join(apex, body);
      const auto est = solve(g, p, solver);
      sweep.rows.push_back({parts, est.lambda, est.residual, est.converged});
      return;
    }
    for (std::size_t v = 1; v + (k - i - 1) <= left; ++v) {
      parts[i] = v;
      rec(i + 1, left - v);
    }
  };
  rec(0, total);

  sweep.balanced = turan_part_sizes(total, k).sizes;
  const std::size_t lo = total / k, hi = (total + k - 1) / k;
  double best_unbalanced = -std::numeric_limits<double>::infinity();
  std::map<std::vector<std::size_t>, std::pair<double, double>> by_multiset;
  for (std::size_t i = 0; i < sweep.rows.size(); ++i) {
    const auto& row = sweep.rows[i];
    if (row.lambda > sweep.rows[sweep.argmax].lambda) sweep.argmax = i;
    if (row.parts == sweep.balanced) sweep.balanced_lambda = row.lambda;
    const bool balanced = std::all_of(row.parts.begin(), row.parts.end(),
                                      [&](std::size_t v) { return v == lo || v == hi; });
    if (!balanced) best_unbalanced = std::max(best_unbalanced, row.lambda);
    auto key = row.parts;
    std::sort(key.begin(), key.end());
    auto [it, fresh] = by_multiset.emplace(key, std::make_pair(row.lambda, row.lambda));
    if (!fresh) {
      it->second.first = std::min(it->second.first, row.lambda);
      it->second.second = std::max(it->second.second, row.lambda);
    }
  }
  sweep.margin = sweep.balanced_lambda - best_unbalanced;
  for (const auto& [key, range] : by_multiset) {
    sweep.permutation_spread = std::max(sweep.permutation_spread, range.second - range.first);
  }
  return sweep;
}

Report sweep_report(const CompositionSweep& sweep) {
  Report rep;
  rep.add("compositions", sweep.rows.size());
  rep.add("balanced", std::span<const std::size_t>(sweep.balanced));
  rep.add("balanced_lambda", sweep.balanced_lambda);
  rep.add("argmax", std::span<const std::size_t>(sweep.rows.at(sweep.argmax).parts));
  rep.add("max_lambda", sweep.rows.at(sweep.argmax).lambda);
  rep.add("margin", sweep.margin);
  rep.add("balanced_is_max", sweep.margin > kTieTolerance || std::isinf(sweep.margin));
  rep.add("permutation_spread", sweep.permutation_spread);
  for (const auto& row : sweep.rows) {
    std::string key = "row";
    for (std::size_t v : row.parts) key += "." + std::to_string(v);
    rep.add(key, row.lambda);
  }
  return rep;
}

PerturbationProbe perturbation_probe(const Hypergraph& h0, const PatternSpec& spec, double p,
                                     const SolverConfig& solver, std::size_t radius) {
  if (radius < 1 || radius > 2) throw InputError("perturbation radius must be 1 or 2");
  const std::size_t n = h0.order(), r = h0.uniformity();
  spec.validate(r);
  const auto sets = all_r_sets(n, r);
  std::vector<bool> present(sets.size());
  for (std::size_t i = 0; i < sets.size(); ++i) present[i] = h0.has_edge(sets[i]);

  PerturbationProbe probe;
  const auto base = solve(h0, p, solver);
  probe.base_lambda = base.lambda;

  auto visit = [&](std::span<const std::size_t> toggles) {
    ++probe.neighbors;
    std::vector<Vertex> flat;
    for (std::size_t i = 0; i < sets.size(); ++i) {
      const bool flipped = std::find(toggles.begin(), toggles.end(), i) != toggles.end();
      if (present[i] != flipped) flat.insert(flat.end(), sets[i].begin(), sets[i].end());
    }
    const Hypergraph g(n, r, std::move(flat));
    if (!is_free(g, spec)) return;
    ++probe.free_neighbors;
    const auto est = solve(g, p, solver, base.vector.values);
    if (est.lambda > base.lambda + kTieTolerance) {
      Improver imp;
      imp.lambda = est.lambda;
      for (std::size_t i : toggles) (present[i] ? imp.removed : imp.added).push_back(sets[i]);
      probe.improvers.push_back(std::move(imp));
    }
  };
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const std::size_t one[] = {i};
    visit(one);
  }
  if (radius == 2) {
    for (std::size_t i = 0; i < sets.size(); ++i) {
      for (std::size_t j = i + 1; j < sets.size(); ++j) {
        const std::size_t two[] = {i, j};
        visit(two);
      }
    }
  }
  return probe;
}

Report probe_report(const PerturbationProbe& probe) {
  Report rep;
  rep.add("base_lambda", probe.base_lambda);
  rep.add("neighbors", probe.neighbors);
  rep.add("free_neighbors", probe.free_neighbors);
  rep.add("improvers", probe.improvers.size());
  std::vector<std::size_t> idx(probe.improvers.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return probe.improvers[a].lambda > probe.improvers[b].lambda; });
  for (std::size_t j = 0; j < std::min<std::size_t>(idx.size(), kMaxWitnesses); ++j) {
    const auto& imp = probe.improvers[idx[j]];
    const std::string key = "improver." + std::to_string(j);
    rep.add(key + ".lambda", imp.lambda);
    rep.add(key + ".added", set_list(imp.added));
    rep.add(key + ".removed", set_list(imp.removed));
  }
  return rep;
}

}  // namespace hyperspec
