#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hyperspec/hypergraph.hpp"

namespace hyperspec {

/// Host graphs above this order are rejected by the exact searches.
inline constexpr std::size_t kMaxSearchOrder = 40;

/// Witness for a copy of the expansion F^(r) inside a host r-graph.
struct Embedding {
  struct EdgeImage {
    std::size_t host_edge = 0;
    /// The r-2 host vertices of host_edge outside the core, ascending.
    std::vector<Vertex> expansion_vertices;
  };

  /// core_map[u] = host image of pattern vertex u.
  std::vector<Vertex> core_map;
  /// Aligned with the pattern graph's canonical edge order.
  std::vector<EdgeImage> edge_assignment;

  /// Every host vertex used (core images and expansion vertices), ascending.
  std::vector<Vertex> host_vertices() const;
};

enum class PatternKind { none, expansion, family, disjoint };

struct PatternSpec {
  PatternKind kind = PatternKind::none;
  /// Pattern graph F for expansion and disjoint kinds.
  SimpleGraph graph;
  /// Core size for the family kind.
  std::size_t k = 0;
  /// Number of vertex-disjoint copies for the disjoint kind.
  std::size_t t = 1;

  /// Accepts "none", "expansion:K<k>", "family:<k>", "disjoint:<t> x K<k>"
  /// (spaces around 'x' optional).
  static PatternSpec parse(std::string_view text);
  std::string to_string() const;
  /// Throws InputError when the parameters do not fit uniformity r.
  void validate(std::size_t r) const;
};

std::optional<Embedding> contains_expansion(const Hypergraph& h, const SimpleGraph& f, std::size_t r);

/// A k-set of host vertices with every pair covered by some edge, if any.
std::optional<std::vector<Vertex>> contains_family_member(const Hypergraph& h, std::size_t k);

/// t embeddings of F^(r) with pairwise disjoint host vertex sets, ordered by
/// ascending minimum core image.
std::optional<std::vector<Embedding>> contains_t_disjoint(const Hypergraph& h, const SimpleGraph& f,
                                                          std::size_t r, std::size_t t);

bool is_free(const Hypergraph& h, const PatternSpec& spec);

// Independent certificate checkers.
bool validate_embedding(const Hypergraph& h, const SimpleGraph& f, const Embedding& emb);
bool validate_family_core(const Hypergraph& h, std::span<const Vertex> core, std::size_t k);
bool validate_disjoint(const Hypergraph& h, const SimpleGraph& f, std::span<const Embedding> copies,
                       std::size_t t);

/// Plain exhaustive searches with no ordering heuristics or symmetry
/// breaking. Exponential; used to cross-check the searches above.
namespace reference {
bool contains_expansion(const Hypergraph& h, const SimpleGraph& f);
bool contains_family_member(const Hypergraph& h, std::size_t k);
bool contains_t_disjoint(const Hypergraph& h, const SimpleGraph& f, std::size_t t);
bool is_free(const Hypergraph& h, const PatternSpec& spec);
}  // namespace reference

}  // namespace hyperspec
