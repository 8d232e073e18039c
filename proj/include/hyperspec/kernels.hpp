#pragma once

// Per-edge product kernels behind the spectral solver.
//
// Every variant computes each lane with the same sequence of IEEE multiplies
// as the scalar reference (no FMA, no reassociation), so all variants are
// bit-identical. Sums over edges are done by the shared scalar helpers below
// in canonical edge order.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "hyperspec/hypergraph.hpp"

namespace hyperspec::kernels {

/// Slot-major copy of a hypergraph's edges: vertex in slot j of edge e sits at
/// slots[j * m + e].
struct EdgeTable {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t r = 0;
  std::vector<std::int32_t> slots;

  EdgeTable() = default;
  explicit EdgeTable(const Hypergraph& h);
};

enum class Isa { scalar, avx2 };

struct KernelSet {
  Isa isa;
  std::string_view name;
  /// out[e] = x[v_0] * x[v_1] * ... * x[v_{r-1}], left to right. |out| = m.
  void (*edge_products)(const EdgeTable&, std::span<const double> x, std::span<double> out);
  /// out[j * m + e] = (x[v_0]..x[v_{j-1}] product) * (x[v_{j+1}]..x[v_{r-1}]
  /// product, accumulated right to left). |out| = r * m.
  void (*leave_one_out)(const EdgeTable&, std::span<const double> x, std::span<double> out);
};

const KernelSet& scalar_kernels();
/// Null when the build has no AVX2 variant.
const KernelSet* avx2_kernels();

bool cpu_supports(Isa isa);

/// Best supported variant. HYPERSPEC_KERNEL=scalar forces the reference path.
const KernelSet& active_kernels();

/// Sum of products in edge order.
double sum_in_edge_order(std::span<const double> products);

/// acc[v] = sum over edges e containing v of loo[slot(v) * m + e], visiting
/// edges in canonical order and slots left to right. Overwrites acc.
void scatter_links(const EdgeTable& table, std::span<const double> loo, std::span<double> acc);

namespace detail {
void edge_products_scalar(const EdgeTable&, std::span<const double>, std::span<double>);
void leave_one_out_scalar(const EdgeTable&, std::span<const double>, std::span<double>);
void edge_products_scalar_range(const EdgeTable&, std::span<const double>, std::span<double>,
                                std::size_t begin, std::size_t end);
void leave_one_out_scalar_range(const EdgeTable&, std::span<const double>, std::span<double>,
                                std::size_t begin, std::size_t end);
#if defined(HYPERSPEC_HAVE_AVX2)
void edge_products_avx2(const EdgeTable&, std::span<const double>, std::span<double>);
void leave_one_out_avx2(const EdgeTable&, std::span<const double>, std::span<double>);
#endif
}  // namespace detail

}  // namespace hyperspec::kernels
