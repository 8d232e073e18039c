#include <algorithm>
#include <cassert>

#include "hyperspec/kernels.hpp"

namespace hyperspec::kernels {

EdgeTable::EdgeTable(const Hypergraph& h)
    : n(h.order()), m(h.edge_count()), r(h.uniformity()), slots(m * r) {
  for (std::size_t e = 0; e < m; ++e) {
    auto edge = h.edge(e);
    for (std::size_t j = 0; j < r; ++j) slots[j * m + e] = static_cast<std::int32_t>(edge[j]);
  }
}

namespace detail {

void edge_products_scalar_range(const EdgeTable& t, std::span<const double> x, std::span<double> out,
                                std::size_t begin, std::size_t end) {
  const std::int32_t* s = t.slots.data();
  for (std::size_t e = begin; e < end; ++e) {
    double p = x[static_cast<std::size_t>(s[e])];
    for (std::size_t j = 1; j < t.r; ++j) p *= x[static_cast<std::size_t>(s[j * t.m + e])];
    out[e] = p;
  }
}

void leave_one_out_scalar_range(const EdgeTable& t, std::span<const double> x, std::span<double> out,
                                std::size_t begin, std::size_t end) {
  const std::size_t r = t.r, m = t.m;
  const std::int32_t* s = t.slots.data();
  for (std::size_t e = begin; e < end; ++e) {
    // Left prefix products go straight to out; suffixes are folded in after.
    double left = 1.0;
    for (std::size_t j = 0; j < r; ++j) {
      out[j * m + e] = left;
      left *= x[static_cast<std::size_t>(s[j * m + e])];
    }
    double right = 1.0;
    for (std::size_t j = r; j-- > 0;) {
      out[j * m + e] *= right;
      right *= x[static_cast<std::size_t>(s[j * m + e])];
    }
  }
}

void edge_products_scalar(const EdgeTable& t, std::span<const double> x, std::span<double> out) {
  assert(out.size() >= t.m && x.size() >= t.n);
  edge_products_scalar_range(t, x, out, 0, t.m);
}

void leave_one_out_scalar(const EdgeTable& t, std::span<const double> x, std::span<double> out) {
  assert(out.size() >= t.m * t.r && x.size() >= t.n);
  leave_one_out_scalar_range(t, x, out, 0, t.m);
}

}  // namespace detail

double sum_in_edge_order(std::span<const double> products) {
  double s = 0.0;
  for (double p : products) s += p;
  return s;
}

void scatter_links(const EdgeTable& t, std::span<const double> loo, std::span<double> acc) {
  std::fill(acc.begin(), acc.end(), 0.0);
  const std::int32_t* s = t.slots.data();
  for (std::size_t e = 0; e < t.m; ++e) {
    for (std::size_t j = 0; j < t.r; ++j) {
      acc[static_cast<std::size_t>(s[j * t.m + e])] += loo[j * t.m + e];
    }
  }
}

}  // namespace hyperspec::kernels
