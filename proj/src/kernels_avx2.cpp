// Compiled with -mavx2; only reached after a runtime CPU check.

#include <immintrin.h>

#include "hyperspec/kernels.hpp"

namespace hyperspec::kernels::detail {

namespace {

constexpr std::size_t kLanes = 4;
constexpr std::size_t kMaxArity = 32;

inline __m256d gather(const double* x, const std::int32_t* idx) {
  const __m128i vi = _mm_loadu_si128(reinterpret_cast<const __m128i*>(idx));
  return _mm256_i32gather_pd(x, vi, 8);
}

}  // namespace

void edge_products_avx2(const EdgeTable& t, std::span<const double> x, std::span<double> out) {
  const std::size_t m = t.m, r = t.r;
  const std::size_t body = m - m % kLanes;
  const std::int32_t* s = t.slots.data();
  for (std::size_t e = 0; e < body; e += kLanes) {
    __m256d p = gather(x.data(), s + e);
    for (std::size_t j = 1; j < r; ++j) p = _mm256_mul_pd(p, gather(x.data(), s + j * m + e));
    _mm256_storeu_pd(out.data() + e, p);
  }
  edge_products_scalar_range(t, x, out, body, m);
}

void leave_one_out_avx2(const EdgeTable& t, std::span<const double> x, std::span<double> out) {
  const std::size_t m = t.m, r = t.r;
  if (r > kMaxArity) {
    leave_one_out_scalar(t, x, out);
    return;
  }
  const std::size_t body = m - m % kLanes;
  const std::int32_t* s = t.slots.data();
  __m256d vals[kMaxArity];
  for (std::size_t e = 0; e < body; e += kLanes) {
    __m256d left = _mm256_set1_pd(1.0);
    for (std::size_t j = 0; j < r; ++j) {
      vals[j] = gather(x.data(), s + j * m + e);
      _mm256_storeu_pd(out.data() + j * m + e, left);
      left = _mm256_mul_pd(left, vals[j]);
    }
    __m256d right = _mm256_set1_pd(1.0);
    for (std::size_t j = r; j-- > 0;) {
      double* o = out.data() + j * m + e;
      _mm256_storeu_pd(o, _mm256_mul_pd(_mm256_loadu_pd(o), right));
      right = _mm256_mul_pd(right, vals[j]);
    }
  }
  leave_one_out_scalar_range(t, x, out, body, m);
}

}  // namespace hyperspec::kernels::detail
