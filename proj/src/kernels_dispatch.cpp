#include <cstdlib>
#include <string_view>

#include "hyperspec/kernels.hpp"

namespace hyperspec::kernels {

namespace {

const KernelSet kScalar{Isa::scalar, "scalar", &detail::edge_products_scalar,
                        &detail::leave_one_out_scalar};
#if defined(HYPERSPEC_HAVE_AVX2)
const KernelSet kAvx2{Isa::avx2, "avx2", &detail::edge_products_avx2, &detail::leave_one_out_avx2};
#endif

}  // namespace

const KernelSet& scalar_kernels() { return kScalar; }

const KernelSet* avx2_kernels() {
#if defined(HYPERSPEC_HAVE_AVX2)
  return &kAvx2;
#else
  return nullptr;
#endif
}

bool cpu_supports(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(HYPERSPEC_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

const KernelSet& active_kernels() {
  static const KernelSet& chosen = [] () -> const KernelSet& {
    const char* env = std::getenv("HYPERSPEC_KERNEL");
    if (env != nullptr && std::string_view(env) == "scalar") return kScalar;
    if (const KernelSet* k = avx2_kernels(); k != nullptr && cpu_supports(Isa::avx2)) return *k;
    return kScalar;
  }();
  return chosen;
}

}  // namespace hyperspec::kernels
