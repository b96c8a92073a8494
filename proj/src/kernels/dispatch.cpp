#include <atomic>
#include <cstdlib>
#include <string_view>

#include "kernels_internal.hpp"

namespace lupus::kernels {
namespace {

constexpr KernelTable kScalar{
    "scalar",
    scalar::sum_squares,
    scalar::sum_abs,
    scalar::prod_abs,
    scalar::max_abs,
    scalar::weighted_quartic,
    scalar::rosenbrock,
    scalar::dot,
    scalar::leader_candidate,
    scalar::combine3,
    scalar::axpy,
    scalar::clamp,
};

#if defined(LUPUS_HAVE_AVX2)
constexpr KernelTable kAvx2{
    "avx2",
    avx2::sum_squares,
    avx2::sum_abs,
    avx2::prod_abs,
    avx2::max_abs,
    avx2::weighted_quartic,
    avx2::rosenbrock,
    avx2::dot,
    avx2::leader_candidate,
    avx2::combine3,
    avx2::axpy,
    avx2::clamp,
};
#endif

bool cpu_has_avx2() noexcept {
#if defined(LUPUS_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const KernelTable* initial_table() noexcept {
  const char* env = std::getenv("LUPUS_KERNELS");
  if (env != nullptr && std::string_view(env) == "scalar") return &kScalar;
  if (const KernelTable* t = avx2_table()) return t;
  return &kScalar;
}

std::atomic<const KernelTable*>& current() noexcept {
  static std::atomic<const KernelTable*> table{initial_table()};
  return table;
}

}  // namespace

const KernelTable& scalar_table() noexcept { return kScalar; }

const KernelTable* avx2_table() noexcept {
#if defined(LUPUS_HAVE_AVX2)
  static const bool ok = cpu_has_avx2();
  return ok ? &kAvx2 : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() noexcept { return *current().load(std::memory_order_relaxed); }

bool select(std::string_view name) noexcept {
  if (name == "scalar") {
    current().store(&kScalar);
    return true;
  }
  if (name == "avx2") {
    if (const KernelTable* t = avx2_table()) {
      current().store(t);
      return true;
    }
  }
  return false;
}

}  // namespace lupus::kernels
