#pragma once

// Data-parallel inner loops shared by the benchmark objectives, the wolf
// position update and the dense layers of the network.
//
// Every kernel has a scalar reference implementation and, where the CPU
// supports it, an AVX2 variant. The variant is chosen once at startup
// (see active()); LUPUS_KERNELS=scalar|avx2 in the environment overrides the
// probe. Elementwise kernels are bitwise identical across variants; the
// reductions differ only by summation order.

#include <cstddef>
#include <span>
#include <string_view>

namespace lupus::kernels {

struct KernelTable {
  const char* name;

  // Reductions.
  double (*sum_squares)(const double* x, std::size_t n);
  double (*sum_abs)(const double* x, std::size_t n);
  double (*prod_abs)(const double* x, std::size_t n);
  double (*max_abs)(const double* x, std::size_t n);
  /// sum_j (j+1) * x[j]^4
  double (*weighted_quartic)(const double* x, std::size_t n);
  /// sum_j 100 (x[j+1] - x[j]^2)^2 + (x[j] - 1)^2, n >= 2
  double (*rosenbrock)(const double* x, std::size_t n);
  double (*dot)(const double* a, const double* b, std::size_t n);

  // Elementwise.
  /// out[j] = ww*leader[j] - (2*wa*r1[j] - wa) * D[j],
  /// D[j] = |2*r2[j]*leader[j] - wolf[j]| (or signed when abs_disp is false).
  void (*leader_candidate)(const double* leader, const double* wolf, const double* r1,
                           const double* r2, double wa, double ww, bool abs_disp, double* out,
                           std::size_t n);
  /// out[j] = (wa*a[j] + wb*b[j] + wd*d[j]) / denom
  void (*combine3)(const double* a, const double* b, const double* d, double wa, double wb,
                   double wd, double denom, double* out, std::size_t n);
  /// y[j] += alpha * x[j]
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  /// x[j] = min(max(x[j], lo[j]), hi[j])
  void (*clamp)(double* x, const double* lo, const double* hi, std::size_t n);
};

const KernelTable& scalar_table() noexcept;

/// nullptr when AVX2 was not compiled in or the CPU lacks it.
const KernelTable* avx2_table() noexcept;

/// The dispatch target used by the span wrappers below.
const KernelTable& active() noexcept;

/// Select a table by name ("scalar" or "avx2"). Returns false and leaves the
/// selection unchanged when the name is unknown or unsupported. Not
/// thread-safe against concurrent kernel calls.
bool select(std::string_view name) noexcept;

// Span conveniences over active().

inline double sum_squares(std::span<const double> x) {
  return active().sum_squares(x.data(), x.size());
}
inline double sum_abs(std::span<const double> x) { return active().sum_abs(x.data(), x.size()); }
inline double prod_abs(std::span<const double> x) {
  return active().prod_abs(x.data(), x.size());
}
inline double max_abs(std::span<const double> x) { return active().max_abs(x.data(), x.size()); }
inline double weighted_quartic(std::span<const double> x) {
  return active().weighted_quartic(x.data(), x.size());
}
inline double rosenbrock(std::span<const double> x) {
  return active().rosenbrock(x.data(), x.size());
}
inline double dot(std::span<const double> a, std::span<const double> b) {
  return active().dot(a.data(), b.data(), a.size());
}
inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  active().axpy(alpha, x.data(), y.data(), y.size());
}

}  // namespace lupus::kernels
