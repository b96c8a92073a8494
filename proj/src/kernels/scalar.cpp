#include <algorithm>
#include <cmath>

#include "kernels_internal.hpp"

namespace lupus::kernels::scalar {

double sum_squares(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t j = 0; j < n; ++j) s += x[j] * x[j];
  return s;
}

double sum_abs(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t j = 0; j < n; ++j) s += std::fabs(x[j]);
  return s;
}

double prod_abs(const double* x, std::size_t n) {
  double p = 1.0;
  for (std::size_t j = 0; j < n; ++j) p *= std::fabs(x[j]);
  return p;
}

double max_abs(const double* x, std::size_t n) {
  double m = 0.0;
  for (std::size_t j = 0; j < n; ++j) m = std::max(m, std::fabs(x[j]));
  return m;
}

double weighted_quartic(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double sq = x[j] * x[j];
    s += static_cast<double>(j + 1) * (sq * sq);
  }
  return s;
}

double rosenbrock(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const double t = x[j + 1] - x[j] * x[j];
    const double u = x[j] - 1.0;
    s += 100.0 * (t * t) + u * u;
  }
  return s;
}

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t j = 0; j < n; ++j) s += a[j] * b[j];
  return s;
}

void leader_candidate(const double* leader, const double* wolf, const double* r1,
                      const double* r2, double wa, double ww, bool abs_disp, double* out,
                      std::size_t n) {
  const double two_wa = 2.0 * wa;
  for (std::size_t j = 0; j < n; ++j) {
    const double a = two_wa * r1[j] - wa;
    const double c = 2.0 * r2[j];
    double d = c * leader[j] - wolf[j];
    if (abs_disp) d = std::fabs(d);
    out[j] = ww * leader[j] - a * d;
  }
}

void combine3(const double* a, const double* b, const double* d, double wa, double wb,
              double wd, double denom, double* out, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    out[j] = ((wa * a[j] + wb * b[j]) + wd * d[j]) / denom;
  }
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) y[j] += alpha * x[j];
}

void clamp(double* x, const double* lo, const double* hi, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) x[j] = std::min(std::max(x[j], lo[j]), hi[j]);
}

}  // namespace lupus::kernels::scalar
