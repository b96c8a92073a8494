// AVX2 variants. Compiled with -mavx2 (no -mfma) so every elementwise kernel
// performs the same IEEE operations as its scalar twin.

#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "kernels_internal.hpp"

namespace lupus::kernels::avx2 {
namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

inline __m256d vabs(__m256d v) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v); }

}  // namespace

double sum_squares(const double* x, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 8 <= n; j += 8) {
    const __m256d a = _mm256_loadu_pd(x + j);
    const __m256d b = _mm256_loadu_pd(x + j + 4);
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(a, a));
    acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(b, b));
  }
  for (; j + 4 <= n; j += 4) {
    const __m256d a = _mm256_loadu_pd(x + j);
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(a, a));
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; j < n; ++j) s += x[j] * x[j];
  return s;
}

double sum_abs(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) acc = _mm256_add_pd(acc, vabs(_mm256_loadu_pd(x + j)));
  double s = hsum(acc);
  for (; j < n; ++j) s += std::fabs(x[j]);
  return s;
}

double prod_abs(const double* x, std::size_t n) {
  __m256d acc = _mm256_set1_pd(1.0);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) acc = _mm256_mul_pd(acc, vabs(_mm256_loadu_pd(x + j)));
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double p = (lanes[0] * lanes[1]) * (lanes[2] * lanes[3]);
  for (; j < n; ++j) p *= std::fabs(x[j]);
  return p;
}

double max_abs(const double* x, std::size_t n) {
  __m256d m = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) m = _mm256_max_pd(vabs(_mm256_loadu_pd(x + j)), m);
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, m);
  double r = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
  for (; j < n; ++j) r = std::max(r, std::fabs(x[j]));
  return r;
}

double weighted_quartic(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  __m256d idx = _mm256_setr_pd(1.0, 2.0, 3.0, 4.0);
  const __m256d four = _mm256_set1_pd(4.0);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d v = _mm256_loadu_pd(x + j);
    const __m256d sq = _mm256_mul_pd(v, v);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(idx, _mm256_mul_pd(sq, sq)));
    idx = _mm256_add_pd(idx, four);
  }
  double s = hsum(acc);
  for (; j < n; ++j) {
    const double sq = x[j] * x[j];
    s += static_cast<double>(j + 1) * (sq * sq);
  }
  return s;
}

double rosenbrock(const double* x, std::size_t n) {
  if (n < 2) return 0.0;
  const std::size_t terms = n - 1;
  const __m256d hundred = _mm256_set1_pd(100.0);
  const __m256d one = _mm256_set1_pd(1.0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= terms; j += 4) {
    const __m256d a = _mm256_loadu_pd(x + j);
    const __m256d b = _mm256_loadu_pd(x + j + 1);
    const __m256d t = _mm256_sub_pd(b, _mm256_mul_pd(a, a));
    const __m256d u = _mm256_sub_pd(a, one);
    acc = _mm256_add_pd(acc, _mm256_add_pd(_mm256_mul_pd(hundred, _mm256_mul_pd(t, t)),
                                           _mm256_mul_pd(u, u)));
  }
  double s = hsum(acc);
  for (; j < terms; ++j) {
    const double t = x[j + 1] - x[j] * x[j];
    const double u = x[j] - 1.0;
    s += 100.0 * (t * t) + u * u;
  }
  return s;
}

double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 8 <= n; j += 8) {
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(_mm256_loadu_pd(a + j), _mm256_loadu_pd(b + j)));
    acc1 = _mm256_add_pd(acc1,
                         _mm256_mul_pd(_mm256_loadu_pd(a + j + 4), _mm256_loadu_pd(b + j + 4)));
  }
  for (; j + 4 <= n; j += 4) {
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(_mm256_loadu_pd(a + j), _mm256_loadu_pd(b + j)));
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; j < n; ++j) s += a[j] * b[j];
  return s;
}

void leader_candidate(const double* leader, const double* wolf, const double* r1,
                      const double* r2, double wa, double ww, bool abs_disp, double* out,
                      std::size_t n) {
  const __m256d vwa = _mm256_set1_pd(wa);
  const __m256d v2wa = _mm256_set1_pd(2.0 * wa);
  const __m256d vww = _mm256_set1_pd(ww);
  const __m256d two = _mm256_set1_pd(2.0);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d l = _mm256_loadu_pd(leader + j);
    const __m256d a = _mm256_sub_pd(_mm256_mul_pd(v2wa, _mm256_loadu_pd(r1 + j)), vwa);
    const __m256d c = _mm256_mul_pd(two, _mm256_loadu_pd(r2 + j));
    __m256d d = _mm256_sub_pd(_mm256_mul_pd(c, l), _mm256_loadu_pd(wolf + j));
    if (abs_disp) d = vabs(d);
    _mm256_storeu_pd(out + j, _mm256_sub_pd(_mm256_mul_pd(vww, l), _mm256_mul_pd(a, d)));
  }
  if (j < n) scalar::leader_candidate(leader + j, wolf + j, r1 + j, r2 + j, wa, ww, abs_disp,
                                      out + j, n - j);
}

void combine3(const double* a, const double* b, const double* d, double wa, double wb,
              double wd, double denom, double* out, std::size_t n) {
  const __m256d va = _mm256_set1_pd(wa);
  const __m256d vb = _mm256_set1_pd(wb);
  const __m256d vd = _mm256_set1_pd(wd);
  const __m256d vt = _mm256_set1_pd(denom);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d s = _mm256_add_pd(
        _mm256_add_pd(_mm256_mul_pd(va, _mm256_loadu_pd(a + j)),
                      _mm256_mul_pd(vb, _mm256_loadu_pd(b + j))),
        _mm256_mul_pd(vd, _mm256_loadu_pd(d + j)));
    _mm256_storeu_pd(out + j, _mm256_div_pd(s, vt));
  }
  if (j < n) scalar::combine3(a + j, b + j, d + j, wa, wb, wd, denom, out + j, n - j);
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    _mm256_storeu_pd(y + j, _mm256_add_pd(_mm256_loadu_pd(y + j),
                                          _mm256_mul_pd(va, _mm256_loadu_pd(x + j))));
  }
  if (j < n) scalar::axpy(alpha, x + j, y + j, n - j);
}

void clamp(double* x, const double* lo, const double* hi, std::size_t n) {
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    // Compare-and-blend mirrors std::max/std::min tie behaviour exactly.
    __m256d v = _mm256_loadu_pd(x + j);
    const __m256d l = _mm256_loadu_pd(lo + j);
    const __m256d h = _mm256_loadu_pd(hi + j);
    v = _mm256_blendv_pd(v, l, _mm256_cmp_pd(v, l, _CMP_LT_OQ));
    v = _mm256_blendv_pd(v, h, _mm256_cmp_pd(h, v, _CMP_LT_OQ));
    _mm256_storeu_pd(x + j, v);
  }
  if (j < n) scalar::clamp(x + j, lo + j, hi + j, n - j);
}

}  // namespace lupus::kernels::avx2
