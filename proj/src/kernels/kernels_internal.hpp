#pragma once

#include <cstddef>

#include "lupus/kernels.hpp"

namespace lupus::kernels {

namespace scalar {
double sum_squares(const double* x, std::size_t n);
double sum_abs(const double* x, std::size_t n);
double prod_abs(const double* x, std::size_t n);
double max_abs(const double* x, std::size_t n);
double weighted_quartic(const double* x, std::size_t n);
double rosenbrock(const double* x, std::size_t n);
double dot(const double* a, const double* b, std::size_t n);
void leader_candidate(const double* leader, const double* wolf, const double* r1,
                      const double* r2, double wa, double ww, bool abs_disp, double* out,
                      std::size_t n);
void combine3(const double* a, const double* b, const double* d, double wa, double wb,
              double wd, double denom, double* out, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void clamp(double* x, const double* lo, const double* hi, std::size_t n);
}  // namespace scalar

#if defined(LUPUS_HAVE_AVX2)
namespace avx2 {
double sum_squares(const double* x, std::size_t n);
double sum_abs(const double* x, std::size_t n);
double prod_abs(const double* x, std::size_t n);
double max_abs(const double* x, std::size_t n);
double weighted_quartic(const double* x, std::size_t n);
double rosenbrock(const double* x, std::size_t n);
double dot(const double* a, const double* b, std::size_t n);
void leader_candidate(const double* leader, const double* wolf, const double* r1,
                      const double* r2, double wa, double ww, bool abs_disp, double* out,
                      std::size_t n);
void combine3(const double* a, const double* b, const double* d, double wa, double wb,
              double wd, double denom, double* out, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void clamp(double* x, const double* lo, const double* hi, std::size_t n);
}  // namespace avx2
#endif

}  // namespace lupus::kernels
