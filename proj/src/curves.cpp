#include "lupus/curves.hpp"

#include <cmath>
#include <string>

#include "lupus/error.hpp"

namespace lupus {
namespace {

constexpr double kPi = std::numbers::pi;

double cauchy_bump(double ratio, const CurveParams& p) noexcept {
  const double shift = ratio - p.b;
  return (p.a / kPi) * (1.0 / (p.a * p.a + shift * shift)) * p.c;
}

}  // namespace

void CurveParams::validate() const {
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) || !std::isfinite(d)) {
    throw ConfigError("curve parameters must be finite");
  }
  if (!(a > 0.0)) throw ConfigError("curve parameter a must be > 0, got " + std::to_string(a));
}

SigmoidScheduleParams SigmoidScheduleParams::for_iterations(int max_iter) {
  if (max_iter <= 0) throw ConfigError("max_iter must be positive");
  SigmoidScheduleParams p;
  p.b = 20.0 / static_cast<double>(max_iter);
  return p;
}

void SigmoidScheduleParams::validate() const {
  if (!(w_start >= w_end)) throw ConfigError("sigmoid schedule requires w_start >= w_end");
}

double cauchy_pdf(double x, double x0, double gamma) {
  if (!(gamma > 0.0)) throw DomainError("cauchy_pdf: gamma must be > 0");
  const double dx = x - x0;
  return (1.0 / (kPi * gamma)) * (gamma * gamma / (gamma * gamma + dx * dx));
}

double sigmoid(double x) noexcept {
  // Branching keeps exp() from overflowing on either tail.
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double inverse_sigmoid_weight(double t, const SigmoidScheduleParams& p) noexcept {
  return p.w_start - (p.w_start - p.w_end) * (1.0 / (1.0 + std::exp(p.a - p.b * t)));
}

double cauchy_inertia(int iter, int max_iter, const CurveParams& p) {
  if (max_iter <= 0) throw DomainError("cauchy_inertia: max_iter must be positive");
  const double ratio = static_cast<double>(iter) / static_cast<double>(max_iter);
  return cauchy_bump(ratio, p) + p.d;
}

double leader_weight(double score, double f_avg, const CurveParams& p) noexcept {
  double ratio = 1.0;
  if (std::fabs(f_avg) >= kDegenerateAverage) {
    ratio = score / f_avg;
    if (!std::isfinite(ratio)) ratio = 1.0;
  }
  return -cauchy_bump(ratio, p) + p.d;
}

double control_wa(int iter, int max_iter) {
  if (max_iter <= 0) throw DomainError("control_wa: max_iter must be positive");
  return 2.0 - static_cast<double>(iter) * (2.0 / static_cast<double>(max_iter));
}

}  // namespace lupus
