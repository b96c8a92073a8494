#pragma once

// Schedule and weighting curves used by the optimizers.

#include <numbers>

namespace lupus {

/// Four-parameter Cauchy-bump family shared by the inertia curve and the
/// adaptive leader weights. `a` must be strictly positive.
struct CurveParams {
  double a = 1.0;
  double b = 0.0;
  double c = 2.0;
  double d = 1.7;

  /// Defaults for the iteration-driven inertia curve.
  static constexpr CurveParams s_shape() { return {1.0, 0.0, 2.0, 1.7}; }
  /// Defaults for the per-leader fitness weights.
  static constexpr CurveParams cauchy() { return {1.0, 0.0, 2.0, 2.1}; }

  /// Throws ConfigError when a <= 0 or any field is non-finite.
  void validate() const;

  friend bool operator==(const CurveParams&, const CurveParams&) = default;
};

/// Inverse-sigmoid inertia schedule parameters. The defaults for `a` and `b`
/// assume a 1000-iteration run (b = 20 / max_iter).
struct SigmoidScheduleParams {
  double w_start = 0.9;
  double w_end = 0.4;
  double a = 10.0;
  double b = 0.02;

  static SigmoidScheduleParams for_iterations(int max_iter);
  void validate() const;
};

/// Below this magnitude the population average is treated as zero and the
/// leader ratio collapses to 1.
inline constexpr double kDegenerateAverage = 1e-12;

/// Cauchy probability density with location x0 and scale gamma > 0.
double cauchy_pdf(double x, double x0, double gamma);

double sigmoid(double x) noexcept;

/// w_start - (w_start - w_end) / (1 + exp(a - b t))
double inverse_sigmoid_weight(double t, const SigmoidScheduleParams& p) noexcept;

/// Cauchy-curve inertia weight ww at iteration `iter` of `max_iter`:
/// (a/pi) / (a^2 + (iter/max_iter - b)^2) * c + d.
double cauchy_inertia(int iter, int max_iter, const CurveParams& p);

/// Adaptive leader weight from the leader's score relative to the population
/// average: d - (a/pi) c / (a^2 + (score/f_avg - b)^2). The ratio is taken as 1
/// when |f_avg| < kDegenerateAverage or when it is not finite.
double leader_weight(double score, double f_avg, const CurveParams& p) noexcept;

/// Linear control parameter 2 -> 0 that bounds the encircling coefficient A.
double control_wa(int iter, int max_iter);

}  // namespace lupus
