#include "lupus/benchfns.hpp"

#include <cmath>
#include <numbers>

#include "lupus/error.hpp"
#include "lupus/kernels.hpp"

namespace lupus::bench {

double sphere(std::span<const double> x) { return kernels::sum_squares(x); }

double schwefel_p221(std::span<const double> x) {
  if (x.empty()) throw DomainError("schwefel_p221: empty vector");
  return kernels::max_abs(x);
}

double schwefel_p222(std::span<const double> x) {
  return kernels::sum_abs(x) + kernels::prod_abs(x);
}

double rosenbrock(std::span<const double> x) {
  if (x.size() < 2) throw DomainError("rosenbrock: dimension must be >= 2");
  return kernels::rosenbrock(x);
}

double quartic(std::span<const double> x) { return kernels::weighted_quartic(x); }

double quadric_noise(std::span<const double> x, Rng& noise) {
  return quartic(x) + noise.uniform();
}

double schaffer(std::span<const double> x) {
  if (x.empty()) throw DomainError("schaffer: empty vector");
  const double s = kernels::sum_squares(x);
  const double sn = std::sin(std::sqrt(s));
  const double den = 1.0 + 0.001 * s;
  return 0.5 + (sn * sn - 0.5) / (den * den);
}

double rastrigin(std::span<const double> x) {
  double s = 10.0 * static_cast<double>(x.size());
  for (double v : x) s += v * v - 10.0 * std::cos(2.0 * std::numbers::pi * v);
  return s;
}

SearchSpace BenchmarkFn::space(std::size_t dim) const {
  return SearchSpace::uniform(dim, lower, upper);
}

Objective BenchmarkFn::objective() const {
  using Fn = double (*)(std::span<const double>);
  Fn f = nullptr;
  if (id == "f1") f = sphere;
  else if (id == "f2") f = schwefel_p221;
  else if (id == "f3") f = schwefel_p222;
  else if (id == "f4") f = rosenbrock;
  else if (id == "f6") f = schaffer;
  else if (id == "f5r") f = rastrigin;

  if (id == "f5") {
    return Objective{[](std::span<const double> x, Rng& noise) { return quadric_noise(x, noise); },
                     true};
  }
  if (f == nullptr) throw ConfigError("unknown benchmark function '" + id + "'");
  return Objective{[f](std::span<const double> x, Rng&) { return f(x); }, false};
}

const std::vector<BenchmarkFn>& registry() {
  static const std::vector<BenchmarkFn> fns{
      {"f1", "Sphere", -100.0, 100.0, 0.0, false},
      {"f2", "Schwefel P2.21", -100.0, 100.0, 0.0, false},
      {"f3", "Schwefel P2.22", -10.0, 10.0, 0.0, false},
      {"f4", "Rosenbrock", -10.0, 10.0, 0.0, false},
      {"f5", "Quadric Noise", -1.28, 1.28, 0.0, true},
      {"f6", "Schaffer", -100.0, 100.0, 0.0, false},
      {"f5r", "Rastrigin", -5.12, 5.12, 0.0, false},
  };
  return fns;
}

const BenchmarkFn& lookup(std::string_view id) {
  for (const auto& fn : registry()) {
    if (fn.id == id) return fn;
  }
  throw ConfigError("unknown benchmark function '" + std::string(id) + "'");
}

}  // namespace lupus::bench
