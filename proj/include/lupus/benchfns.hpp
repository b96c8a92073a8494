#pragma once

// Benchmark objectives (minimization, optimum 0) and their registry.

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lupus/optimizer.hpp"
#include "lupus/rng.hpp"

namespace lupus::bench {

/// sum x_j^2
double sphere(std::span<const double> x);
/// max_j |x_j|. Throws DomainError on empty input.
double schwefel_p221(std::span<const double> x);
/// sum |x_j| + prod |x_j|
double schwefel_p222(std::span<const double> x);
/// Throws DomainError when x.size() < 2.
double rosenbrock(std::span<const double> x);
/// Deterministic part of the quartic-with-noise function: sum (j+1) x_j^4.
double quartic(std::span<const double> x);
/// quartic(x) + u, u ~ U[0,1) drawn once from `noise`.
double quadric_noise(std::span<const double> x, Rng& noise);
/// Generalized Schaffer F6 over s = sum x_j^2. Throws DomainError on empty input.
double schaffer(std::span<const double> x);
/// 10 n + sum (x_j^2 - 10 cos(2 pi x_j)). Registered as "f5r".
double rastrigin(std::span<const double> x);

struct BenchmarkFn {
  std::string id;
  std::string name;
  double lower;
  double upper;
  double optimum_value;
  bool stochastic;

  SearchSpace space(std::size_t dim) const;
  Objective objective() const;
};

/// All registered functions, f1..f6 then f5r.
const std::vector<BenchmarkFn>& registry();

/// Throws ConfigError naming the id when it is not registered.
const BenchmarkFn& lookup(std::string_view id);

}  // namespace lupus::bench
