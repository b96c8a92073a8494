#pragma once

// Grey wolf optimizer family (GWO, CGWO, AGWO, ACGWO) and a global-best PSO
// baseline over box-bounded continuous search spaces.
//
// RNG draw order inside one GWO iteration is fixed:
//   1. objective noise, one evaluation per agent in index order;
//   2. for each agent, for each leader (alpha, beta, delta), for each
//      coordinate: r1 then r2.
// PSO draws, per particle and per coordinate, r1 then r2 after evaluation.

#include <array>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lupus/curves.hpp"
#include "lupus/rng.hpp"

namespace lupus {

struct SearchSpace {
  std::vector<double> lower;
  std::vector<double> upper;

  static SearchSpace uniform(std::size_t dim, double lo, double hi);

  std::size_t dim() const noexcept { return lower.size(); }
  /// Throws ConfigError unless dim > 0, sizes agree and lower < upper everywhere.
  void validate() const;
};

/// Minimization objective. Deterministic objectives must ignore the stream;
/// stochastic ones draw from it and nothing else.
struct Objective {
  std::function<double(std::span<const double>, Rng&)> eval;
  bool stochastic = false;
};

enum class Variant { gwo, cgwo, agwo, acgwo };

std::string_view to_string(Variant v) noexcept;
/// Accepts "gwo", "cgwo", "agwo", "acgwo" (case-insensitive).
Variant parse_variant(std::string_view name);

constexpr bool uses_curve(Variant v) noexcept {
  return v == Variant::cgwo || v == Variant::acgwo;
}
constexpr bool uses_leader_weights(Variant v) noexcept {
  return v == Variant::agwo || v == Variant::acgwo;
}

/// How the Cauchy inertia curve value enters the position update.
enum class InertiaScaling {
  /// ww(t) / ww(0): the curve's shape, starting at exactly 1.
  peak,
  /// ww(t) used verbatim (values above 1 with the default curve).
  literal,
};

std::string_view to_string(InertiaScaling s) noexcept;
InertiaScaling parse_inertia_scaling(std::string_view name);

/// How the adaptive leader weights blend the three leader candidates.
enum class LeaderCombination {
  /// mean_k (fi_k / d) X_k. Weights are measured against the curve's
  /// asymptote d, so the blend shrinks while the leaders are far ahead of the
  /// population average.
  scaled,
  /// sum_k fi_k X_k / sum_k fi_k.
  normalized,
};

std::string_view to_string(LeaderCombination c) noexcept;
LeaderCombination parse_leader_combination(std::string_view name);

struct GwoConfig {
  Variant variant = Variant::acgwo;
  int n_agents = 100;
  int max_iter = 1000;
  CurveParams inertia = CurveParams::s_shape();
  CurveParams leader = CurveParams::cauchy();
  InertiaScaling inertia_scaling = InertiaScaling::peak;
  LeaderCombination leader_combination = LeaderCombination::scaled;
  /// D = |C L - X| when true, the signed difference otherwise.
  bool abs_displacement = true;
  std::uint64_t seed = 0;
  /// Evaluation threads; only used for objectives that draw no randomness.
  int threads = 1;

  void validate() const;
};

struct Leader {
  std::vector<double> position;
  double score = std::numeric_limits<double>::infinity();
};

struct SwarmState {
  std::size_t n_agents = 0;
  std::size_t dim = 0;
  std::vector<double> positions;  // row-major n_agents x dim
  std::vector<double> fitness;
  std::array<Leader, 3> leaders;  // alpha, beta, delta
  int iter = 0;

  std::span<const double> agent(std::size_t i) const {
    return {positions.data() + i * dim, dim};
  }
  std::span<double> agent(std::size_t i) { return {positions.data() + i * dim, dim}; }
  const Leader& alpha() const { return leaders[0]; }
};

struct RunResult {
  std::vector<double> best_position;
  double best_score = std::numeric_limits<double>::infinity();
  /// Best-so-far score after each iteration.
  std::vector<double> history;
  std::uint64_t evaluations = 0;

  friend bool operator==(const RunResult&, const RunResult&) = default;
};

struct StepCoefficients {
  std::vector<double> A;
  std::vector<double> C;
};

/// Uniform random positions inside the space; leader scores at +inf.
SwarmState initialize(const SearchSpace& space, const GwoConfig& cfg, Rng& rng);

/// Per coordinate: A = 2 wa r1 - wa, C = 2 r2, drawing r1 then r2.
StepCoefficients step_coefficients(double wa, std::size_t dim, Rng& rng);

/// ww * leader - A * D with D = |C * leader - wolf| (or signed).
std::vector<double> candidate_from_leader(std::span<const double> wolf,
                                          std::span<const double> leader,
                                          std::span<const double> A, std::span<const double> C,
                                          double ww, bool abs_displacement = true);

struct LeaderWeights {
  double alpha = 1.0;
  double beta = 1.0;
  double delta = 1.0;
};

/// Weighted mean of the three leader candidates. Equal weights give the plain
/// mean. Throws std::logic_error when the weight sum is not positive.
std::vector<double> combine_candidates(std::span<const double> x_alpha,
                                       std::span<const double> x_beta,
                                       std::span<const double> x_delta, LeaderWeights w);

/// (w_alpha x_alpha + w_beta x_beta + w_delta x_delta) / (3 scale).
std::vector<double> combine_candidates_scaled(std::span<const double> x_alpha,
                                              std::span<const double> x_beta,
                                              std::span<const double> x_delta, LeaderWeights w,
                                              double scale);

void clamp(std::span<double> pos, const SearchSpace& space);

/// NaN fitness ranks as +inf.
double sanitize_fitness(double f) noexcept;

/// Evaluate every agent (noise drawn in agent order) and fold the results into
/// the alpha/beta/delta set. Returns the number of evaluations.
std::uint64_t evaluate_and_rank(SwarmState& state, const Objective& objective, Rng& rng,
                                int threads = 1);

/// Inertia multiplier applied to leader positions at `iter`.
double inertia_weight(const GwoConfig& cfg, int iter);

/// Leader weights for the current state and population-average fitness.
LeaderWeights leader_weights(const GwoConfig& cfg, const SwarmState& state, double f_avg);

RunResult run(const Objective& objective, const SearchSpace& space, const GwoConfig& cfg);

struct PsoConfig {
  int n_particles = 40;
  int max_iter = 500;
  double c1 = 2.0;
  double c2 = 2.0;
  double w_max = 0.9;
  double w_min = 0.4;
  /// Maximum |velocity| per coordinate as a fraction of the range width.
  double velocity_clamp = 0.2;
  std::uint64_t seed = 0;

  void validate() const;
};

RunResult pso_run(const Objective& objective, const SearchSpace& space, const PsoConfig& cfg);

}  // namespace lupus
