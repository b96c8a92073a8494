#pragma once

// Fully connected sigmoid network for binary classification, trained by a
// grey wolf swarm over the flattened parameters, by gradient descent, or by
// the swarm followed by gradient descent.
//
// Parameter layout, layer by layer: the fan_out x fan_in weight matrix
// (row-major, one row per output unit) followed by the fan_out biases.

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "lupus/matrix.hpp"
#include "lupus/optimizer.hpp"

namespace lupus::mlp {

inline constexpr double kProbabilityClip = 1e-12;

struct Architecture {
  std::vector<std::size_t> layer_sizes;

  /// [n_features, 16, 1].
  static Architecture default_for(std::size_t n_features) { return {{n_features, 16, 1}}; }

  std::size_t inputs() const { return layer_sizes.front(); }
  std::size_t param_count() const;
  /// Throws ConfigError unless there are >= 2 positive sizes ending in 1.
  void validate() const;

  friend bool operator==(const Architecture&, const Architecture&) = default;
};

struct Layer {
  Matrix W;  // fan_out x fan_in
  std::vector<double> b;
};

/// Throws DomainError when the vector length does not match the architecture.
std::vector<Layer> unflatten(const Architecture& arch, std::span<const double> params);
std::vector<double> flatten(std::span<const Layer> layers);

/// Probability of class 1, strictly inside (0, 1).
double forward(const Architecture& arch, std::span<const double> params,
               std::span<const double> x);
std::vector<double> forward_batch(const Architecture& arch, std::span<const double> params,
                                  const Matrix& X);

/// Mean binary cross-entropy with p clipped to [1e-12, 1 - 1e-12].
double bce_loss(const Architecture& arch, std::span<const double> params, const Matrix& X,
                std::span<const int> y);

/// Exact gradient of bce_loss. Samples inside the clipped region contribute 0.
std::vector<double> backward(const Architecture& arch, std::span<const double> params,
                             const Matrix& X, std::span<const int> y);

/// Label 1 iff forward >= threshold.
std::vector<int> predict(const Architecture& arch, std::span<const double> params,
                         const Matrix& X, double threshold = 0.5);

enum class TrainMode { acgwo, bp, hybrid };
std::string_view to_string(TrainMode m) noexcept;
/// Throws ConfigError for anything but "acgwo", "bp" or "hybrid".
TrainMode parse_train_mode(std::string_view name);

struct Bounds {
  double lo = -5.0;
  double hi = 5.0;
};

struct BpConfig {
  int epochs = 200;
  double learning_rate = 0.05;
};

struct TrainReport {
  std::vector<double> params;
  /// Swarm alpha history, then the loss after each gradient step.
  std::vector<double> loss_history;
  TrainMode mode = TrainMode::acgwo;
  std::size_t swarm_iterations = 0;

  friend bool operator==(const TrainReport&, const TrainReport&) = default;
};

/// Seeded uniform initialization in +-1/sqrt(fan_in) for plain gradient descent.
std::vector<double> initial_params(const Architecture& arch, std::uint64_t seed);

TrainReport train_acgwo(const Architecture& arch, const Matrix& X, std::span<const int> y,
                        const GwoConfig& cfg, Bounds bounds = {});
/// Full-batch gradient descent from `start`.
TrainReport train_bp(const Architecture& arch, const Matrix& X, std::span<const int> y,
                     std::vector<double> start, const BpConfig& bp);
TrainReport train_hybrid(const Architecture& arch, const Matrix& X, std::span<const int> y,
                         const GwoConfig& cfg, Bounds bounds, const BpConfig& bp);

}  // namespace lupus::mlp
