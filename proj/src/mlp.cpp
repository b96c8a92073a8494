#include "lupus/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "lupus/curves.hpp"
#include "lupus/error.hpp"
#include "lupus/rng.hpp"

namespace lupus::mlp {
namespace {

// Largest double below 1; sigmoid rounds to exactly 1.0 for z above ~37.
constexpr double kBelowOne = 1.0 - 0x1.0p-53;

double squash_output(double p) noexcept {
  return std::clamp(p, std::numeric_limits<double>::denorm_min(), kBelowOne);
}

void check_params(const Architecture& arch, std::span<const double> params) {
  if (params.size() != arch.param_count()) {
    throw DomainError("parameter vector has " + std::to_string(params.size()) +
                      " entries, architecture needs " + std::to_string(arch.param_count()));
  }
}

void check_data(const Architecture& arch, const Matrix& X, std::span<const int> y) {
  if (X.rows == 0) throw DomainError("empty dataset");
  if (X.rows != y.size()) throw DomainError("feature rows and labels differ in count");
  if (X.cols != arch.inputs()) {
    throw DomainError("data has " + std::to_string(X.cols) + " features, network expects " +
                      std::to_string(arch.inputs()));
  }
}

std::size_t widest(const Architecture& arch) {
  return *std::max_element(arch.layer_sizes.begin(), arch.layer_sizes.end());
}

// One layer: out[o] = sigmoid(W[o,:] . in + b[o]). Returns the offset just
// past this layer's parameters.
std::size_t apply_layer(const double* p, std::size_t fan_in, std::size_t fan_out,
                        const double* in, double* out) {
  const double* b = p + fan_in * fan_out;
  for (std::size_t o = 0; o < fan_out; ++o) {
    const double* w = p + o * fan_in;
    double z = 0.0;
    for (std::size_t i = 0; i < fan_in; ++i) z += w[i] * in[i];
    out[o] = sigmoid(z + b[o]);
  }
  return fan_in * fan_out + fan_out;
}

// Forward pass with scratch buffers sized to the widest layer.
double forward_raw(const Architecture& arch, const double* params, const double* x,
                   std::vector<double>& a, std::vector<double>& b) {
  const auto& L = arch.layer_sizes;
  std::copy(x, x + L[0], a.begin());
  std::size_t off = 0;
  for (std::size_t l = 1; l < L.size(); ++l) {
    off += apply_layer(params + off, L[l - 1], L[l], a.data(), b.data());
    std::swap(a, b);
  }
  return squash_output(a[0]);
}

double sample_loss(double p, int y) {
  const double q = std::clamp(p, kProbabilityClip, 1.0 - kProbabilityClip);
  return y == 1 ? -std::log(q) : -std::log1p(-q);
}

}  // namespace

std::size_t Architecture::param_count() const {
  std::size_t n = 0;
  for (std::size_t l = 1; l < layer_sizes.size(); ++l)
    n += layer_sizes[l - 1] * layer_sizes[l] + layer_sizes[l];
  return n;
}

void Architecture::validate() const {
  if (layer_sizes.size() < 2) throw ConfigError("network needs at least an input and output layer");
  for (auto s : layer_sizes)
    if (s == 0) throw ConfigError("layer sizes must be positive");
  if (layer_sizes.back() != 1) throw ConfigError("output layer must have exactly one unit");
}

std::vector<Layer> unflatten(const Architecture& arch, std::span<const double> params) {
  check_params(arch, params);
  std::vector<Layer> layers;
  std::size_t off = 0;
  for (std::size_t l = 1; l < arch.layer_sizes.size(); ++l) {
    const auto fi = arch.layer_sizes[l - 1], fo = arch.layer_sizes[l];
    Layer layer;
    layer.W = Matrix(fo, fi);
    std::copy_n(params.begin() + off, fi * fo, layer.W.data.begin());
    off += fi * fo;
    layer.b.assign(params.begin() + off, params.begin() + off + fo);
    off += fo;
    layers.push_back(std::move(layer));
  }
  return layers;
}

std::vector<double> flatten(std::span<const Layer> layers) {
  std::vector<double> out;
  for (const auto& layer : layers) {
    out.insert(out.end(), layer.W.data.begin(), layer.W.data.end());
    out.insert(out.end(), layer.b.begin(), layer.b.end());
  }
  return out;
}

double forward(const Architecture& arch, std::span<const double> params,
               std::span<const double> x) {
  check_params(arch, params);
  if (x.size() != arch.inputs()) {
    throw DomainError("input has " + std::to_string(x.size()) + " features, network expects " +
                      std::to_string(arch.inputs()));
  }
  std::vector<double> a(widest(arch)), b(widest(arch));
  return forward_raw(arch, params.data(), x.data(), a, b);
}

std::vector<double> forward_batch(const Architecture& arch, std::span<const double> params,
                                  const Matrix& X) {
  check_params(arch, params);
  if (X.cols != arch.inputs()) throw DomainError("feature count does not match the network");
  std::vector<double> a(widest(arch)), b(widest(arch)), out(X.rows);
  for (std::size_t i = 0; i < X.rows; ++i)
    out[i] = forward_raw(arch, params.data(), X.row(i).data(), a, b);
  return out;
}

double bce_loss(const Architecture& arch, std::span<const double> params, const Matrix& X,
                std::span<const int> y) {
  check_params(arch, params);
  check_data(arch, X, y);
  std::vector<double> a(widest(arch)), b(widest(arch));
  double total = 0.0;
  for (std::size_t i = 0; i < X.rows; ++i)
    total += sample_loss(forward_raw(arch, params.data(), X.row(i).data(), a, b), y[i]);
  return total / static_cast<double>(X.rows);
}

std::vector<double> backward(const Architecture& arch, std::span<const double> params,
                             const Matrix& X, std::span<const int> y) {
  check_params(arch, params);
  check_data(arch, X, y);
  const auto& L = arch.layer_sizes;
  const std::size_t n_layers = L.size() - 1;

  std::vector<std::size_t> offset(n_layers);
  for (std::size_t l = 1, off = 0; l <= n_layers; ++l) {
    offset[l - 1] = off;
    off += L[l - 1] * L[l] + L[l];
  }

  std::vector<std::vector<double>> act(L.size());
  for (std::size_t l = 0; l < L.size(); ++l) act[l].resize(L[l]);
  std::vector<double> delta(widest(arch)), prev(widest(arch));
  std::vector<double> grad(params.size(), 0.0);
  const double inv_n = 1.0 / static_cast<double>(X.rows);

  for (std::size_t s = 0; s < X.rows; ++s) {
    const auto x = X.row(s);
    std::copy(x.begin(), x.end(), act[0].begin());
    for (std::size_t l = 1; l <= n_layers; ++l)
      apply_layer(params.data() + offset[l - 1], L[l - 1], L[l], act[l - 1].data(),
                  act[l].data());

    const double p = squash_output(act[n_layers][0]);
    if (p < kProbabilityClip || p > 1.0 - kProbabilityClip) continue;
    // d(loss)/dz at the sigmoid output collapses to p - y.
    delta[0] = (p - y[s]) * inv_n;

    for (std::size_t l = n_layers; l >= 1; --l) {
      const std::size_t fi = L[l - 1], fo = L[l];
      const double* W = params.data() + offset[l - 1];
      double* gW = grad.data() + offset[l - 1];
      double* gb = gW + fi * fo;
      const auto& in = act[l - 1];
      for (std::size_t o = 0; o < fo; ++o) {
        for (std::size_t i = 0; i < fi; ++i) gW[o * fi + i] += delta[o] * in[i];
        gb[o] += delta[o];
      }
      if (l == 1) break;
      for (std::size_t i = 0; i < fi; ++i) {
        double back = 0.0;
        for (std::size_t o = 0; o < fo; ++o) back += W[o * fi + i] * delta[o];
        prev[i] = back * in[i] * (1.0 - in[i]);
      }
      std::copy_n(prev.begin(), fi, delta.begin());
    }
  }
  return grad;
}

std::vector<int> predict(const Architecture& arch, std::span<const double> params,
                         const Matrix& X, double threshold) {
  const auto p = forward_batch(arch, params, X);
  std::vector<int> out(p.size());
  std::transform(p.begin(), p.end(), out.begin(), [&](double v) { return v >= threshold ? 1 : 0; });
  return out;
}

std::string_view to_string(TrainMode m) noexcept {
  switch (m) {
    case TrainMode::acgwo: return "acgwo";
    case TrainMode::bp: return "bp";
    case TrainMode::hybrid: return "hybrid";
  }
  return "?";
}

TrainMode parse_train_mode(std::string_view name) {
  if (name == "acgwo") return TrainMode::acgwo;
  if (name == "bp") return TrainMode::bp;
  if (name == "hybrid") return TrainMode::hybrid;
  throw ConfigError("unknown training mode '" + std::string(name) +
                    "' (expected acgwo, bp or hybrid)");
}

std::vector<double> initial_params(const Architecture& arch, std::uint64_t seed) {
  arch.validate();
  Rng rng(seed);
  std::vector<double> p;
  p.reserve(arch.param_count());
  for (std::size_t l = 1; l < arch.layer_sizes.size(); ++l) {
    const std::size_t fi = arch.layer_sizes[l - 1], fo = arch.layer_sizes[l];
    const double r = 1.0 / std::sqrt(static_cast<double>(fi));
    for (std::size_t k = 0; k < fi * fo + fo; ++k) p.push_back(rng.uniform(-r, r));
  }
  return p;
}

TrainReport train_acgwo(const Architecture& arch, const Matrix& X, std::span<const int> y,
                        const GwoConfig& cfg, Bounds bounds) {
  arch.validate();
  check_data(arch, X, y);
  if (!(bounds.lo < bounds.hi)) throw ConfigError("weight bounds must satisfy lo < hi");
  Objective obj;
  obj.eval = [&](std::span<const double> p, Rng&) { return bce_loss(arch, p, X, y); };
  const auto result = run(obj, SearchSpace::uniform(arch.param_count(), bounds.lo, bounds.hi), cfg);

  TrainReport r;
  r.params = result.best_position;
  r.loss_history = result.history;
  r.mode = TrainMode::acgwo;
  r.swarm_iterations = result.history.size();
  return r;
}

TrainReport train_bp(const Architecture& arch, const Matrix& X, std::span<const int> y,
                     std::vector<double> start, const BpConfig& bp) {
  arch.validate();
  check_params(arch, start);
  if (bp.epochs < 0) throw ConfigError("bp epochs must be >= 0");
  if (!(bp.learning_rate > 0.0)) throw ConfigError("learning rate must be positive");
  TrainReport r;
  r.mode = TrainMode::bp;
  r.params = std::move(start);
  r.loss_history.reserve(static_cast<std::size_t>(bp.epochs));
  for (int e = 0; e < bp.epochs; ++e) {
    const auto g = backward(arch, r.params, X, y);
    for (std::size_t k = 0; k < g.size(); ++k) r.params[k] -= bp.learning_rate * g[k];
    r.loss_history.push_back(bce_loss(arch, r.params, X, y));
  }
  return r;
}

TrainReport train_hybrid(const Architecture& arch, const Matrix& X, std::span<const int> y,
                         const GwoConfig& cfg, Bounds bounds, const BpConfig& bp) {
  auto swarm = train_acgwo(arch, X, y, cfg, bounds);
  auto tail = train_bp(arch, X, y, swarm.params, bp);
  TrainReport r;
  r.mode = TrainMode::hybrid;
  r.params = std::move(tail.params);
  r.swarm_iterations = swarm.swarm_iterations;
  r.loss_history = std::move(swarm.loss_history);
  r.loss_history.insert(r.loss_history.end(), tail.loss_history.begin(), tail.loss_history.end());
  return r;
}

}  // namespace lupus::mlp
