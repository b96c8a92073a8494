#include "lupus/optimizer.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "lupus/error.hpp"
#include "lupus/kernels.hpp"

namespace lupus {
namespace {

std::string lower_case(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

void fold_into_leaders(SwarmState& state, std::size_t agent) {
  const double f = state.fitness[agent];
  auto& L = state.leaders;
  const auto pos = state.agent(agent);
  auto take = [&](Leader& slot) {
    slot.score = f;
    slot.position.assign(pos.begin(), pos.end());
  };
  if (f < L[0].score || L[0].position.empty()) {
    L[2] = std::move(L[1]);
    L[1] = std::move(L[0]);
    take(L[0]);
  } else if (f < L[1].score || L[1].position.empty()) {
    L[2] = std::move(L[1]);
    take(L[1]);
  } else if (f < L[2].score || L[2].position.empty()) {
    take(L[2]);
  }
}

void evaluate_range(SwarmState& state, const Objective& objective, Rng& rng, std::size_t begin,
                    std::size_t end) {
  for (std::size_t i = begin; i < end; ++i) {
    state.fitness[i] = sanitize_fitness(objective.eval(state.agent(i), rng));
  }
}

}  // namespace

SearchSpace SearchSpace::uniform(std::size_t dim, double lo, double hi) {
  return SearchSpace{std::vector<double>(dim, lo), std::vector<double>(dim, hi)};
}

void SearchSpace::validate() const {
  if (lower.empty()) throw ConfigError("search space must have dim > 0");
  if (lower.size() != upper.size()) throw ConfigError("search space bound sizes differ");
  for (std::size_t j = 0; j < lower.size(); ++j) {
    if (!(lower[j] < upper[j]) || !std::isfinite(lower[j]) || !std::isfinite(upper[j])) {
      throw ConfigError("search space coordinate " + std::to_string(j) +
                        " needs finite lower < upper");
    }
  }
}

std::string_view to_string(Variant v) noexcept {
  switch (v) {
    case Variant::gwo: return "gwo";
    case Variant::cgwo: return "cgwo";
    case Variant::agwo: return "agwo";
    case Variant::acgwo: return "acgwo";
  }
  return "?";
}

Variant parse_variant(std::string_view name) {
  const auto s = lower_case(name);
  if (s == "gwo") return Variant::gwo;
  if (s == "cgwo") return Variant::cgwo;
  if (s == "agwo") return Variant::agwo;
  if (s == "acgwo") return Variant::acgwo;
  throw ConfigError("unknown GWO variant '" + std::string(name) + "'");
}

std::string_view to_string(InertiaScaling s) noexcept {
  return s == InertiaScaling::peak ? "peak" : "literal";
}

InertiaScaling parse_inertia_scaling(std::string_view name) {
  const auto s = lower_case(name);
  if (s == "peak") return InertiaScaling::peak;
  if (s == "literal") return InertiaScaling::literal;
  throw ConfigError("unknown inertia scaling '" + std::string(name) + "'");
}

std::string_view to_string(LeaderCombination c) noexcept {
  return c == LeaderCombination::scaled ? "scaled" : "normalized";
}

LeaderCombination parse_leader_combination(std::string_view name) {
  const auto s = lower_case(name);
  if (s == "scaled") return LeaderCombination::scaled;
  if (s == "normalized") return LeaderCombination::normalized;
  throw ConfigError("unknown leader combination '" + std::string(name) + "'");
}

void GwoConfig::validate() const {
  if (n_agents < 3) throw ConfigError("n_agents must be >= 3");
  if (max_iter < 1) throw ConfigError("max_iter must be >= 1");
  if (threads < 1) throw ConfigError("threads must be >= 1");
  inertia.validate();
  leader.validate();
  if (uses_leader_weights(variant) && leader_combination == LeaderCombination::scaled &&
      !(leader.d > 0.0)) {
    throw ConfigError("scaled leader combination needs leader curve d > 0");
  }
}

SwarmState initialize(const SearchSpace& space, const GwoConfig& cfg, Rng& rng) {
  space.validate();
  cfg.validate();
  SwarmState s;
  s.n_agents = static_cast<std::size_t>(cfg.n_agents);
  s.dim = space.dim();
  s.positions.resize(s.n_agents * s.dim);
  s.fitness.assign(s.n_agents, std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < s.n_agents; ++i) {
    auto row = s.agent(i);
    for (std::size_t j = 0; j < s.dim; ++j) row[j] = rng.uniform(space.lower[j], space.upper[j]);
  }
  return s;
}

StepCoefficients step_coefficients(double wa, std::size_t dim, Rng& rng) {
  StepCoefficients k{std::vector<double>(dim), std::vector<double>(dim)};
  for (std::size_t j = 0; j < dim; ++j) {
    const double r1 = rng.uniform();
    const double r2 = rng.uniform();
    k.A[j] = 2.0 * wa * r1 - wa;
    k.C[j] = 2.0 * r2;
  }
  return k;
}

std::vector<double> candidate_from_leader(std::span<const double> wolf,
                                          std::span<const double> leader,
                                          std::span<const double> A, std::span<const double> C,
                                          double ww, bool abs_displacement) {
  const std::size_t n = wolf.size();
  if (leader.size() != n || A.size() != n || C.size() != n) {
    throw DomainError("candidate_from_leader: dimension mismatch");
  }
  std::vector<double> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = C[j] * leader[j] - wolf[j];
    if (abs_displacement) d = std::fabs(d);
    out[j] = ww * leader[j] - A[j] * d;
  }
  return out;
}

std::vector<double> combine_candidates(std::span<const double> x_alpha,
                                       std::span<const double> x_beta,
                                       std::span<const double> x_delta, LeaderWeights w) {
  const std::size_t n = x_alpha.size();
  if (x_beta.size() != n || x_delta.size() != n) {
    throw DomainError("combine_candidates: dimension mismatch");
  }
  if (!((w.alpha + w.beta) + w.delta > 0.0)) {
    throw std::logic_error("combine_candidates: leader weights must sum to a positive value");
  }
  std::vector<double> out(n);
  kernels::active().combine3(x_alpha.data(), x_beta.data(), x_delta.data(), w.alpha, w.beta,
                             w.delta, (w.alpha + w.beta) + w.delta, out.data(), n);
  return out;
}

std::vector<double> combine_candidates_scaled(std::span<const double> x_alpha,
                                              std::span<const double> x_beta,
                                              std::span<const double> x_delta, LeaderWeights w,
                                              double scale) {
  const std::size_t n = x_alpha.size();
  if (x_beta.size() != n || x_delta.size() != n) {
    throw DomainError("combine_candidates_scaled: dimension mismatch");
  }
  if (!(scale > 0.0)) throw std::logic_error("combine_candidates_scaled: scale must be > 0");
  std::vector<double> out(n);
  kernels::active().combine3(x_alpha.data(), x_beta.data(), x_delta.data(), w.alpha / scale,
                             w.beta / scale, w.delta / scale, 3.0, out.data(), n);
  return out;
}

void clamp(std::span<double> pos, const SearchSpace& space) {
  kernels::active().clamp(pos.data(), space.lower.data(), space.upper.data(), pos.size());
}

double sanitize_fitness(double f) noexcept {
  return std::isnan(f) ? std::numeric_limits<double>::infinity() : f;
}

std::uint64_t evaluate_and_rank(SwarmState& state, const Objective& objective, Rng& rng,
                                int threads) {
  const std::size_t n = state.n_agents;
  const auto workers = static_cast<std::size_t>(std::max(1, threads));
  if (objective.stochastic || workers == 1 || n < 2 * workers) {
    evaluate_range(state, objective, rng, 0, n);
  } else {
    // Deterministic objectives never touch the stream, so sharing it is inert.
    std::vector<std::jthread> pool;
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t b = 0; b < n; b += chunk) {
      pool.emplace_back([&, b] { evaluate_range(state, objective, rng, b, std::min(n, b + chunk)); });
    }
  }
  for (std::size_t i = 0; i < n; ++i) fold_into_leaders(state, i);
  return n;
}

double inertia_weight(const GwoConfig& cfg, int iter) {
  if (!uses_curve(cfg.variant)) return 1.0;
  const double ww = cauchy_inertia(iter, cfg.max_iter, cfg.inertia);
  if (cfg.inertia_scaling == InertiaScaling::literal) return ww;
  return ww / cauchy_inertia(0, cfg.max_iter, cfg.inertia);
}

LeaderWeights leader_weights(const GwoConfig& cfg, const SwarmState& state, double f_avg) {
  if (!uses_leader_weights(cfg.variant)) return {};
  return {leader_weight(state.leaders[0].score, f_avg, cfg.leader),
          leader_weight(state.leaders[1].score, f_avg, cfg.leader),
          leader_weight(state.leaders[2].score, f_avg, cfg.leader)};
}

RunResult run(const Objective& objective, const SearchSpace& space, const GwoConfig& cfg) {
  Rng rng(cfg.seed);
  SwarmState state = initialize(space, cfg, rng);
  const std::size_t dim = state.dim;
  const auto& k = kernels::active();

  RunResult result;
  result.history.reserve(static_cast<std::size_t>(cfg.max_iter));

  std::vector<double> r1(dim), r2(dim), next(state.positions.size());
  std::array<std::vector<double>, 3> cand;
  for (auto& c : cand) c.resize(dim);

  for (int iter = 0; iter < cfg.max_iter; ++iter) {
    state.iter = iter;
    result.evaluations += evaluate_and_rank(state, objective, rng, cfg.threads);

    double f_avg = 0.0;
    for (double f : state.fitness) f_avg += f;
    f_avg /= static_cast<double>(state.n_agents);

    const double wa = control_wa(iter, cfg.max_iter);
    const double ww = inertia_weight(cfg, iter);
    LeaderWeights fi = leader_weights(cfg, state, f_avg);
    if (!((fi.alpha + fi.beta) + fi.delta > 0.0)) {
      throw std::logic_error("leader weights must sum to a positive value");
    }
    double denom = (fi.alpha + fi.beta) + fi.delta;
    if (uses_leader_weights(cfg.variant) && cfg.leader_combination == LeaderCombination::scaled) {
      fi = {fi.alpha / cfg.leader.d, fi.beta / cfg.leader.d, fi.delta / cfg.leader.d};
      denom = 3.0;
    }

    for (std::size_t i = 0; i < state.n_agents; ++i) {
      const double* wolf = state.positions.data() + i * dim;
      for (std::size_t l = 0; l < 3; ++l) {
        for (std::size_t j = 0; j < dim; ++j) {
          r1[j] = rng.uniform();
          r2[j] = rng.uniform();
        }
        k.leader_candidate(state.leaders[l].position.data(), wolf, r1.data(), r2.data(), wa, ww,
                           cfg.abs_displacement, cand[l].data(), dim);
      }
      double* out = next.data() + i * dim;
      k.combine3(cand[0].data(), cand[1].data(), cand[2].data(), fi.alpha, fi.beta, fi.delta,
                 denom, out, dim);
      k.clamp(out, space.lower.data(), space.upper.data(), dim);
    }
    state.positions.swap(next);
    result.history.push_back(state.alpha().score);
  }

  result.best_position = state.alpha().position;
  result.best_score = state.alpha().score;
  return result;
}

void PsoConfig::validate() const {
  if (n_particles < 1) throw ConfigError("n_particles must be >= 1");
  if (max_iter < 1) throw ConfigError("max_iter must be >= 1");
  if (!(w_max >= w_min)) throw ConfigError("PSO requires w_max >= w_min");
  if (!(velocity_clamp > 0.0)) throw ConfigError("velocity_clamp must be > 0");
}

RunResult pso_run(const Objective& objective, const SearchSpace& space, const PsoConfig& cfg) {
  space.validate();
  cfg.validate();
  Rng rng(cfg.seed);
  const std::size_t n = static_cast<std::size_t>(cfg.n_particles);
  const std::size_t dim = space.dim();

  std::vector<double> x(n * dim), v(n * dim, 0.0), pbest(n * dim), vmax(dim);
  std::vector<double> pbest_score(n, std::numeric_limits<double>::infinity());
  for (std::size_t j = 0; j < dim; ++j) vmax[j] = cfg.velocity_clamp * (space.upper[j] - space.lower[j]);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      x[i * dim + j] = rng.uniform(space.lower[j], space.upper[j]);
    }
  }

  RunResult result;
  result.history.reserve(static_cast<std::size_t>(cfg.max_iter));
  std::vector<double> gbest;

  for (int iter = 0; iter < cfg.max_iter; ++iter) {
    for (std::size_t i = 0; i < n; ++i) {
      std::span<const double> xi(x.data() + i * dim, dim);
      const double f = sanitize_fitness(objective.eval(xi, rng));
      ++result.evaluations;
      if (f < pbest_score[i]) {
        pbest_score[i] = f;
        std::copy(xi.begin(), xi.end(), pbest.begin() + static_cast<std::ptrdiff_t>(i * dim));
      }
      if (f < result.best_score || gbest.empty()) {
        result.best_score = f;
        gbest.assign(xi.begin(), xi.end());
      }
    }
    result.history.push_back(result.best_score);

    const double w = cfg.max_iter > 1
                         ? cfg.w_max - (cfg.w_max - cfg.w_min) * static_cast<double>(iter) /
                                           static_cast<double>(cfg.max_iter - 1)
                         : cfg.w_max;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < dim; ++j) {
        const std::size_t ij = i * dim + j;
        const double r1 = rng.uniform();
        const double r2 = rng.uniform();
        double vel = w * v[ij] + cfg.c1 * r1 * (pbest[ij] - x[ij]) + cfg.c2 * r2 * (gbest[j] - x[ij]);
        vel = std::clamp(vel, -vmax[j], vmax[j]);
        v[ij] = vel;
        x[ij] = std::clamp(x[ij] + vel, space.lower[j], space.upper[j]);
      }
    }
  }
  result.best_position = gbest;
  return result;
}

}  // namespace lupus
