#pragma once

// Sweeps algorithm x function x dimension x run over the benchmark registry
// and aggregates the final best scores.

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lupus/optimizer.hpp"

namespace lupus::harness {

inline constexpr int kBenchAgents = 40;
inline constexpr int kBenchIterations = 500;
inline constexpr int kDefaultRuns = 10;

struct AlgorithmSpec {
  std::string name;  // gwo, cgwo, agwo, acgwo or pso
  GwoConfig gwo;     // used unless name == "pso"
  PsoConfig pso;

  bool is_pso() const noexcept { return name == "pso"; }
};

/// Throws ConfigError for unknown names. Seeds are filled in per run.
AlgorithmSpec make_algorithm(std::string_view name, int n_agents = kBenchAgents,
                             int max_iter = kBenchIterations);

struct ExperimentPlan {
  std::vector<AlgorithmSpec> algorithms;
  std::vector<std::string> functions;
  std::vector<std::size_t> dims;
  int n_runs = kDefaultRuns;
  std::uint64_t base_seed = 0;
  /// Worker threads over (cell, run) tasks. Results do not depend on it.
  int workers = 1;

  /// Throws ConfigError on unknown ids, empty lists or bad counts.
  void validate() const;
};

std::uint64_t run_seed(std::uint64_t base_seed, std::string_view algorithm,
                       std::string_view function, std::size_t dim, int run);

struct RunRecord {
  std::string algorithm;
  std::string function;
  std::size_t dim = 0;
  int run = 0;
  std::uint64_t seed = 0;
  RunResult result;

  friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

struct StatRow {
  std::string algorithm;
  std::string function;
  std::size_t dim = 0;
  double mean = 0.0;
  double std = 0.0;  // population (divisor n_runs)
  int n_runs = 0;

  friend bool operator==(const StatRow&, const StatRow&) = default;
};

struct PlanResult {
  std::vector<StatRow> rows;   // plan order: algorithm, function, dim
  std::vector<RunRecord> runs; // same order, runs consecutive
};

StatRow summarize(std::string_view algorithm, std::string_view function, std::size_t dim,
                  std::span<const double> finals);

PlanResult run_plan(const ExperimentPlan& plan);

/// Header algorithm,function,dim,mean,std,n_runs; mean/std as "7.49E+02".
std::string table_csv(std::span<const StatRow> rows);
/// Throws ConfigError (and writes nothing) for empty rows, IoError on failure.
void export_table(std::span<const StatRow> rows, const std::filesystem::path& path);

/// Columns iter,alpha_score with iter counted from 0.
std::string convergence_csv(std::span<const double> history);
std::filesystem::path convergence_path(const std::filesystem::path& dir, const RunRecord& r);
/// One file per run under `dir`; returns the paths written.
std::vector<std::filesystem::path> export_convergence(std::span<const RunRecord> runs,
                                                      const std::filesystem::path& dir);

}  // namespace lupus::harness
