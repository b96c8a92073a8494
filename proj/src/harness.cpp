#include "lupus/harness.hpp"

#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

#include "lupus/benchfns.hpp"
#include "lupus/error.hpp"
#include "lupus/format.hpp"
#include "lupus/io.hpp"
#include "lupus/rng.hpp"

namespace lupus::harness {

AlgorithmSpec make_algorithm(std::string_view name, int n_agents, int max_iter) {
  AlgorithmSpec a;
  if (name == "pso") {
    a.name = "pso";
    a.pso.n_particles = n_agents;
    a.pso.max_iter = max_iter;
    a.pso.validate();
    return a;
  }
  a.gwo.variant = parse_variant(name);
  a.name = std::string(to_string(a.gwo.variant));
  a.gwo.n_agents = n_agents;
  a.gwo.max_iter = max_iter;
  a.gwo.validate();
  return a;
}

void ExperimentPlan::validate() const {
  if (algorithms.empty() || functions.empty() || dims.empty())
    throw ConfigError("plan needs at least one algorithm, function and dimension");
  if (n_runs < 1) throw ConfigError("n_runs must be >= 1");
  if (workers < 1) throw ConfigError("workers must be >= 1");
  for (const auto& a : algorithms) {
    if (a.is_pso()) a.pso.validate();
    else a.gwo.validate();
  }
  for (const auto& f : functions) {
    const auto& fn = bench::lookup(f);
    for (auto d : dims) {
      if (d == 0) throw ConfigError("dimensions must be positive");
      if (fn.id == "f4" && d < 2) throw ConfigError("f4 needs dimension >= 2");
    }
  }
}

std::uint64_t run_seed(std::uint64_t base_seed, std::string_view algorithm,
                       std::string_view function, std::size_t dim, int run) {
  std::uint64_t s = hash_combine(base_seed, algorithm);
  s = hash_combine(s, function);
  s = hash_combine(s, static_cast<std::uint64_t>(dim));
  return hash_combine(s, static_cast<std::uint64_t>(run));
}

StatRow summarize(std::string_view algorithm, std::string_view function, std::size_t dim,
                  std::span<const double> finals) {
  if (finals.empty()) throw ConfigError("cannot summarize zero runs");
  StatRow row{std::string(algorithm), std::string(function), dim, 0.0, 0.0,
              static_cast<int>(finals.size())};
  const double n = static_cast<double>(finals.size());
  double sum = 0.0;
  for (double f : finals) sum += f;
  row.mean = sum / n;
  double ss = 0.0;
  for (double f : finals) ss += (f - row.mean) * (f - row.mean);
  row.std = std::sqrt(ss / n);
  return row;
}

PlanResult run_plan(const ExperimentPlan& plan) {
  plan.validate();

  PlanResult out;
  for (const auto& a : plan.algorithms)
    for (const auto& f : plan.functions)
      for (auto d : plan.dims)
        for (int r = 0; r < plan.n_runs; ++r)
          out.runs.push_back({a.name, f, d, r, run_seed(plan.base_seed, a.name, f, d, r), {}});

  // Task k belongs to algorithm k / (runs per algorithm).
  const std::size_t per_alg = plan.functions.size() * plan.dims.size() * plan.n_runs;
  auto execute = [&](std::size_t k) {
    auto& rec = out.runs[k];
    const auto& alg = plan.algorithms[k / per_alg];
    const auto& fn = bench::lookup(rec.function);
    const auto space = fn.space(rec.dim);
    if (alg.is_pso()) {
      auto cfg = alg.pso;
      cfg.seed = rec.seed;
      rec.result = pso_run(fn.objective(), space, cfg);
    } else {
      auto cfg = alg.gwo;
      cfg.seed = rec.seed;
      cfg.threads = 1;
      rec.result = run(fn.objective(), space, cfg);
    }
  };

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < out.runs.size();) execute(k);
  };
  {
    std::vector<std::jthread> pool;
    for (int w = 1; w < plan.workers; ++w) pool.emplace_back(worker);
    worker();
  }

  std::vector<double> finals;
  for (std::size_t start = 0; start < out.runs.size(); start += plan.n_runs) {
    finals.clear();
    for (int r = 0; r < plan.n_runs; ++r) finals.push_back(out.runs[start + r].result.best_score);
    const auto& first = out.runs[start];
    out.rows.push_back(summarize(first.algorithm, first.function, first.dim, finals));
  }
  return out;
}

std::string table_csv(std::span<const StatRow> rows) {
  std::ostringstream s;
  s << "algorithm,function,dim,mean,std,n_runs\n";
  for (const auto& r : rows) {
    s << r.algorithm << ',' << r.function << ',' << r.dim << ',' << format_sci2(r.mean) << ','
      << format_sci2(r.std) << ',' << r.n_runs << '\n';
  }
  return s.str();
}

void export_table(std::span<const StatRow> rows, const std::filesystem::path& path) {
  if (rows.empty()) throw ConfigError("no result rows to export");
  write_file_atomic(path, table_csv(rows));
}

std::string convergence_csv(std::span<const double> history) {
  std::ostringstream s;
  s << "iter,alpha_score\n";
  for (std::size_t i = 0; i < history.size(); ++i) s << i << ',' << format_real(history[i]) << '\n';
  return s.str();
}

std::filesystem::path convergence_path(const std::filesystem::path& dir, const RunRecord& r) {
  return dir / (r.algorithm + "_" + r.function + "_" + std::to_string(r.dim) + "_" +
                std::to_string(r.run) + ".csv");
}

std::vector<std::filesystem::path> export_convergence(std::span<const RunRecord> runs,
                                                      const std::filesystem::path& dir) {
  if (runs.empty()) throw ConfigError("no convergence histories to export");
  std::vector<std::filesystem::path> written;
  for (const auto& r : runs) {
    written.push_back(convergence_path(dir, r));
    write_file_atomic(written.back(), convergence_csv(r.result.history));
  }
  return written;
}

}  // namespace lupus::harness
