#include "commands.hpp"

#include <filesystem>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "lupus/benchfns.hpp"
#include "lupus/curves.hpp"
#include "lupus/dataprep.hpp"
#include "lupus/error.hpp"
#include "lupus/format.hpp"
#include "lupus/harness.hpp"
#include "lupus/io.hpp"
#include "lupus/metrics.hpp"
#include "lupus/mlp.hpp"
#include "lupus/model.hpp"
#include "lupus/rng.hpp"

namespace lupus::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Config file: one JSON object per subcommand, keyed by long flag names, e.g.
// {"train": {"agents": 50, "mode": "bp"}, "bench": {"dims": [30, 100]}}.
class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App*, bool, bool, std::string) const override { return "{}"; }

  std::vector<CLI::ConfigItem> from_config(std::istream& in) const override {
    json j;
    try {
      j = json::parse(in);
    } catch (const json::parse_error& e) {
      throw CLI::ConversionError(std::string("config file: ") + e.what());
    }
    if (!j.is_object()) throw CLI::ConversionError("config file: top level must be an object");
    std::vector<CLI::ConfigItem> items;
    collect(j, "", {}, items);
    return items;
  }

 private:
  static std::string scalar(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

  static void collect(const json& j, const std::string& name, std::vector<std::string> parents,
                      std::vector<CLI::ConfigItem>& items) {
    if (j.is_object()) {
      if (!name.empty()) parents.push_back(name);
      for (auto it = j.begin(); it != j.end(); ++it) collect(*it, it.key(), parents, items);
      return;
    }
    if (parents.empty()) {
      throw CLI::ConversionError("config file: '" + name +
                                 "' must sit inside a subcommand section such as \"train\"");
    }
    CLI::ConfigItem item;
    item.name = name;
    item.parents = parents;
    if (j.is_array()) {
      for (const auto& v : j) item.inputs.push_back(scalar(v));
    } else if (j.is_boolean()) {
      item.inputs = {j.get<bool>() ? "true" : "false"};
    } else {
      item.inputs = {scalar(j)};
    }
    items.push_back(std::move(item));
  }
};

std::string metric_line(std::string_view label, const metrics::EvalReport& r) {
  return std::string(label) + " ACC=" + format_real(r.accuracy) + " AUC=" + format_real(r.auc) +
         " PRE=" + format_real(r.precision) + " Recall=" + format_real(r.recall) +
         " F1=" + format_real(r.f1);
}

std::string eval_csv(const metrics::EvalReport& r) {
  return metrics::csv_header() + "\n" + metrics::to_csv_row(r) + "\n";
}

// Optimizer flags shared by bench and train.
struct GwoSettings {
  int agents;
  int iters;
  std::vector<double> ww{1.0, 0.0, 2.0, 1.7};
  std::vector<double> fi{1.0, 0.0, 2.0, 2.1};
  std::string inertia_scaling = "peak";
  std::string combination = "scaled";
  bool abs_displacement = true;

  GwoSettings(int a, int i) : agents(a), iters(i) {}

  void add_to(CLI::App* sub) {
    sub->add_option("--agents", agents, "Swarm size")->check(CLI::PositiveNumber);
    sub->add_option("--iters", iters, "Iterations per run")->check(CLI::PositiveNumber);
    sub->add_option("--ww", ww, "Inertia curve a,b,c,d")->expected(4)->delimiter(',');
    sub->add_option("--fi", fi, "Leader weight curve a,b,c,d")->expected(4)->delimiter(',');
    sub->add_option("--inertia-scaling", inertia_scaling, "peak (ww/ww(0)) or literal")
        ->check(CLI::IsMember({"peak", "literal"}));
    sub->add_option("--leader-combination", combination, "scaled or normalized")
        ->check(CLI::IsMember({"scaled", "normalized"}));
    sub->add_option("--abs-displacement", abs_displacement, "Use D = |C L - X|");
  }

  GwoConfig config(Variant v, std::uint64_t seed) const {
    GwoConfig c;
    c.variant = v;
    c.n_agents = agents;
    c.max_iter = iters;
    c.inertia = {ww[0], ww[1], ww[2], ww[3]};
    c.leader = {fi[0], fi[1], fi[2], fi[3]};
    c.inertia_scaling = parse_inertia_scaling(inertia_scaling);
    c.leader_combination = parse_leader_combination(combination);
    c.abs_displacement = abs_displacement;
    c.seed = seed;
    c.validate();
    return c;
  }
};

struct DataFlags {
  std::string path = "data/heart.csv";
  double train_fraction = 0.7;
  bool impute = false;
  bool one_hot = false;

  void add_to(CLI::App* sub, bool with_split) {
    sub->add_option("--data", path, "Heart-disease CSV (14 columns, optional header)");
    if (with_split) {
      sub->add_option("--train-fraction", train_fraction, "Training share per class")
          ->check(CLI::Range(0.0, 1.0));
    }
    sub->add_flag("--impute", impute, "Fill missing cells with the column mode instead of dropping rows [off]");
    sub->add_flag("--one-hot", one_hot, "Expand cp, restecg, slope and thal into indicators [off]");
  }

  data::CleanOptions clean_options() const {
    return {impute ? data::MissingPolicy::impute_mode : data::MissingPolicy::drop, one_hot};
  }
};

// ---- bench -----------------------------------------------------------------

struct BenchArgs {
  GwoSettings gwo{harness::kBenchAgents, harness::kBenchIterations};
  std::vector<std::string> algs{"gwo", "cgwo", "agwo", "acgwo", "pso"};
  std::vector<std::string> functions{"f1", "f2", "f3", "f4", "f5", "f6"};
  std::vector<std::size_t> dims{30};
  int runs = harness::kDefaultRuns;
  std::uint64_t seed = 0;
  int workers = 1;
  std::string out_dir = "results";
  bool convergence = true;
};

int cmd_bench(const BenchArgs& a, std::ostream& out) {
  harness::ExperimentPlan plan;
  for (const auto& name : a.algs) {
    auto alg = harness::make_algorithm(name, a.gwo.agents, a.gwo.iters);
    if (!alg.is_pso()) alg.gwo = a.gwo.config(alg.gwo.variant, 0);
    plan.algorithms.push_back(alg);
  }
  plan.functions = a.functions;
  plan.dims = a.dims;
  plan.n_runs = a.runs;
  plan.base_seed = a.seed;
  plan.workers = a.workers;

  const auto result = harness::run_plan(plan);
  const fs::path dir = a.out_dir;
  if (a.convergence) harness::export_convergence(result.runs, dir / "convergence");
  json meta = {{"std", "population"},       {"n_runs", a.runs},
               {"base_seed", a.seed},       {"agents", a.gwo.agents},
               {"iters", a.gwo.iters},      {"algorithms", a.algs},
               {"functions", a.functions},  {"dims", a.dims},
               {"inertia_scaling", a.gwo.inertia_scaling},
               {"leader_combination", a.gwo.combination}};
  write_file_atomic(dir / "table.meta.json", meta.dump(2) + "\n");
  harness::export_table(result.rows, dir / "table.csv");
  out << harness::table_csv(result.rows);
  return 0;
}

// ---- curves ----------------------------------------------------------------

struct CurvesArgs {
  int iters = 1000;
  std::vector<double> ww{1.0, 0.0, 2.0, 1.7};
  std::vector<double> fi{1.0, 0.0, 2.0, 2.1};
  std::string out = "results/curves.csv";
};

int cmd_curves(const CurvesArgs& a, std::ostream& out) {
  const CurveParams ww{a.ww[0], a.ww[1], a.ww[2], a.ww[3]};
  const CurveParams fi{a.fi[0], a.fi[1], a.fi[2], a.fi[3]};
  ww.validate();
  fi.validate();
  if (a.iters <= 0) throw ConfigError("--iters must be positive");
  std::ostringstream s;
  s << "iter,wa,ww,fi_unit_ratio\n";
  const double fi_unit = leader_weight(1.0, 1.0, fi);
  for (int t = 0; t <= a.iters; ++t) {
    s << t << ',' << format_real(control_wa(t, a.iters)) << ','
      << format_real(cauchy_inertia(t, a.iters, ww)) << ',' << format_real(fi_unit) << '\n';
  }
  write_file_atomic(a.out, s.str());
  out << "wrote " << a.iters + 1 << " rows to " << a.out << '\n';
  return 0;
}

// ---- eda -------------------------------------------------------------------

struct EdaArgs {
  DataFlags data;
  std::string clean_out = "data/clean.csv";
  std::string out = "results/corr.csv";
};

int cmd_eda(const EdaArgs& a, std::ostream& out) {
  const auto raw = data::load_table(a.data.path);
  const auto ds = data::clean(raw, a.data.clean_options());
  const auto corr = data::pearson_corr_matrix(ds, true);
  write_file_atomic(a.clean_out, data::to_csv(ds));
  write_file_atomic(a.out, data::to_csv(corr));
  out << raw.rows.size() << " rows read, " << ds.size() << " kept; " << corr.r.rows << "x"
      << corr.r.cols << " correlation matrix written to " << a.out << '\n';
  return 0;
}

// ---- train / eval ----------------------------------------------------------

struct Prepared {
  data::Dataset all;
  data::Split split;
};

Prepared prepare(const std::string& path, const DataSettings& s) {
  Prepared p;
  p.all = data::clean(data::load_table(path), s.clean_options());
  p.split = data::stratified_split(p.all, s.train_fraction, s.split_seed);
  return p;
}

struct TrainArgs {
  GwoSettings gwo{100, 1000};
  DataFlags data;
  std::string mode = "hybrid";
  std::vector<std::size_t> hidden{16};
  double lo = -5.0;
  double hi = 5.0;
  int epochs = mlp::BpConfig{}.epochs;
  double lr = mlp::BpConfig{}.learning_rate;
  double threshold = 0.5;
  std::uint64_t seed = 0;
  int threads = 1;
  std::string model = "results/model.json";
  std::string report = "results/train_report.json";
};

int cmd_train(const TrainArgs& a, std::ostream& out) {
  const auto mode = mlp::parse_train_mode(a.mode == "acgwo-bp" ? "hybrid" : a.mode);
  if (!(a.threshold > 0.0 && a.threshold < 1.0)) throw ConfigError("--threshold must lie in (0, 1)");
  if (!(a.lo < a.hi)) throw ConfigError("--lo must be below --hi");

  DataSettings ds;
  ds.train_fraction = a.data.train_fraction;
  ds.split_seed = hash_combine(a.seed, "split");
  ds.impute = a.data.impute;
  ds.one_hot = a.data.one_hot;
  const auto prep = prepare(a.data.path, ds);

  Model m;
  m.data = ds;
  m.threshold = a.threshold;
  m.feature_names = prep.all.feature_names;
  m.arch.layer_sizes = {prep.all.features()};
  m.arch.layer_sizes.insert(m.arch.layer_sizes.end(), a.hidden.begin(), a.hidden.end());
  m.arch.layer_sizes.push_back(1);
  m.arch.validate();
  m.stats = data::fit_standardizer(prep.split.train.X, prep.split.train.feature_names);
  const auto Xtr = data::apply_standardizer(m.stats, prep.split.train.X);
  const auto& ytr = prep.split.train.y;

  auto gcfg = a.gwo.config(Variant::acgwo, hash_combine(a.seed, "optimizer"));
  gcfg.threads = a.threads;
  const mlp::BpConfig bp{a.epochs, a.lr};
  const mlp::Bounds bounds{a.lo, a.hi};
  mlp::TrainReport rep;
  switch (mode) {
    case mlp::TrainMode::acgwo: rep = mlp::train_acgwo(m.arch, Xtr, ytr, gcfg, bounds); break;
    case mlp::TrainMode::bp:
      rep = mlp::train_bp(m.arch, Xtr, ytr, mlp::initial_params(m.arch, hash_combine(a.seed, "init")), bp);
      break;
    case mlp::TrainMode::hybrid: rep = mlp::train_hybrid(m.arch, Xtr, ytr, gcfg, bounds, bp); break;
  }
  m.params = rep.params;
  m.training = {{"mode", to_string(mode)}, {"seed", a.seed},
                {"agents", a.gwo.agents},  {"iters", a.gwo.iters},
                {"epochs", a.epochs},      {"learning_rate", a.lr},
                {"bounds", {a.lo, a.hi}},  {"inertia_scaling", a.gwo.inertia_scaling},
                {"leader_combination", a.gwo.combination}};

  const auto train_eval =
      metrics::evaluate(ytr, m.probabilities(prep.split.train.X), m.threshold);
  const auto test_eval =
      metrics::evaluate(prep.split.test.y, m.probabilities(prep.split.test.X), m.threshold);

  json report = {{"mode", to_string(mode)},
                 {"swarm_iterations", rep.swarm_iterations},
                 {"loss_history", rep.loss_history},
                 {"train_rows", prep.split.train.size()},
                 {"test_rows", prep.split.test.size()},
                 {"train", metrics::to_json(train_eval)},
                 {"test", metrics::to_json(test_eval)}};
  save_model(m, a.model);
  write_file_atomic(a.report, report.dump(2) + "\n");
  out << metric_line("train", train_eval) << '\n' << metric_line("test", test_eval) << '\n';
  return 0;
}

struct EvalArgs {
  std::string model = "results/model.json";
  std::string data = "data/heart.csv";
  std::string split = "test";
  std::string out = "results/eval.json";
  std::string csv = "results/eval.csv";
};

int cmd_eval(const EvalArgs& a, std::ostream& out) {
  const Model m = load_model(a.model);
  const auto prep = prepare(a.data, m.data);
  if (prep.all.features() != m.arch.inputs()) {
    throw DataError("model expects " + std::to_string(m.arch.inputs()) + " features, " + a.data +
                    " yields " + std::to_string(prep.all.features()));
  }
  const data::Dataset& part = a.split == "train" ? prep.split.train
                              : a.split == "test" ? prep.split.test
                                                  : prep.all;
  const auto r = metrics::evaluate(part.y, m.probabilities(part.X), m.threshold);
  auto j = metrics::to_json(r);
  j["split"] = a.split;
  j["rows"] = part.size();
  write_file_atomic(a.out, j.dump(2) + "\n");
  write_file_atomic(a.csv, eval_csv(r));
  out << metric_line(a.split, r) << '\n';
  return 0;
}

void add_seed(CLI::App* sub, std::uint64_t& seed) {
  sub->add_option("--seed", seed, "Master seed (env LUPUS_SEED)")->envname("LUPUS_SEED");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Adaptive Cauchy grey wolf optimizer: benchmarks and heart-disease classifier.\n"
               "Precedence: command-line flags > --config JSON > LUPUS_SEED > built-in defaults.",
               "lupus"};
  app.option_defaults()->always_capture_default();
  app.config_formatter(std::make_shared<JsonConfig>());
  app.set_config("--config", "", "JSON file with one section per subcommand");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1);
  app.fallthrough();

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "Benchmark sweep: writes table.csv and convergence series");
  bench.gwo.add_to(b);
  b->add_option("--algs", bench.algs, "Algorithms (gwo, cgwo, agwo, acgwo, pso)")->delimiter(',');
  b->add_option("--functions", bench.functions, "Benchmark ids (f1-f6, f5r)")->delimiter(',');
  b->add_option("--dims", bench.dims, "Dimensions")->delimiter(',');
  b->add_option("--runs", bench.runs, "Independent runs per cell")->check(CLI::PositiveNumber);
  add_seed(b, bench.seed);
  b->add_option("--workers", bench.workers, "Worker threads")->check(CLI::PositiveNumber);
  b->add_option("--out", bench.out_dir, "Output directory");
  b->add_option("--convergence", bench.convergence, "Write per-run convergence series");

  CurvesArgs curves;
  auto* c = app.add_subcommand("curves", "Dump wa, ww and the unit-ratio leader weight per iteration");
  c->add_option("--iters", curves.iters, "Iterations");
  c->add_option("--ww", curves.ww, "Inertia curve a,b,c,d")->expected(4)->delimiter(',');
  c->add_option("--fi", curves.fi, "Leader weight curve a,b,c,d")->expected(4)->delimiter(',');
  c->add_option("--out", curves.out, "Output CSV");

  EdaArgs eda;
  auto* e = app.add_subcommand("eda", "Clean the dataset and write the Pearson correlation matrix");
  eda.data.add_to(e, false);
  e->add_option("--clean-out", eda.clean_out, "Cleaned dataset CSV");
  e->add_option("--out", eda.out, "Correlation matrix CSV");

  TrainArgs train;
  auto* t = app.add_subcommand("train", "Train the classifier and save the model");
  train.gwo.add_to(t);
  train.data.add_to(t, true);
  t->add_option("--mode", train.mode, "acgwo, bp or hybrid (alias acgwo-bp)")
      ->check(CLI::IsMember({"acgwo", "bp", "hybrid", "acgwo-bp"}));
  t->add_option("--hidden", train.hidden, "Hidden layer sizes")->delimiter(',');
  t->add_option("--lo", train.lo, "Lower weight bound for the swarm");
  t->add_option("--hi", train.hi, "Upper weight bound for the swarm");
  t->add_option("--epochs", train.epochs, "Gradient steps after the swarm (or alone in bp mode)")
      ->check(CLI::NonNegativeNumber);
  t->add_option("--lr", train.lr, "Gradient step size");
  t->add_option("--threshold", train.threshold, "Decision threshold");
  add_seed(t, train.seed);
  t->add_option("--threads", train.threads, "Threads for swarm loss evaluation")
      ->check(CLI::PositiveNumber);
  t->add_option("--model", train.model, "Model output JSON");
  t->add_option("--report", train.report, "Training report JSON");

  EvalArgs ev;
  auto* v = app.add_subcommand("eval", "Evaluate a saved model on its recorded split");
  v->add_option("--model", ev.model, "Model JSON");
  v->add_option("--data", ev.data, "Heart-disease CSV");
  v->add_option("--split", ev.split, "test, train or all")->check(CLI::IsMember({"test", "train", "all"}));
  v->add_option("--out", ev.out, "Metrics JSON");
  v->add_option("--csv", ev.csv, "Metrics CSV (ACC,AUC,PRE,Recall,F1)");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& pe) {
    const int code = app.exit(pe, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*b) return cmd_bench(bench, out);
    if (*c) return cmd_curves(curves, out);
    if (*e) return cmd_eda(eda, out);
    if (*t) return cmd_train(train, out);
    if (*v) return cmd_eval(ev, out);
  } catch (const ConfigError& x) {
    err << "configuration error: " << x.what() << '\n';
    return 1;
  } catch (const DataError& x) {
    err << "data error: " << x.what() << '\n';
    return 2;
  } catch (const IoError& x) {
    err << "i/o error: " << x.what() << '\n';
    return 2;
  } catch (const std::exception& x) {
    err << "internal error: " << x.what() << '\n';
    return 3;
  }
  return 3;
}

}  // namespace lupus::cli
