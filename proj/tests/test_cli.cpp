#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "doctest.h"
#include "json.hpp"
#include "lupus/io.hpp"

using namespace lupus;
namespace fs = std::filesystem;

namespace {

const std::string kHeart = std::string(LUPUS_DATA_DIR) + "/heart.csv";

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome lupus_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("lupus_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(read_file(p));
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) cells.push_back(c);
    rows.push_back(cells);
  }
  return rows;
}

// 14-column rows whose label is decided by the sign of (age - 50).
std::string separable_table() {
  std::string s = "age,sex,cp,trestbps,chol,fbs,restecg,thalach,exang,oldpeak,slope,ca,thal,target\n";
  for (int i = 0; i < 60; ++i) {
    const int age = i < 30 ? 30 + i % 15 : 56 + i % 15;
    const int thal[3] = {3, 6, 7};
    s += std::to_string(age) + "," + std::to_string(i % 2) + "," + std::to_string(1 + i % 4) + "," +
         std::to_string(120 + i % 7) + "," + std::to_string(200 + i % 11) + "," +
         std::to_string((i / 3) % 2) + "," + std::to_string(i % 3) + "," +
         std::to_string(140 + i % 13) + "," + std::to_string((i / 2) % 2) + "," +
         std::to_string(i % 4) + ".5," + std::to_string(1 + i % 3) + "," + std::to_string(i % 3) +
         "," + std::to_string(thal[i % 3]) + "," + (i < 30 ? "0" : "1") + "\n";
  }
  return s;
}

std::vector<std::string> quick_train(const fs::path& dir, const std::string& tag) {
  return {"train",    "--data",  kHeart, "--agents", "12", "--iters", "20", "--epochs", "15",
          "--model",  (dir / (tag + "_model.json")).string(),
          "--report", (dir / (tag + "_report.json")).string()};
}

}  // namespace

TEST_CASE("bench writes one row per cell and reruns byte-identically") {
  const auto dir = scratch("bench");
  auto args = std::vector<std::string>{"bench", "--functions", "f1", "--dims", "30", "--algs",
                                       "gwo,acgwo", "--runs", "10", "--seed", "42", "--out",
                                       (dir / "a").string()};
  const auto first = lupus_cli(args);
  REQUIRE(first.code == 0);
  const auto table = read_csv(dir / "a" / "table.csv");
  REQUIRE(table.size() == 3);
  CHECK(table[0] == std::vector<std::string>{"algorithm", "function", "dim", "mean", "std", "n_runs"});
  CHECK(table[1][0] == "gwo");
  CHECK(table[2][0] == "acgwo");
  CHECK(fs::exists(dir / "a" / "convergence" / "acgwo_f1_30_9.csv"));
  CHECK(nlohmann::json::parse(read_file(dir / "a" / "table.meta.json"))["std"] == "population");

  args.back() = (dir / "b").string();
  REQUIRE(lupus_cli(args).code == 0);
  CHECK(read_file(dir / "a" / "table.csv") == read_file(dir / "b" / "table.csv"));
  CHECK(read_file(dir / "a" / "convergence" / "gwo_f1_30_3.csv") ==
        read_file(dir / "b" / "convergence" / "gwo_f1_30_3.csv"));

  const auto bad = lupus_cli({"bench", "--functions", "f9", "--out", (dir / "c").string()});
  CHECK(bad.code == 1);
  CHECK(bad.err.find("f9") != std::string::npos);
  CHECK_FALSE(fs::exists(dir / "c" / "table.csv"));
  fs::remove_all(dir);
}

TEST_CASE("curves dump") {
  const auto dir = scratch("curves");
  const auto out = (dir / "curves.csv").string();
  REQUIRE(lupus_cli({"curves", "--out", out}).code == 0);
  const auto rows = read_csv(out);
  REQUIRE(rows.size() == 1002);
  CHECK(rows[0] == std::vector<std::string>{"iter", "wa", "ww", "fi_unit_ratio"});
  CHECK(std::stod(rows[1][2]) == doctest::Approx(2.336620).epsilon(1e-6));
  CHECK(std::stod(rows[1001][1]) == 0.0);
  for (std::size_t i = 2; i < rows.size(); ++i) CHECK(std::stod(rows[i][2]) < std::stod(rows[i - 1][2]));

  CHECK(lupus_cli({"curves", "--ww", "0,0,2,1.7", "--out", out}).code == 1);
  CHECK(lupus_cli({"curves", "--iters", "0", "--out", out}).code == 1);
  fs::remove_all(dir);
}

TEST_CASE("eda writes the correlation matrix") {
  const auto dir = scratch("eda");
  const auto corr = dir / "corr.csv";
  const auto clean = dir / "clean.csv";
  const auto r = lupus_cli({"eda", "--data", kHeart, "--out", corr.string(), "--clean-out", clean.string()});
  REQUIRE(r.code == 0);
  const auto m = read_csv(corr);
  REQUIRE(m.size() == 15);
  CHECK(m[0].size() == 15);
  CHECK(m[14][0] == "target");
  CHECK(m[0][14] == "target");
  for (std::size_t i = 1; i < 15; ++i) {
    CHECK(m[i][i] == "1");
    for (std::size_t j = 1; j < 15; ++j) CHECK(m[i][j] == m[j][i]);
  }
  CHECK(read_csv(clean).size() == 298);

  std::string flat = "63,1,1,145,233,1,2,150,0,2.3,3,0,6,0\n";
  for (int i = 0; i < 5; ++i)
    flat += std::to_string(40 + i) + ",1,1,145," + std::to_string(200 + i) + ",1,2,150,0,2.3,3,0,6," +
            std::to_string(i % 2) + "\n";
  write_file_atomic(dir / "flat.csv", flat);
  const auto bad = lupus_cli({"eda", "--data", (dir / "flat.csv").string(), "--out", corr.string(),
                              "--clean-out", clean.string()});
  CHECK(bad.code == 1);
  CHECK(bad.err.find("sex") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("train then eval reproduces the printed metrics") {
  const auto dir = scratch("train");
  const auto r = lupus_cli(quick_train(dir, "a"));
  REQUIRE(r.code == 0);
  const auto test_line = r.out.substr(r.out.find("test "));

  const auto e = lupus_cli({"eval", "--model", (dir / "a_model.json").string(), "--data", kHeart,
                            "--out", (dir / "eval.json").string(), "--csv", (dir / "eval.csv").string()});
  REQUIRE(e.code == 0);
  CHECK(e.out == test_line);
  const auto j = nlohmann::json::parse(read_file(dir / "eval.json"));
  CHECK(j["rows"] == 89);
  const auto csv = read_csv(dir / "eval.csv");
  CHECK(csv[0] == std::vector<std::string>{"ACC", "AUC", "PRE", "Recall", "F1"});
  CHECK(std::stod(csv[1][0]) == j["accuracy"].get<double>());

  // Same flags, same bytes.
  REQUIRE(lupus_cli(quick_train(dir, "b")).code == 0);
  CHECK(read_file(dir / "a_model.json") == read_file(dir / "b_model.json"));
  CHECK(read_file(dir / "a_report.json") == read_file(dir / "b_report.json"));

  const auto model = nlohmann::json::parse(read_file(dir / "a_model.json"));
  CHECK(model["layer_sizes"] == std::vector<int>{13, 16, 1});
  CHECK(model["params"].size() == 241);
  CHECK(model["standardizer"]["std"].size() == 13);
  CHECK(model["threshold"] == 0.5);
  fs::remove_all(dir);
}

TEST_CASE("every training mode produces a model") {
  const auto dir = scratch("modes");
  for (std::string mode : {"acgwo", "bp", "hybrid", "acgwo-bp"}) {
    CAPTURE(mode);
    auto args = quick_train(dir, mode);
    args.insert(args.end(), {"--mode", mode});
    REQUIRE(lupus_cli(args).code == 0);
    const auto m = nlohmann::json::parse(read_file(dir / (mode + "_model.json")));
    CHECK(m["params"].size() == 241);
  }
  const auto report = nlohmann::json::parse(read_file(dir / "hybrid_report.json"));
  CHECK(report["loss_history"].size() == 35);
  CHECK(report["swarm_iterations"] == 20);
  fs::remove_all(dir);
}

TEST_CASE("bp mode separates a separable table perfectly") {
  const auto dir = scratch("separable");
  write_file_atomic(dir / "sep.csv", separable_table());
  const auto r = lupus_cli({"train", "--mode", "bp", "--epochs", "2000", "--lr", "0.5", "--data",
                            (dir / "sep.csv").string(), "--model", (dir / "m.json").string(),
                            "--report", (dir / "r.json").string()});
  REQUIRE(r.code == 0);
  const auto e = lupus_cli({"eval", "--model", (dir / "m.json").string(), "--data",
                            (dir / "sep.csv").string(), "--split", "all", "--out",
                            (dir / "e.json").string(), "--csv", (dir / "e.csv").string()});
  REQUIRE(e.code == 0);
  CHECK(nlohmann::json::parse(read_file(dir / "e.json"))["accuracy"] == 1.0);
  fs::remove_all(dir);
}

TEST_CASE("training and evaluation failures") {
  const auto dir = scratch("fail");
  auto args = quick_train(dir, "x");
  args[2] = (dir / "missing.csv").string();
  CHECK(lupus_cli(args).code == 2);
  CHECK_FALSE(fs::exists(dir / "x_model.json"));

  write_file_atomic(dir / "short.csv", "63,1,1,145,233,1,2,150,0,2.3,3,0,6,0\n1,2,3\n");
  args[2] = (dir / "short.csv").string();
  const auto parse = lupus_cli(args);
  CHECK(parse.code == 2);
  CHECK(parse.err.find(":2") != std::string::npos);

  REQUIRE(lupus_cli(quick_train(dir, "ok")).code == 0);
  const auto model_path = dir / "ok_model.json";
  const auto good = read_file(model_path);
  const std::vector<std::string> eval{"eval", "--model", model_path.string(), "--data", kHeart,
                                      "--out", (dir / "e.json").string(), "--csv",
                                      (dir / "e.csv").string()};

  write_file_atomic(model_path, good.substr(0, good.size() / 2));
  const auto corrupt = lupus_cli(eval);
  CHECK(corrupt.code == 2);
  CHECK(corrupt.err.find("parse error") != std::string::npos);

  auto j = nlohmann::json::parse(good);
  j["data"]["one_hot"] = true;
  write_file_atomic(model_path, j.dump());
  const auto wide = lupus_cli(eval);
  CHECK(wide.code == 2);
  CHECK(wide.err.find("features") != std::string::npos);

  j = nlohmann::json::parse(good);
  j.erase("standardizer");
  write_file_atomic(model_path, j.dump());
  CHECK(lupus_cli(eval).err.find("standardizer") != std::string::npos);

  CHECK(lupus_cli({"train", "--mode", "sgd"}).code == 1);
  CHECK(lupus_cli({"frobnicate"}).code == 1);
  CHECK(lupus_cli({}).code == 1);
  fs::remove_all(dir);
}

TEST_CASE("config file, flags and LUPUS_SEED precedence") {
  const auto dir = scratch("config");
  const auto cfg = dir / "cfg.json";
  write_file_atomic(cfg, R"({"train": {"epochs": 7, "seed": 11}})");

  auto run_with = [&](std::vector<std::string> extra) {
    auto args = quick_train(dir, "p");
    // Drop --epochs 15 so the config file can supply it.
    args.erase(args.begin() + 7, args.begin() + 9);
    args.insert(args.begin(), {"--config", cfg.string()});
    args.insert(args.end(), extra.begin(), extra.end());
    REQUIRE(lupus_cli(args).code == 0);
    return nlohmann::json::parse(read_file(dir / "p_model.json"))["training"];
  };

  auto t = run_with({});
  CHECK(t["epochs"] == 7);
  CHECK(t["seed"] == 11);
  t = run_with({"--epochs", "3", "--seed", "5"});
  CHECK(t["epochs"] == 3);
  CHECK(t["seed"] == 5);

  ::setenv("LUPUS_SEED", "77", 1);
  CHECK(run_with({})["seed"] == 11);
  write_file_atomic(cfg, R"({"train": {"epochs": 7}})");
  CHECK(run_with({})["seed"] == 77);
  ::unsetenv("LUPUS_SEED");
  CHECK(run_with({})["seed"] == 0);

  write_file_atomic(cfg, R"({"train": {"agnets": 7}})");
  auto args = quick_train(dir, "q");
  args.insert(args.begin(), {"--config", cfg.string()});
  CHECK(lupus_cli(args).code == 1);
  write_file_atomic(cfg, "{not json");
  CHECK(lupus_cli(args).code == 1);
  fs::remove_all(dir);
}

TEST_CASE("help lists every option with its default") {
  for (std::string sub : {"bench", "curves", "eda", "train", "eval"}) {
    CAPTURE(sub);
    const auto h = lupus_cli({sub, "--help"});
    CHECK(h.code == 0);
    std::istringstream in(h.out);
    for (std::string line; std::getline(in, line);) {
      if (line.rfind("  --", 0) != 0) continue;
      CAPTURE(line);
      std::string next;
      if (line.find('[') == std::string::npos) std::getline(in, next);
      CHECK((line + next).find('[') != std::string::npos);
    }
  }
  const auto train = lupus_cli({"train", "--help"}).out;
  for (std::string d : {"--agents INT:POSITIVE [100]", "--iters INT:POSITIVE [1000]",
                        "[[1,0,2,1.7]]", "[[1,0,2,2.1]]", "[0.7]", "[-5]", "[5]"}) {
    CHECK(train.find(d) != std::string::npos);
  }
  const auto bench = lupus_cli({"bench", "--help"}).out;
  CHECK(bench.find("--agents INT:POSITIVE [40]") != std::string::npos);
  CHECK(bench.find("--iters INT:POSITIVE [500]") != std::string::npos);
  CHECK(bench.find("--runs INT:POSITIVE [10]") != std::string::npos);
}
