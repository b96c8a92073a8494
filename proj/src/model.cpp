#include "lupus/model.hpp"

#include "lupus/error.hpp"
#include "lupus/io.hpp"

namespace lupus {
namespace {

constexpr const char* kFormat = "lupus-mlp";
constexpr int kVersion = 1;

template <class T>
T field(const nlohmann::json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw DataError(where + ": missing field '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw DataError(where + ": field '" + key + "' has the wrong type (" + e.what() + ")");
  }
}

}  // namespace

std::vector<double> Model::probabilities(const Matrix& X_raw) const {
  if (X_raw.cols != arch.inputs()) {
    throw DataError("model expects " + std::to_string(arch.inputs()) + " features, data has " +
                    std::to_string(X_raw.cols));
  }
  return mlp::forward_batch(arch, params, data::apply_standardizer(stats, X_raw));
}

nlohmann::json to_json(const Model& m) {
  nlohmann::json j;
  j["format"] = kFormat;
  j["version"] = kVersion;
  j["layer_sizes"] = m.arch.layer_sizes;
  j["params"] = m.params;
  j["standardizer"] = {{"mean", m.stats.mean}, {"std", m.stats.std}};
  j["feature_names"] = m.feature_names;
  j["threshold"] = m.threshold;
  j["data"] = {{"train_fraction", m.data.train_fraction},
               {"split_seed", m.data.split_seed},
               {"impute", m.data.impute},
               {"one_hot", m.data.one_hot}};
  j["training"] = m.training;
  return j;
}

Model model_from_json(const nlohmann::json& j) {
  const std::string where = "model";
  if (field<std::string>(j, "format", where) != kFormat)
    throw DataError("model: not a " + std::string(kFormat) + " file");
  if (const int v = field<int>(j, "version", where); v != kVersion)
    throw DataError("model: unsupported version " + std::to_string(v));

  Model m;
  m.arch.layer_sizes = field<std::vector<std::size_t>>(j, "layer_sizes", where);
  try {
    m.arch.validate();
  } catch (const ConfigError& e) {
    throw DataError(std::string("model: ") + e.what());
  }
  m.params = field<std::vector<double>>(j, "params", where);
  if (m.params.size() != m.arch.param_count()) {
    throw DataError("model: " + std::to_string(m.params.size()) + " parameters for an architecture needing " +
                    std::to_string(m.arch.param_count()));
  }
  const auto st = field<nlohmann::json>(j, "standardizer", where);
  m.stats.mean = field<std::vector<double>>(st, "mean", "model.standardizer");
  m.stats.std = field<std::vector<double>>(st, "std", "model.standardizer");
  if (m.stats.mean.size() != m.arch.inputs() || m.stats.std.size() != m.arch.inputs())
    throw DataError("model: standardizer width does not match the input layer");
  m.feature_names = field<std::vector<std::string>>(j, "feature_names", where);
  m.threshold = field<double>(j, "threshold", where);
  if (!(m.threshold > 0.0 && m.threshold < 1.0)) throw DataError("model: threshold outside (0, 1)");
  const auto d = field<nlohmann::json>(j, "data", where);
  m.data.train_fraction = field<double>(d, "train_fraction", "model.data");
  m.data.split_seed = field<std::uint64_t>(d, "split_seed", "model.data");
  m.data.impute = field<bool>(d, "impute", "model.data");
  m.data.one_hot = field<bool>(d, "one_hot", "model.data");
  if (j.contains("training")) m.training = j.at("training");
  return m;
}

void save_model(const Model& m, const std::filesystem::path& path) {
  write_file_atomic(path, to_json(m).dump(2) + "\n");
}

Model load_model(const std::filesystem::path& path) {
  const auto text = read_file(path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError(path.string() + ": " + e.what());
  }
  try {
    return model_from_json(j);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(path.string() + ": " + e.what());
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

}  // namespace lupus
