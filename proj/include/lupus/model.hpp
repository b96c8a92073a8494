#pragma once

// Trained classifier artifact: network, parameters, the standardization fitted
// on the training rows, and everything needed to re-derive the data split.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "lupus/dataprep.hpp"
#include "lupus/mlp.hpp"

namespace lupus {

struct DataSettings {
  double train_fraction = 0.7;
  std::uint64_t split_seed = 0;
  bool impute = false;
  bool one_hot = false;

  data::CleanOptions clean_options() const {
    return {impute ? data::MissingPolicy::impute_mode : data::MissingPolicy::drop, one_hot};
  }
  friend bool operator==(const DataSettings&, const DataSettings&) = default;
};

struct Model {
  mlp::Architecture arch;
  std::vector<double> params;
  data::StandardizationStats stats;
  std::vector<std::string> feature_names;
  double threshold = 0.5;
  DataSettings data;
  /// Free-form record of how the model was trained.
  nlohmann::json training = nlohmann::json::object();

  /// Probabilities for raw (unstandardized) feature rows.
  std::vector<double> probabilities(const Matrix& X_raw) const;
};

nlohmann::json to_json(const Model& m);
/// Throws DataError describing the first missing or inconsistent field.
Model model_from_json(const nlohmann::json& j);

void save_model(const Model& m, const std::filesystem::path& path);
/// Throws IoError when unreadable, DataError when unparsable or inconsistent.
Model load_model(const std::filesystem::path& path);

}  // namespace lupus
