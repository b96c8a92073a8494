#pragma once

// Loading, cleaning, scaling, splitting and correlation analysis for the
// 14-column heart-disease table.

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "lupus/matrix.hpp"

namespace lupus::data {

inline constexpr std::size_t kRawColumns = 14;

inline const std::array<std::string, kRawColumns> kColumnNames{
    "age",     "sex",   "cp",    "trestbps", "chol",  "fbs", "restecg",
    "thalach", "exang", "oldpeak", "slope",  "ca",    "thal", "target"};

/// Columns expanded by one-hot encoding (when enabled).
inline const std::array<std::string, 4> kCategoricalColumns{"cp", "restecg", "slope", "thal"};

inline constexpr std::string_view kMissing = "?";

struct RawTable {
  std::vector<std::string> header;             // kColumnNames when the file has none
  std::vector<std::vector<std::string>> rows;  // kRawColumns fields each
  std::vector<std::size_t> line_numbers;       // 1-based source line of each row
};

/// Comma-separated text with an optional header row. Throws DataError naming
/// the line for rows with the wrong field count, and for empty input.
RawTable parse_table(std::string_view text, std::string_view source = "<input>");
RawTable load_table(const std::filesystem::path& path);

struct Dataset {
  Matrix X;
  std::vector<int> y;
  std::vector<std::string> feature_names;

  std::size_t size() const noexcept { return y.size(); }
  std::size_t features() const noexcept { return X.cols; }
};

enum class MissingPolicy { drop, impute_mode };

struct CleanOptions {
  MissingPolicy missing = MissingPolicy::drop;
  bool one_hot = false;
};

/// Drops (or mode-imputes) rows with "?" cells, binarizes target > 0 to 1 and
/// parses every feature as a real. Throws DataError on non-numeric cells.
Dataset clean(const RawTable& raw, const CleanOptions& opts = {});

Dataset select_rows(const Dataset& ds, std::span<const std::size_t> rows);

struct StandardizationStats {
  std::vector<double> mean;
  std::vector<double> std;  // population standard deviation
};

/// Throws ConfigError naming the first zero-variance column.
StandardizationStats fit_standardizer(const Matrix& X_train,
                                      std::span<const std::string> names = {});
Matrix apply_standardizer(const StandardizationStats& stats, const Matrix& X);

struct Split {
  Dataset train;
  Dataset test;
  std::vector<std::size_t> train_rows;  // indices into the input dataset
  std::vector<std::size_t> test_rows;
};

/// Shuffles each class with a stream seeded by `seed` (class 0 first) and
/// sends round(train_fraction * class size) rows of it to training. Row order
/// inside each part follows the input. Throws ConfigError when a class has
/// fewer than 2 members or the fraction is outside (0, 1).
Split stratified_split(const Dataset& ds, double train_fraction, std::uint64_t seed);

struct CorrelationMatrix {
  Matrix r;
  std::vector<std::string> names;
};

/// Pearson correlation between every pair of columns (features, then target
/// when requested). Throws ConfigError naming a zero-variance column.
CorrelationMatrix pearson_corr_matrix(const Dataset& ds, bool include_target = true);

/// r for two equally sized columns.
double pearson(std::span<const double> x, std::span<const double> y);

std::string to_csv(const Dataset& ds);
std::string to_csv(const CorrelationMatrix& c);

}  // namespace lupus::data
