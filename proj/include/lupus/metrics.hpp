#pragma once

// Binary classification metrics. The positive class is label 1.

#include <cstdint>
#include <span>
#include <string>

#include "json.hpp"

namespace lupus::metrics {

struct ConfusionCounts {
  std::uint64_t tp = 0;
  std::uint64_t tn = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;

  std::uint64_t total() const noexcept { return tp + tn + fp + fn; }
  friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

/// A ratio metric. Zero denominators yield 0 with `degenerate` set.
struct Score {
  double value = 0.0;
  bool degenerate = false;

  operator double() const noexcept { return value; }
};

/// Throws DomainError on length mismatch, empty input or labels outside {0,1}.
ConfusionCounts confusion(std::span<const int> y_true, std::span<const int> y_pred);

Score accuracy(const ConfusionCounts& c) noexcept;
Score precision(const ConfusionCounts& c) noexcept;
Score recall(const ConfusionCounts& c) noexcept;
/// Harmonic mean of precision and recall.
Score f1(const ConfusionCounts& c) noexcept;

/// Area under the ROC curve by trapezoidal integration over the distinct
/// score thresholds; tied scores count one half. Throws DomainError unless
/// both classes are present.
double roc_auc(std::span<const int> y_true, std::span<const double> scores);

struct EvalReport {
  double accuracy = 0.0;
  double auc = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  ConfusionCounts counts;
  bool precision_degenerate = false;
  bool recall_degenerate = false;
  bool f1_degenerate = false;
};

/// Scores above or at `threshold` are predicted positive.
EvalReport evaluate(std::span<const int> y_true, std::span<const double> scores,
                    double threshold = 0.5);

nlohmann::json to_json(const EvalReport& r);
/// "ACC,AUC,PRE,Recall,F1"
std::string csv_header();
/// Values in header order, full round-trip precision.
std::string to_csv_row(const EvalReport& r);

}  // namespace lupus::metrics
