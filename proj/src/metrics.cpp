#include "lupus/metrics.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

#include "lupus/error.hpp"
#include "lupus/format.hpp"

namespace lupus::metrics {
namespace {

Score ratio(std::uint64_t num, std::uint64_t den) noexcept {
  if (den == 0) return {0.0, true};
  return {static_cast<double>(num) / static_cast<double>(den), false};
}

void check_label(int y) {
  if (y != 0 && y != 1) throw DomainError("labels must be 0 or 1");
}

}  // namespace

ConfusionCounts confusion(std::span<const int> y_true, std::span<const int> y_pred) {
  if (y_true.size() != y_pred.size()) throw DomainError("confusion: length mismatch");
  if (y_true.empty()) throw DomainError("confusion: empty input");
  ConfusionCounts c;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    check_label(y_true[i]);
    check_label(y_pred[i]);
    if (y_true[i] == 1) {
      (y_pred[i] == 1 ? c.tp : c.fn) += 1;
    } else {
      (y_pred[i] == 1 ? c.fp : c.tn) += 1;
    }
  }
  return c;
}

Score accuracy(const ConfusionCounts& c) noexcept { return ratio(c.tp + c.tn, c.total()); }
Score precision(const ConfusionCounts& c) noexcept { return ratio(c.tp, c.tp + c.fp); }
Score recall(const ConfusionCounts& c) noexcept { return ratio(c.tp, c.tp + c.fn); }

Score f1(const ConfusionCounts& c) noexcept {
  const Score p = precision(c);
  const Score r = recall(c);
  if (p.degenerate || r.degenerate || p.value + r.value == 0.0) return {0.0, true};
  return {2.0 * p.value * r.value / (p.value + r.value), false};
}

double roc_auc(std::span<const int> y_true, std::span<const double> scores) {
  if (y_true.size() != scores.size()) throw DomainError("roc_auc: length mismatch");
  std::uint64_t pos = 0, neg = 0;
  for (int y : y_true) {
    check_label(y);
    (y == 1 ? pos : neg) += 1;
  }
  if (pos == 0 || neg == 0) throw DomainError("roc_auc: both classes must be present");

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

  // Sweep thresholds from high to low; each block of tied scores adds one
  // ROC vertex, and the trapezoid between vertices counts ties as 1/2.
  std::uint64_t tp = 0, fp = 0;
  double area = 0.0;
  std::size_t i = 0;
  while (i < order.size()) {
    std::uint64_t dtp = 0, dfp = 0;
    const double s = scores[order[i]];
    for (; i < order.size() && scores[order[i]] == s; ++i) {
      (y_true[order[i]] == 1 ? dtp : dfp) += 1;
    }
    area += static_cast<double>(dfp) * (static_cast<double>(tp) + 0.5 * static_cast<double>(dtp));
    tp += dtp;
    fp += dfp;
  }
  return area / (static_cast<double>(pos) * static_cast<double>(neg));
}

EvalReport evaluate(std::span<const int> y_true, std::span<const double> scores,
                    double threshold) {
  std::vector<int> pred(scores.size());
  std::transform(scores.begin(), scores.end(), pred.begin(),
                 [&](double p) { return p >= threshold ? 1 : 0; });
  EvalReport r;
  r.counts = confusion(y_true, pred);
  r.accuracy = accuracy(r.counts);
  r.auc = roc_auc(y_true, scores);
  const Score p = precision(r.counts), rc = recall(r.counts), f = f1(r.counts);
  r.precision = p;
  r.recall = rc;
  r.f1 = f;
  r.precision_degenerate = p.degenerate;
  r.recall_degenerate = rc.degenerate;
  r.f1_degenerate = f.degenerate;
  return r;
}

nlohmann::json to_json(const EvalReport& r) {
  nlohmann::json j;
  j["accuracy"] = r.accuracy;
  j["auc"] = r.auc;
  j["precision"] = r.precision;
  j["recall"] = r.recall;
  j["f1"] = r.f1;
  j["counts"] = {{"tp", r.counts.tp}, {"tn", r.counts.tn}, {"fp", r.counts.fp}, {"fn", r.counts.fn}};
  j["degenerate"] = {{"precision", r.precision_degenerate},
                     {"recall", r.recall_degenerate},
                     {"f1", r.f1_degenerate}};
  return j;
}

std::string csv_header() { return "ACC,AUC,PRE,Recall,F1"; }

std::string to_csv_row(const EvalReport& r) {
  return format_real(r.accuracy) + ',' + format_real(r.auc) + ',' + format_real(r.precision) +
         ',' + format_real(r.recall) + ',' + format_real(r.f1);
}

}  // namespace lupus::metrics
