#pragma once

#include <optional>
#include <vector>

#include "frbc/dataset.hpp"
#include "frbc/pipeline.hpp"

namespace frbc {

// Counts take +1 as the positive class. Ratios whose denominator is zero
// are reported absent rather than as 0.
struct ConfusionMetrics {
  long tp = 0, fp = 0, tn = 0, fn = 0;
  std::optional<double> accuracy, precision, recall, specificity;
};

ConfusionMetrics confusion_metrics(const std::vector<int>& predicted,
                                   const std::vector<int>& actual);

// Points swept over the distinct score thresholds, descending; tied scores
// advance TP and FP together (one diagonal step). auc is the trapezoid
// area, equal to the pairwise concordance probability with ties counting
// one half.
struct RocCurve {
  std::vector<double> fpr, tpr;  // same length, starts (0,0), ends (1,1)
  double auc = 0.0;
};

// Throws when either class is absent.
RocCurve roc_curve(const std::vector<double>& scores,
                   const std::vector<int>& actual);

struct FoldResult {
  bool failed = false;
  std::string error;
  ConfusionMetrics metrics;
  std::optional<double> auc;
};

struct CvReport {
  FoldPlan plan;
  std::vector<FoldResult> folds;
  // Arithmetic means over succeeded folds where the metric was defined.
  std::optional<double> mean_accuracy, mean_precision, mean_recall,
      mean_specificity, mean_auc;
  RocCurve pooled_roc;  // margins pooled over succeeded folds' test rows
  int n_failed = 0;
};

// Stratified k-fold cross validation of the full training pipeline. A fold
// whose training throws is marked failed and skipped by the aggregates.
CvReport cross_validate(const DecisionTable& table,
                        const PipelineConfig& config, int k);

// Friedman average ranks for a methods-by-datasets score table: per
// dataset, methods are ranked descending by score (best = 1, ties get the
// averaged rank); avg_rank is the per-method mean across datasets, and
// chi_square the Friedman statistic over those ranks.
struct RankSummary {
  std::vector<double> avg_rank;
  double chi_square = 0.0;
};

RankSummary friedman_ranks(const std::vector<std::vector<double>>& scores);

}  // namespace frbc
