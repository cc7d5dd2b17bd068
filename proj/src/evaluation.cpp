#include "frbc/evaluation.hpp"

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <vector>

#include "frbc/error.hpp"

namespace frbc {

namespace {

std::optional<double> ratio(long num, long den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

ConfusionMetrics confusion_metrics(const std::vector<int>& predicted,
                                   const std::vector<int>& actual) {
  if (predicted.size() != actual.size())
    throw Error("evaluation", "prediction and truth lengths differ");
  ConfusionMetrics m;
  for (std::size_t i = 0; i < actual.size(); ++i) {
    if (actual[i] == 1)
      (predicted[i] == 1 ? m.tp : m.fn)++;
    else
      (predicted[i] == 1 ? m.fp : m.tn)++;
  }
  m.accuracy = ratio(m.tp + m.tn, m.tp + m.fp + m.tn + m.fn);
  m.precision = ratio(m.tp, m.tp + m.fp);
  m.recall = ratio(m.tp, m.tp + m.fn);
  m.specificity = ratio(m.tn, m.tn + m.fp);
  return m;
}

RocCurve roc_curve(const std::vector<double>& scores,
                   const std::vector<int>& actual) {
  if (scores.size() != actual.size())
    throw Error("evaluation", "score and truth lengths differ");
  const std::size_t n = scores.size();
  long np = 0, nn = 0;
  for (int y : actual) (y == 1 ? np : nn)++;
  if (np == 0 || nn == 0)
    throw Error("evaluation", "ROC needs both classes present");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] > scores[b];
  });

  RocCurve curve;
  curve.fpr.push_back(0.0);
  curve.tpr.push_back(0.0);
  long tp = 0, fp = 0;
  std::size_t i = 0;
  while (i < n) {
    const double s = scores[order[i]];
    while (i < n && scores[order[i]] == s) {
      (actual[order[i]] == 1 ? tp : fp)++;
      ++i;
    }
    curve.fpr.push_back(static_cast<double>(fp) / static_cast<double>(nn));
    curve.tpr.push_back(static_cast<double>(tp) / static_cast<double>(np));
  }
  double auc = 0.0;
  for (std::size_t j = 1; j < curve.fpr.size(); ++j)
    auc += (curve.fpr[j] - curve.fpr[j - 1]) *
           (curve.tpr[j] + curve.tpr[j - 1]) * 0.5;
  curve.auc = auc;
  return curve;
}

CvReport cross_validate(const DecisionTable& table,
                        const PipelineConfig& config, int k) {
  if (k < 2) throw Error("evaluation", "need at least two folds");
  const DecisionTable norm = normalize_minmax(table);
  CvReport report;
  report.plan = stratified_folds(norm.labels, k, config.seed);

  std::vector<double> pooled_scores;
  std::vector<int> pooled_actual;
  std::vector<double> acc, prec, rec, spec, aucs;

  for (int f = 0; f < k; ++f) {
    std::vector<int> train_rows, test_rows;
    for (std::size_t i = 0; i < norm.n; ++i)
      (report.plan.fold_of[i] == f ? test_rows : train_rows)
          .push_back(static_cast<int>(i));

    FoldResult fold;
    try {
      const TrainedModel model =
          train_pipeline(norm.select_rows(train_rows), config);
      std::vector<int> predicted, truth;
      std::vector<double> margins;
      predicted.reserve(test_rows.size());
      for (int i : test_rows) {
        const auto row = norm.row(static_cast<std::size_t>(i));
        predicted.push_back(
            strong_classify(model.strong, row, model.strong.majority_label));
        margins.push_back(decision_margin(model.strong, row));
        truth.push_back(norm.labels[static_cast<std::size_t>(i)]);
      }
      fold.metrics = confusion_metrics(predicted, truth);
      const bool both = fold.metrics.tp + fold.metrics.fn > 0 &&
                        fold.metrics.tn + fold.metrics.fp > 0;
      if (both) fold.auc = roc_curve(margins, truth).auc;
      pooled_scores.insert(pooled_scores.end(), margins.begin(), margins.end());
      pooled_actual.insert(pooled_actual.end(), truth.begin(), truth.end());

      if (fold.metrics.accuracy) acc.push_back(*fold.metrics.accuracy);
      if (fold.metrics.precision) prec.push_back(*fold.metrics.precision);
      if (fold.metrics.recall) rec.push_back(*fold.metrics.recall);
      if (fold.metrics.specificity) spec.push_back(*fold.metrics.specificity);
      if (fold.auc) aucs.push_back(*fold.auc);
    } catch (const Error& e) {
      fold.failed = true;
      fold.error = e.what();
      ++report.n_failed;
    }
    report.folds.push_back(std::move(fold));
  }

  const auto mean_of = [](const std::vector<double>& v) -> std::optional<double> {
    if (v.empty()) return std::nullopt;
    return std::accumulate(v.begin(), v.end(), 0.0) /
           static_cast<double>(v.size());
  };
  report.mean_accuracy = mean_of(acc);
  report.mean_precision = mean_of(prec);
  report.mean_recall = mean_of(rec);
  report.mean_specificity = mean_of(spec);
  report.mean_auc = mean_of(aucs);

  bool has_pos = false, has_neg = false;
  for (int y : pooled_actual) (y == 1 ? has_pos : has_neg) = true;
  if (has_pos && has_neg)
    report.pooled_roc = roc_curve(pooled_scores, pooled_actual);
  return report;
}

RankSummary friedman_ranks(const std::vector<std::vector<double>>& scores) {
  const std::size_t m = scores.size();
  if (m < 2) throw Error("evaluation", "need at least two methods to rank");
  const std::size_t d = scores.front().size();
  if (d == 0) throw Error("evaluation", "need at least one dataset");
  for (const auto& row : scores)
    if (row.size() != d)
      throw Error("evaluation", "methods scored on different dataset counts");

  std::vector<double> rank_sum(m, 0.0);
  std::vector<std::size_t> order(m);
  for (std::size_t j = 0; j < d; ++j) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return scores[a][j] > scores[b][j];
    });
    std::size_t i = 0;
    while (i < m) {
      std::size_t e = i;
      while (e + 1 < m && scores[order[e + 1]][j] == scores[order[i]][j]) ++e;
      // positions i..e (0-based) share the averaged rank
      const double shared =
          (static_cast<double>(i + 1) + static_cast<double>(e + 1)) / 2.0;
      for (std::size_t p = i; p <= e; ++p) rank_sum[order[p]] += shared;
      i = e + 1;
    }
  }

  RankSummary summary;
  summary.avg_rank.resize(m);
  const double dm = static_cast<double>(m);
  const double dd = static_cast<double>(d);
  double sq = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    summary.avg_rank[i] = rank_sum[i] / dd;
    const double dev = summary.avg_rank[i] - (dm + 1.0) / 2.0;
    sq += dev * dev;
  }
  summary.chi_square = 12.0 * dd / (dm * (dm + 1.0)) * sq;
  return summary;
}

}  // namespace frbc
