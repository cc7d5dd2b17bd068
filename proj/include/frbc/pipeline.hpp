#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "frbc/biclustering.hpp"
#include "frbc/dataset.hpp"
#include "frbc/ensemble.hpp"
#include "frbc/fuzzy_rough.hpp"
#include "frbc/rules.hpp"

namespace frbc {

std::vector<double> default_delta_grid();

struct PipelineConfig {
  // Covering radii tried by the feature-selection loop, in order. The
  // default puts 0.26 first, then the remaining sweep values 0.02..0.50
  // ascending.
  std::vector<double> delta_grid = default_delta_grid();
  double beta = 0.5;              // covering-property requirement
  double support_threshold = 0.65;
  int max_iterations = 100;
  int min_good_biclusters = 10;
  // t, tau, eps_mes and rounds were calibrated on the bundled datasets; on
  // dense real-valued columns t near 0.1 single-links every value into one
  // cluster and tau tied to t leaves rules matching almost nothing.
  double t = 0.011;      // clustering distance threshold
  double tau = 0.4;      // rule match radius
  double eps_mes = 0.1;  // bicluster growth target, in bits
  int min_rows = 0;      // 0 = max(2, ceil(0.05*n)) at use
  int min_cols = 2;
  int pair_cap = 500;
  int rounds = 25;  // boosting rounds
  std::uint64_t seed = 1;
  bool use_fcf = true;  // feature selection + iteration loop
  bool use_fr = true;   // fuzzy rule memberships (else hardened to 0/1)
  // Accepted for config-file compatibility; documented as unused.
  double e_radius = 0.0;
  int grid_size_override = 0;  // >0: fixed-count centre grid
};

struct IterationRecord {
  int index = 0;
  double delta = 0.0;
  std::vector<int> reduct;
  std::vector<int> excluded;
  int n_biclusters = 0;   // after integration
  int n_good = 0;         // support >= threshold
  double mean_support = 0.0;  // over all integrated biclusters
  std::string stop_reason;    // "success", "feedback:...", ...
};

struct IterationLog {
  std::vector<IterationRecord> records;
  std::string outcome;
};

struct SelectionResult {
  Reduct reduct;
  std::vector<Bicluster> biclusters;  // the good ones, integration order
  IterationLog log;
};

// Feedback loop between reduction and biclustering: at the current radius,
// reduce the admissible attributes, cluster-seed-grow-integrate on the
// reduct, keep biclusters with support >= support_threshold, and succeed
// when there are at least min_good_biclusters of them covering both
// classes. Otherwise exclude the attribute most involved in the
// below-threshold biclusters (ties to the lowest index) and repeat;
// when exclusions would leave fewer than min_cols attributes or there is
// nothing to exclude, reset exclusions and advance the radius. Stops at
// max_iterations or when the radius grid is exhausted, returning the best
// iteration seen (most good biclusters, ties to higher mean support).
// Throws when no iteration produced any bicluster at threshold.
SelectionResult iterate_feature_selection(const DecisionTable& table,
                                          const PipelineConfig& config);

struct TrainedModel {
  StrongClassifier strong;
  Reduct reduct;
  std::vector<Bicluster> biclusters;
  std::vector<Rule> rules;
  IterationLog log;
};

// Full training: feature selection loop (skipped when use_fcf is off — all
// attributes pass and biclustering runs once), rule extraction (memberships
// hardened to {0,1} when use_fr is off), weak-classifier pool, boosting.
// Downstream failures (a class without rules, nothing better than chance)
// feed back into the selection loop until it exhausts.
TrainedModel train_pipeline(const DecisionTable& table,
                            const PipelineConfig& config);

int effective_min_rows(const PipelineConfig& config, std::size_t n);

}  // namespace frbc
