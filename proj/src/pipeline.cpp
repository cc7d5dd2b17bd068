#include "frbc/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <utility>
#include <vector>

#include "frbc/error.hpp"

namespace frbc {

std::vector<double> default_delta_grid() {
  std::vector<double> grid{0.26};
  for (int k = 1; k <= 25; ++k) {
    if (k == 13) continue;  // 0.26 is already in front
    grid.push_back(static_cast<double>(k) / 50.0);
  }
  return grid;
}

int effective_min_rows(const PipelineConfig& config, std::size_t n) {
  if (config.min_rows > 0) return config.min_rows;
  const int frac = static_cast<int>(
      std::ceil(0.05 * static_cast<double>(n)) + 0.5);
  return std::max(2, frac);
}

namespace {

constexpr double kIntegrationJaccard = 0.8;

void validate_config(const PipelineConfig& c) {
  if (c.delta_grid.empty()) throw Error("pipeline", "empty radius grid");
  for (double d : c.delta_grid)
    if (!(d > 0.0) || d > 0.5 + 1e-12)
      throw Error("pipeline", "radius grid values must lie in (0, 0.5]");
  if (!(c.beta > 0.0) || c.beta > 1.0)
    throw Error("pipeline", "beta must lie in (0, 1]");
  if (c.support_threshold < 0.5 || c.support_threshold > 1.0)
    throw Error("pipeline", "support threshold must lie in [0.5, 1]");
  if (c.max_iterations < 1) throw Error("pipeline", "max_iterations must be >= 1");
  if (c.min_good_biclusters < 1)
    throw Error("pipeline", "min_good_biclusters must be >= 1");
  if (!(c.t >= 0.0)) throw Error("pipeline", "t must be >= 0");
  if (!(c.tau > 0.0)) throw Error("pipeline", "tau must be > 0");
  if (c.min_cols < 1) throw Error("pipeline", "min_cols must be >= 1");
  if (c.rounds < 1) throw Error("pipeline", "rounds must be >= 1");
}

CenterGrid build_grid(const PipelineConfig& config, double delta) {
  if (config.grid_size_override > 0)
    return make_uniform_grid(static_cast<std::size_t>(config.grid_size_override),
                             delta);
  return build_center_grid(delta);
}

// One pass of seed extraction, growth, and integration over a column set.
std::vector<Bicluster> bicluster_pass(
    const DecisionTable& table, const std::vector<int>& cols,
    const PipelineConfig& config,
    std::map<std::pair<std::vector<int>, std::vector<int>>, Bicluster>* memo) {
  GrowLimits limits;
  limits.t = config.t;
  limits.eps_mes = config.eps_mes;
  limits.min_rows = effective_min_rows(config, table.n);
  limits.min_cols = config.min_cols;

  const auto seeds = extract_seeds(table, cols, config.t, limits.min_rows);
  std::vector<Bicluster> grown;
  grown.reserve(seeds.size());
  for (const auto& seed : seeds) {
    if (memo) {
      const auto key = std::make_pair(cols, seed);
      auto found = memo->find(key);
      if (found == memo->end())
        found = memo->emplace(key, grow_from_seed(table, seed, cols, limits))
                    .first;
      grown.push_back(found->second);
    } else {
      grown.push_back(grow_from_seed(table, seed, cols, limits));
    }
  }
  return integrate_biclusters(std::move(grown), kIntegrationJaccard);
}

bool rule_capable_both_classes(const std::vector<Bicluster>& good) {
  bool has_a = false, has_b = false;
  for (const auto& bc : good) {
    if (bc.n_a > bc.n_b)
      has_a = true;
    else
      has_b = true;
  }
  return has_a && has_b;
}

struct Candidate {
  Reduct reduct;
  std::vector<Bicluster> good;
};

// Feedback loop shared by iterate_feature_selection and train_pipeline.
// next() runs iterations until one succeeds (returned as a candidate) or
// everything is exhausted (returns the best fallback, then nothing).
class SelectionEngine {
 public:
  SelectionEngine(const DecisionTable& table, const PipelineConfig& config)
      : table_(table), config_(config) {
    validate_config(config);
    if (table.n == 0 || table.m == 0)
      throw Error("pipeline", "empty decision table");
  }

  std::optional<Candidate> next() {
    if (exhausted_) return final_fallback();
    while (iteration_ < config_.max_iterations) {
      if (grid_pos_ >= config_.delta_grid.size()) break;
      const double delta = config_.delta_grid[grid_pos_];
      if (!family_ || family_->grid.delta != delta)
        family_ = build_covering_family(table_, build_grid(config_, delta),
                                        config_.beta);

      IterationRecord rec;
      rec.index = iteration_;
      rec.delta = delta;
      rec.excluded = excluded_;

      Reduct reduct = greedy_reduct(table_, *family_, excluded_);
      rec.reduct = reduct.attrs;

      const auto integrated =
          bicluster_pass(table_, reduct.attrs, config_, &memo_);
      std::vector<Bicluster> good, low;
      for (const auto& bc : integrated)
        (bc.support >= config_.support_threshold ? good : low).push_back(bc);
      rec.n_biclusters = static_cast<int>(integrated.size());
      rec.n_good = static_cast<int>(good.size());
      double sum_support = 0.0;
      for (const auto& bc : integrated) sum_support += bc.support;
      rec.mean_support =
          integrated.empty() ? 0.0
                             : sum_support / static_cast<double>(integrated.size());
      ++iteration_;

      update_best(reduct, good, rec);

      if (static_cast<int>(good.size()) >= config_.min_good_biclusters &&
          rule_capable_both_classes(good)) {
        rec.stop_reason = "success";
        log_.records.push_back(rec);
        pending_ = true;
        pending_low_ = std::move(low);
        return Candidate{std::move(reduct), std::move(good)};
      }

      rec.stop_reason = apply_feedback(low);
      log_.records.push_back(std::move(rec));
    }
    exhausted_ = true;
    if (log_.outcome.empty())
      log_.outcome = iteration_ >= config_.max_iterations ? "iteration-cap"
                                                          : "grid-exhausted";
    return final_fallback();
  }

  // The candidate returned by the last next() failed downstream: note why
  // and run the same feedback step a non-success would have taken, using
  // that iteration's below-threshold biclusters.
  void fail_pending(const std::string& reason) {
    if (!pending_) return;
    pending_ = false;
    IterationRecord& rec = log_.records.back();
    rec.stop_reason = "downstream:" + reason + ";" + apply_feedback(pending_low_);
    pending_low_.clear();
  }

  void mark_success() {
    pending_ = false;
    if (log_.outcome.empty()) log_.outcome = "success";
  }

  const IterationLog& log() const { return log_; }
  IterationLog& log() { return log_; }
  bool any_good_ever() const { return best_.has_value(); }

 private:
  std::optional<Candidate> final_fallback() {
    if (fallback_given_) return std::nullopt;
    fallback_given_ = true;
    if (!best_)
      throw Error("pipeline",
                  "no covering radius produced a bicluster at the support "
                  "threshold");
    log_.outcome += ":best-iteration";
    return best_;
  }

  void update_best(const Reduct& reduct, const std::vector<Bicluster>& good,
                   const IterationRecord& rec) {
    if (good.empty()) return;
    if (!best_ || rec.n_good > best_n_good_ ||
        (rec.n_good == best_n_good_ && rec.mean_support > best_mean_support_)) {
      best_ = Candidate{reduct, good};
      best_n_good_ = rec.n_good;
      best_mean_support_ = rec.mean_support;
    }
  }

  // Exclusion-or-advance step; returns a description for the record.
  std::string apply_feedback(const std::vector<Bicluster>& low) {
    if (low.empty()) {
      advance_radius();
      return "advance:no-low-support-biclusters";
    }
    // participation of each attribute in the below-threshold biclusters
    std::vector<int> count(table_.m, 0);
    for (const auto& bc : low)
      for (int c : bc.cols) ++count[c];
    int worst = -1;
    for (std::size_t a = 0; a < table_.m; ++a)
      if (worst < 0 || count[a] > count[worst]) worst = static_cast<int>(a);
    const std::size_t admissible_after = table_.m - excluded_.size() - 1;
    if (admissible_after < static_cast<std::size_t>(config_.min_cols)) {
      advance_radius();
      return "advance:too-few-attributes-left";
    }
    excluded_.push_back(worst);
    std::sort(excluded_.begin(), excluded_.end());
    std::ostringstream os;
    os << "feedback:exclude-attribute-" << worst;
    return os.str();
  }

  void advance_radius() {
    excluded_.clear();
    ++grid_pos_;
  }

  const DecisionTable& table_;
  const PipelineConfig& config_;
  std::optional<CoveringFamily> family_;
  std::map<std::pair<std::vector<int>, std::vector<int>>, Bicluster> memo_;
  std::vector<Bicluster> pending_low_;
  std::vector<int> excluded_;
  std::size_t grid_pos_ = 0;
  int iteration_ = 0;
  IterationLog log_;
  std::optional<Candidate> best_;
  int best_n_good_ = 0;
  double best_mean_support_ = 0.0;
  bool pending_ = false;
  bool exhausted_ = false;
  bool fallback_given_ = false;
};

std::vector<Rule> rules_from(const std::vector<Bicluster>& good, bool use_fr) {
  std::vector<Rule> rules;
  rules.reserve(good.size());
  for (const auto& bc : good) rules.push_back(extract_rule(bc));
  if (!use_fr) {
    for (auto& r : rules) {
      const bool a = r.m_a > r.m_b;
      r.m_a = a ? 1.0 : 0.0;
      r.m_b = a ? 0.0 : 1.0;
    }
  }
  return rules;
}

TrainedModel finish_training(const DecisionTable& table,
                             const PipelineConfig& config,
                             Candidate candidate) {
  TrainedModel model;
  model.reduct = std::move(candidate.reduct);
  model.biclusters = std::move(candidate.good);
  model.rules = rules_from(model.biclusters, config.use_fr);
  const auto pool = build_weak_classifiers(
      model.rules,
      config.pair_cap > 0 ? static_cast<std::size_t>(config.pair_cap) : 0);
  model.strong = adaboost_train(pool, table, config.rounds, config.tau);
  return model;
}

}  // namespace

SelectionResult iterate_feature_selection(const DecisionTable& table,
                                          const PipelineConfig& config) {
  SelectionEngine engine(table, config);
  auto candidate = engine.next();
  if (!candidate)
    throw Error("pipeline", "feature selection produced no candidate");
  engine.mark_success();
  SelectionResult result;
  result.reduct = std::move(candidate->reduct);
  result.biclusters = std::move(candidate->good);
  result.log = engine.log();
  return result;
}

TrainedModel train_pipeline(const DecisionTable& table,
                            const PipelineConfig& config) {
  validate_config(config);
  if (!config.use_fcf) {
    // no feature selection: every attribute is admissible, one pass
    std::vector<int> all(table.m);
    for (std::size_t a = 0; a < table.m; ++a) all[a] = static_cast<int>(a);
    const auto integrated = bicluster_pass(table, all, config, nullptr);
    std::vector<Bicluster> good;
    for (const auto& bc : integrated)
      if (bc.support >= config.support_threshold) good.push_back(bc);
    if (good.empty())
      throw Error("pipeline",
                  "no bicluster reached the support threshold (feature "
                  "selection is disabled)");
    Candidate candidate;
    candidate.reduct.attrs = all;
    candidate.reduct.delta = config.delta_grid.front();
    candidate.reduct.beta = config.beta;
    candidate.good = std::move(good);
    IterationRecord rec;
    rec.index = 0;
    rec.delta = candidate.reduct.delta;
    rec.reduct = all;
    rec.n_biclusters = static_cast<int>(integrated.size());
    rec.n_good = static_cast<int>(candidate.good.size());
    double sum_support = 0.0;
    for (const auto& bc : integrated) sum_support += bc.support;
    rec.mean_support =
        integrated.empty() ? 0.0
                           : sum_support / static_cast<double>(integrated.size());
    rec.stop_reason = "success";
    TrainedModel model = finish_training(table, config, std::move(candidate));
    model.log.records.push_back(std::move(rec));
    model.log.outcome = "feature-selection-off";
    return model;
  }

  SelectionEngine engine(table, config);
  while (true) {
    auto candidate = engine.next();
    if (!candidate)
      throw Error("pipeline",
                  "training failed for every usable covering radius");
    try {
      TrainedModel model =
          finish_training(table, config, std::move(*candidate));
      engine.mark_success();
      model.log = engine.log();
      return model;
    } catch (const Error& e) {
      engine.fail_pending(e.what());
    }
  }
}

}  // namespace frbc
