#pragma once

#include <iosfwd>
#include <string>

#include "frbc/evaluation.hpp"
#include "frbc/pipeline.hpp"

namespace frbc {

// Round-trip-exact formatting for doubles (%.17g).
std::string fmt_double(double v);

// Flat "key = value" config file; '#' starts a comment. Unknown keys throw.
// delta_grid takes a comma-separated list. Flags parsed later override
// whatever the file set.
PipelineConfig config_from_file(const std::string& path);

void write_model(std::ostream& out, const StrongClassifier& strong);
StrongClassifier read_model(std::istream& in);

void write_bicluster_dump(std::ostream& out,
                          const std::vector<Bicluster>& biclusters,
                          const DecisionTable& table);
void write_rule_dump(std::ostream& out, const std::vector<Rule>& rules,
                     const DecisionTable& table);
void write_roc(std::ostream& out, const RocCurve& roc);

// Sections of a run manifest, in order: config, dataset, iterations,
// reduct, rules, model, metrics, timings. Every section except timings is
// a pure function of (input file, flags), so reruns produce byte-identical
// text up to the timings section.
struct ManifestTimings {
  double load_ms = 0, train_ms = 0, evaluate_ms = 0;
};

void write_manifest_header(std::ostream& out, const PipelineConfig& config,
                           const DecisionTable& table);
void write_manifest_training(std::ostream& out, const TrainedModel& model,
                             const DecisionTable& table);
void write_manifest_metrics_train(std::ostream& out,
                                  const ConfusionMetrics& metrics,
                                  const RocCurve& roc);
void write_manifest_metrics_cv(std::ostream& out, const CvReport& report);
void write_manifest_timings(std::ostream& out, const ManifestTimings& t);

// FNV-1a over the table's bytes; the dataset fingerprint in manifests.
std::uint64_t content_hash(const DecisionTable& table);

}  // namespace frbc
