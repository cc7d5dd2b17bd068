#include "frbc/cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "frbc/error.hpp"
#include "frbc/evaluation.hpp"
#include "frbc/io.hpp"
#include "frbc/pipeline.hpp"

namespace frbc {

namespace {

struct CliOptions {
  std::string data, label_col, positive;
  std::string config_path, out_dir;
  std::string dump_biclusters, dump_rules, roc_out, scores_path;
  std::uint64_t seed = 0;
  int folds = 10;
  bool no_fcf = false, no_fr = false;
  bool seed_given = false;
};

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

PipelineConfig make_config(const CliOptions& opt) {
  PipelineConfig config;
  if (!opt.config_path.empty()) config = config_from_file(opt.config_path);
  if (opt.seed_given) config.seed = opt.seed;
  if (opt.no_fcf) config.use_fcf = false;
  if (opt.no_fr) config.use_fr = false;
  return config;
}

std::ofstream open_out(const std::string& path, const char* what) {
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(parent, ec);
  }
  std::ofstream out(path);
  if (!out) throw Error("cli", std::string("cannot write ") + what + ": " + path);
  return out;
}

// The reduce and bicluster commands stop before training, so they write
// the iteration and reduct sections themselves.
void write_selection_sections(std::ostream& out, const SelectionResult& sel,
                              const DecisionTable& table) {
  out << "[iterations]\n";
  out << "outcome = " << sel.log.outcome << '\n';
  for (const auto& rec : sel.log.records) {
    out << "iteration " << rec.index << " delta " << fmt_double(rec.delta)
        << " reduct " << rec.reduct.size() << " excluded "
        << rec.excluded.size() << " biclusters " << rec.n_biclusters
        << " good " << rec.n_good << " mean_support "
        << fmt_double(rec.mean_support) << " stop " << rec.stop_reason
        << '\n';
  }
  out << "[reduct]\n";
  out << "delta = " << fmt_double(sel.reduct.delta) << '\n';
  out << "beta = " << fmt_double(sel.reduct.beta) << '\n';
  for (int a : sel.reduct.attrs)
    out << "attr " << a << " "
        << table.feature_names[static_cast<std::size_t>(a)] << '\n';
}

// Methods-by-datasets score table: header "dataset,<method>,..." then one
// row per dataset. Returns method names + scores[method][dataset].
void load_scores(const std::string& path, std::vector<std::string>* methods,
                 std::vector<std::vector<double>>* scores,
                 std::vector<std::string>* datasets) {
  std::ifstream in(path);
  if (!in) throw Error("cli", "cannot open scores table: " + path);
  std::string line;
  if (!std::getline(in, line))
    throw Error("cli", "empty scores table: " + path);
  std::stringstream header(line);
  std::string cell;
  bool first = true;
  while (std::getline(header, cell, ',')) {
    if (!first) methods->push_back(cell);
    first = false;
  }
  if (methods->empty())
    throw Error("cli", "scores table needs method columns: " + path);
  scores->assign(methods->size(), {});
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::stringstream row(line);
    std::getline(row, cell, ',');
    datasets->push_back(cell);
    for (std::size_t i = 0; i < methods->size(); ++i) {
      if (!std::getline(row, cell, ','))
        throw Error("cli", path + ":" + std::to_string(lineno) +
                               ": missing score");
      try {
        (*scores)[i].push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw Error("cli", path + ":" + std::to_string(lineno) +
                               ": bad score '" + cell + "'");
      }
    }
  }
}

int cmd_ranks(const CliOptions& opt) {
  std::vector<std::string> methods, datasets;
  std::vector<std::vector<double>> scores;
  load_scores(opt.scores_path, &methods, &scores, &datasets);
  RankSummary summary = friedman_ranks(scores);
  for (std::size_t i = 0; i < methods.size(); ++i)
    std::cout << methods[i] << " " << fmt_double(summary.avg_rank[i]) << '\n';
  std::cout << "chi_square " << fmt_double(summary.chi_square) << '\n';
  if (!opt.out_dir.empty()) {
    auto out = open_out(opt.out_dir + "/ranks.txt", "ranks");
    for (std::size_t i = 0; i < methods.size(); ++i)
      out << methods[i] << " " << fmt_double(summary.avg_rank[i]) << '\n';
    out << "chi_square " << fmt_double(summary.chi_square) << '\n';
  }
  return 0;
}

// Shared state for the data-driven commands. The pipeline normalizes
// internally for cross validation; the single-table commands normalize
// here so dumps and the model speak [0,1] coordinates.
struct LoadedRun {
  DecisionTable raw, norm;
  PipelineConfig config;
  ManifestTimings timings;
};

LoadedRun load_run(const CliOptions& opt) {
  LoadedRun run;
  run.config = make_config(opt);
  auto t0 = std::chrono::steady_clock::now();
  run.raw = load_table(opt.data, opt.label_col, opt.positive);
  run.norm = normalize_minmax(run.raw);
  run.timings.load_ms = ms_since(t0);
  return run;
}

void write_failure_log(const CliOptions& opt, const LoadedRun& run,
                       const std::string& message) {
  if (opt.out_dir.empty()) return;
  std::error_code ec;
  std::filesystem::create_directories(opt.out_dir, ec);
  std::ofstream out(opt.out_dir + "/manifest.txt");
  if (!out) return;
  write_manifest_header(out, run.config, run.raw);
  out << "[error]\n" << message << '\n';
}

int cmd_reduce(const CliOptions& opt) {
  LoadedRun run = load_run(opt);
  try {
    auto t0 = std::chrono::steady_clock::now();
    SelectionResult sel = iterate_feature_selection(run.norm, run.config);
    run.timings.train_ms = ms_since(t0);
    for (int a : sel.reduct.attrs)
      std::cout << run.norm.feature_names[static_cast<std::size_t>(a)]
                << '\n';
    std::cout << "delta " << fmt_double(sel.reduct.delta) << " beta "
              << fmt_double(sel.reduct.beta) << " attrs "
              << sel.reduct.attrs.size() << "/" << run.norm.m << '\n';
    if (!opt.out_dir.empty()) {
      std::error_code ec;
      std::filesystem::create_directories(opt.out_dir, ec);
      auto out = open_out(opt.out_dir + "/manifest.txt", "manifest");
      write_manifest_header(out, run.config, run.raw);
      write_selection_sections(out, sel, run.norm);
      write_manifest_timings(out, run.timings);
    }
    return 0;
  } catch (const Error& e) {
    write_failure_log(opt, run, e.what());
    std::cerr << "frbc: " << e.what() << '\n';
    return 2;
  }
}

int cmd_bicluster(const CliOptions& opt) {
  LoadedRun run = load_run(opt);
  try {
    auto t0 = std::chrono::steady_clock::now();
    SelectionResult sel = iterate_feature_selection(run.norm, run.config);
    run.timings.train_ms = ms_since(t0);
    if (!opt.dump_biclusters.empty()) {
      auto out = open_out(opt.dump_biclusters, "bicluster dump");
      write_bicluster_dump(out, sel.biclusters, run.norm);
    } else {
      write_bicluster_dump(std::cout, sel.biclusters, run.norm);
    }
    if (!opt.out_dir.empty()) {
      std::error_code ec;
      std::filesystem::create_directories(opt.out_dir, ec);
      auto out = open_out(opt.out_dir + "/manifest.txt", "manifest");
      write_manifest_header(out, run.config, run.raw);
      write_selection_sections(out, sel, run.norm);
      out << "[biclusters]\n";
      write_bicluster_dump(out, sel.biclusters, run.norm);
      write_manifest_timings(out, run.timings);
    }
    return 0;
  } catch (const Error& e) {
    write_failure_log(opt, run, e.what());
    std::cerr << "frbc: " << e.what() << '\n';
    return 2;
  }
}

int cmd_train(const CliOptions& opt) {
  LoadedRun run = load_run(opt);
  try {
    auto t0 = std::chrono::steady_clock::now();
    TrainedModel model = train_pipeline(run.norm, run.config);
    run.timings.train_ms = ms_since(t0);

    t0 = std::chrono::steady_clock::now();
    std::vector<int> predicted;
    std::vector<double> margins;
    predicted.reserve(run.norm.n);
    margins.reserve(run.norm.n);
    for (std::size_t i = 0; i < run.norm.n; ++i) {
      predicted.push_back(strong_classify(model.strong, run.norm.row(i),
                                          model.strong.majority_label));
      margins.push_back(decision_margin(model.strong, run.norm.row(i)));
    }
    ConfusionMetrics metrics = confusion_metrics(predicted, run.norm.labels);
    RocCurve roc = roc_curve(margins, run.norm.labels);
    run.timings.evaluate_ms = ms_since(t0);

    std::cout << "outcome " << model.log.outcome << '\n';
    std::cout << "rules " << model.rules.size() << " members "
              << model.strong.members.size() << '\n';
    std::cout << "train_accuracy "
              << (metrics.accuracy ? fmt_double(*metrics.accuracy) : "absent")
              << " train_auc " << fmt_double(roc.auc) << '\n';

    if (!opt.dump_biclusters.empty()) {
      auto out = open_out(opt.dump_biclusters, "bicluster dump");
      write_bicluster_dump(out, model.biclusters, run.norm);
    }
    if (!opt.dump_rules.empty()) {
      auto out = open_out(opt.dump_rules, "rule dump");
      write_rule_dump(out, model.rules, run.norm);
    }
    if (!opt.roc_out.empty()) {
      auto out = open_out(opt.roc_out, "roc");
      write_roc(out, roc);
    }
    if (!opt.out_dir.empty()) {
      std::error_code ec;
      std::filesystem::create_directories(opt.out_dir, ec);
      auto out = open_out(opt.out_dir + "/manifest.txt", "manifest");
      write_manifest_header(out, run.config, run.raw);
      write_manifest_training(out, model, run.norm);
      write_manifest_metrics_train(out, metrics, roc);
      write_manifest_timings(out, run.timings);
      auto model_out = open_out(opt.out_dir + "/model.txt", "model");
      write_model(model_out, model.strong);
    }
    return 0;
  } catch (const Error& e) {
    write_failure_log(opt, run, e.what());
    std::cerr << "frbc: " << e.what() << '\n';
    return 2;
  }
}

int cmd_crossval(const CliOptions& opt) {
  LoadedRun run = load_run(opt);
  try {
    auto t0 = std::chrono::steady_clock::now();
    CvReport report = cross_validate(run.raw, run.config, opt.folds);
    run.timings.train_ms = ms_since(t0);

    std::cout << "folds " << report.plan.k << " failed " << report.n_failed
              << '\n';
    std::cout << "mean_accuracy "
              << (report.mean_accuracy ? fmt_double(*report.mean_accuracy)
                                       : "absent")
              << '\n';
    std::cout << "mean_auc "
              << (report.mean_auc ? fmt_double(*report.mean_auc) : "absent")
              << '\n';

    if (!opt.roc_out.empty()) {
      if (report.pooled_roc.fpr.empty())
        throw Error("cli", "no pooled ROC available (degenerate folds)");
      auto out = open_out(opt.roc_out, "roc");
      write_roc(out, report.pooled_roc);
    }
    if (!opt.out_dir.empty()) {
      std::error_code ec;
      std::filesystem::create_directories(opt.out_dir, ec);
      auto out = open_out(opt.out_dir + "/manifest.txt", "manifest");
      write_manifest_header(out, run.config, run.raw);
      write_manifest_metrics_cv(out, report);
      write_manifest_timings(out, run.timings);
    }
    return 0;
  } catch (const Error& e) {
    write_failure_log(opt, run, e.what());
    std::cerr << "frbc: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"fuzzy rule-based binary classifier"};
  app.require_subcommand(1);
  CliOptions opt;

  auto add_data_flags = [&opt](CLI::App* cmd) {
    cmd->add_option("--data", opt.data, "CSV data file")->required();
    cmd->add_option("--label-col", opt.label_col,
                    "label column name or 0-based index")
        ->required();
    cmd->add_option("--positive", opt.positive,
                    "label value mapped to the positive class")
        ->required();
    cmd->add_option("--config", opt.config_path, "key = value config file");
    cmd->add_option("--out", opt.out_dir, "manifest output directory");
    cmd->add_option("--seed", opt.seed, "RNG seed (overrides config)")
        ->each([&opt](const std::string&) { opt.seed_given = true; });
    cmd->add_flag("--no-fcf", opt.no_fcf, "disable the feature selection loop");
    cmd->add_flag("--no-fr", opt.no_fr, "harden rule memberships to 0/1");
  };

  CLI::App* reduce = app.add_subcommand("reduce", "feature selection only");
  add_data_flags(reduce);
  CLI::App* bicluster =
      app.add_subcommand("bicluster", "selection plus bicluster dump");
  add_data_flags(bicluster);
  bicluster->add_option("--dump-biclusters", opt.dump_biclusters,
                        "bicluster dump path (default stdout)");
  CLI::App* train = app.add_subcommand("train", "full pipeline, model export");
  add_data_flags(train);
  train->add_option("--dump-biclusters", opt.dump_biclusters,
                    "bicluster dump path");
  train->add_option("--dump-rules", opt.dump_rules, "rule dump path");
  train->add_option("--roc-out", opt.roc_out, "training ROC points path");
  CLI::App* crossval = app.add_subcommand("crossval", "k-fold cross validation");
  add_data_flags(crossval);
  crossval->add_option("--folds", opt.folds, "fold count (default 10)");
  crossval->add_option("--roc-out", opt.roc_out, "pooled ROC points path");
  CLI::App* ranks =
      app.add_subcommand("ranks", "Friedman ranks over a score table");
  ranks->add_option("--scores", opt.scores_path,
                    "CSV: dataset,method scores per row")
      ->required();
  ranks->add_option("--out", opt.out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (reduce->parsed()) return cmd_reduce(opt);
    if (bicluster->parsed()) return cmd_bicluster(opt);
    if (train->parsed()) return cmd_train(opt);
    if (crossval->parsed()) return cmd_crossval(opt);
    return cmd_ranks(opt);
  } catch (const Error& e) {
    // Failures before the pipeline starts (unreadable data, bad config)
    // are usage errors.
    std::cerr << "frbc: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace frbc
