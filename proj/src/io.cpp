#include "frbc/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "frbc/error.hpp"

namespace frbc {

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

double parse_num(const std::string& key, const std::string& s) {
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error("config", "bad numeric value for " + key + ": '" + s + "'");
}

int parse_int(const std::string& key, const std::string& s) {
  double v = parse_num(key, s);
  int i = static_cast<int>(v);
  if (static_cast<double>(i) != v)
    throw Error("config", key + " must be an integer, got '" + s + "'");
  return i;
}

bool parse_bool(const std::string& key, const std::string& s) {
  if (s == "true" || s == "1") return true;
  if (s == "false" || s == "0") return false;
  throw Error("config", key + " must be true or false, got '" + s + "'");
}

}  // namespace

PipelineConfig config_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("config", "cannot open " + path);
  PipelineConfig config;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw Error("config", path + ":" + std::to_string(lineno) +
                                ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key == "delta_grid") {
      std::vector<double> grid;
      std::stringstream ss(value);
      std::string item;
      while (std::getline(ss, item, ','))
        grid.push_back(parse_num(key, trim(item)));
      config.delta_grid = grid;
    } else if (key == "beta") {
      config.beta = parse_num(key, value);
    } else if (key == "support_threshold") {
      config.support_threshold = parse_num(key, value);
    } else if (key == "max_iterations") {
      config.max_iterations = parse_int(key, value);
    } else if (key == "min_good_biclusters") {
      config.min_good_biclusters = parse_int(key, value);
    } else if (key == "t") {
      config.t = parse_num(key, value);
    } else if (key == "tau") {
      config.tau = parse_num(key, value);
    } else if (key == "eps_mes") {
      config.eps_mes = parse_num(key, value);
    } else if (key == "min_rows") {
      config.min_rows = parse_int(key, value);
    } else if (key == "min_cols") {
      config.min_cols = parse_int(key, value);
    } else if (key == "pair_cap") {
      config.pair_cap = parse_int(key, value);
    } else if (key == "rounds") {
      config.rounds = parse_int(key, value);
    } else if (key == "seed") {
      config.seed = static_cast<std::uint64_t>(parse_num(key, value));
    } else if (key == "use_fcf") {
      config.use_fcf = parse_bool(key, value);
    } else if (key == "use_fr") {
      config.use_fr = parse_bool(key, value);
    } else if (key == "e_radius") {
      config.e_radius = parse_num(key, value);
    } else if (key == "grid_size_override") {
      config.grid_size_override = parse_int(key, value);
    } else {
      throw Error("config", path + ":" + std::to_string(lineno) +
                                ": unknown key '" + key + "'");
    }
  }
  return config;
}

namespace {

void write_rule_line(std::ostream& out, const char* tag, const Rule& r) {
  out << tag << " cols";
  for (int c : r.cols) out << ' ' << c;
  out << " values";
  for (double v : r.values) out << ' ' << fmt_double(v);
  out << " m_a " << fmt_double(r.m_a) << " m_b " << fmt_double(r.m_b)
      << " n " << r.n_source_rows << '\n';
}

Rule read_rule_line(std::istream& in, const char* tag) {
  std::string word;
  in >> word;
  if (word != tag) throw Error("model", "expected " + std::string(tag));
  Rule r;
  in >> word;  // "cols"
  while (in >> word && word != "values") r.cols.push_back(std::stoi(word));
  while (in >> word && word != "m_a") r.values.push_back(std::stod(word));
  in >> r.m_a >> word >> r.m_b >> word >> r.n_source_rows;
  if (!in) throw Error("model", "truncated rule record");
  return r;
}

}  // namespace

void write_model(std::ostream& out, const StrongClassifier& strong) {
  out << "frbc-model 1\n";
  out << "tau " << fmt_double(strong.tau) << '\n';
  out << "majority " << strong.majority_label << '\n';
  out << "members " << strong.members.size() << '\n';
  for (const auto& m : strong.members) {
    out << "member alpha " << fmt_double(m.alpha) << " id " << m.wc.id << '\n';
    write_rule_line(out, "rule_a", m.wc.rule_a);
    write_rule_line(out, "rule_b", m.wc.rule_b);
  }
  out << "rounds " << strong.rounds.size() << '\n';
  for (const auto& r : strong.rounds)
    out << "round epsilon " << fmt_double(r.epsilon) << " z "
        << fmt_double(r.z) << '\n';
}

StrongClassifier read_model(std::istream& in) {
  std::string word;
  int version = 0;
  in >> word >> version;
  if (!in || word != "frbc-model" || version != 1)
    throw Error("model", "not a model file (missing frbc-model header)");
  StrongClassifier strong;
  std::size_t n_members = 0, n_rounds = 0;
  in >> word >> strong.tau;
  in >> word >> strong.majority_label;
  in >> word >> n_members;
  if (!in) throw Error("model", "truncated model header");
  for (std::size_t i = 0; i < n_members; ++i) {
    StrongClassifier::Member m;
    in >> word >> word >> m.alpha >> word >> m.wc.id;
    if (!in) throw Error("model", "truncated member record");
    m.wc.rule_a = read_rule_line(in, "rule_a");
    m.wc.rule_b = read_rule_line(in, "rule_b");
    strong.members.push_back(std::move(m));
  }
  in >> word >> n_rounds;
  for (std::size_t i = 0; i < n_rounds; ++i) {
    RoundMeta r;
    in >> word >> word >> r.epsilon >> word >> r.z;
    strong.rounds.push_back(r);
  }
  if (!in) throw Error("model", "truncated round records");
  return strong;
}

void write_bicluster_dump(std::ostream& out,
                          const std::vector<Bicluster>& biclusters,
                          const DecisionTable& table) {
  int idx = 0;
  for (const auto& bc : biclusters) {
    out << "bicluster " << idx++ << " rows " << bc.rows.size() << " cols "
        << bc.cols.size() << " mes " << fmt_double(bc.mes) << " support "
        << fmt_double(bc.support) << " a " << bc.n_a << " b " << bc.n_b
        << '\n';
    for (std::size_t k = 0; k < bc.cols.size(); ++k) {
      int c = bc.cols[k];
      out << "  " << table.feature_names[static_cast<std::size_t>(c)] << " = "
          << fmt_double(bc.representatives[k]) << '\n';
    }
    out << "  row_ids";
    for (int r : bc.rows) out << ' ' << r;
    out << '\n';
  }
}

void write_rule_dump(std::ostream& out, const std::vector<Rule>& rules,
                     const DecisionTable& table) {
  int idx = 0;
  for (const auto& r : rules) {
    out << "rule " << idx++ << " class "
        << (r.m_a > r.m_b ? table.label_a : table.label_b) << " m_a "
        << fmt_double(r.m_a) << " m_b " << fmt_double(r.m_b) << " n "
        << r.n_source_rows << '\n';
    for (std::size_t k = 0; k < r.cols.size(); ++k)
      out << "  " << table.feature_names[static_cast<std::size_t>(r.cols[k])]
          << " = " << fmt_double(r.values[k]) << '\n';
  }
}

void write_roc(std::ostream& out, const RocCurve& roc) {
  out << "# auc " << fmt_double(roc.auc) << '\n';
  for (std::size_t i = 0; i < roc.fpr.size(); ++i)
    out << fmt_double(roc.fpr[i]) << '\t' << fmt_double(roc.tpr[i]) << '\n';
}

std::uint64_t content_hash(const DecisionTable& table) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix_bytes = [&h](const void* data, std::size_t len) {
    const unsigned char* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
      h ^= p[i];
      h *= 1099511628211ull;
    }
  };
  auto mix_u64 = [&](std::uint64_t v) { mix_bytes(&v, sizeof v); };
  mix_u64(table.n);
  mix_u64(table.m);
  mix_bytes(table.values.data(), table.values.size() * sizeof(double));
  for (int y : table.labels) mix_u64(static_cast<std::uint64_t>(y));
  for (const auto& name : table.feature_names)
    mix_bytes(name.data(), name.size());
  mix_bytes(table.label_a.data(), table.label_a.size());
  mix_bytes(table.label_b.data(), table.label_b.size());
  return h;
}

namespace {

void write_config_echo(std::ostream& out, const PipelineConfig& config) {
  out << "[config]\n";
  out << "delta_grid = ";
  for (std::size_t i = 0; i < config.delta_grid.size(); ++i)
    out << (i ? "," : "") << fmt_double(config.delta_grid[i]);
  out << '\n';
  out << "beta = " << fmt_double(config.beta) << '\n';
  out << "support_threshold = " << fmt_double(config.support_threshold)
      << '\n';
  out << "max_iterations = " << config.max_iterations << '\n';
  out << "min_good_biclusters = " << config.min_good_biclusters << '\n';
  out << "t = " << fmt_double(config.t) << '\n';
  out << "tau = " << fmt_double(config.tau) << '\n';
  out << "eps_mes = " << fmt_double(config.eps_mes) << '\n';
  out << "min_rows = " << config.min_rows << '\n';
  out << "min_cols = " << config.min_cols << '\n';
  out << "pair_cap = " << config.pair_cap << '\n';
  out << "rounds = " << config.rounds << '\n';
  out << "seed = " << config.seed << '\n';
  out << "use_fcf = " << (config.use_fcf ? "true" : "false") << '\n';
  out << "use_fr = " << (config.use_fr ? "true" : "false") << '\n';
  out << "e_radius = " << fmt_double(config.e_radius) << '\n';
  out << "grid_size_override = " << config.grid_size_override << '\n';
}

void write_dataset_fingerprint(std::ostream& out, const DecisionTable& table) {
  out << "[dataset]\n";
  out << "rows = " << table.n << '\n';
  out << "cols = " << table.m << '\n';
  out << "label_a = " << table.label_a << " (" << table.count_label(1)
      << ")\n";
  out << "label_b = " << table.label_b << " (" << table.count_label(-1)
      << ")\n";
  char hex[19];
  std::snprintf(hex, sizeof hex, "0x%016llx",
                static_cast<unsigned long long>(content_hash(table)));
  out << "content_hash = " << hex << '\n';
  for (std::size_t j = 0; j < table.m; ++j) {
    double lo = table.at(0, j), hi = lo;
    for (std::size_t i = 1; i < table.n; ++i) {
      lo = std::min(lo, table.at(i, j));
      hi = std::max(hi, table.at(i, j));
    }
    out << "range " << table.feature_names[j] << " = [" << fmt_double(lo)
        << ", " << fmt_double(hi) << "]\n";
  }
}

void write_metric(std::ostream& out, const char* name,
                  const std::optional<double>& v) {
  out << name << " = " << (v ? fmt_double(*v) : "absent") << '\n';
}

}  // namespace

void write_manifest_header(std::ostream& out, const PipelineConfig& config,
                           const DecisionTable& table) {
  write_config_echo(out, config);
  write_dataset_fingerprint(out, table);
}

void write_manifest_training(std::ostream& out, const TrainedModel& model,
                             const DecisionTable& table) {
  out << "[iterations]\n";
  out << "outcome = " << model.log.outcome << '\n';
  for (const auto& rec : model.log.records) {
    out << "iteration " << rec.index << " delta " << fmt_double(rec.delta)
        << " reduct " << rec.reduct.size() << " excluded "
        << rec.excluded.size() << " biclusters " << rec.n_biclusters
        << " good " << rec.n_good << " mean_support "
        << fmt_double(rec.mean_support) << " stop " << rec.stop_reason
        << '\n';
  }
  out << "[reduct]\n";
  out << "delta = " << fmt_double(model.reduct.delta) << '\n';
  out << "beta = " << fmt_double(model.reduct.beta) << '\n';
  for (int a : model.reduct.attrs)
    out << "attr " << a << " "
        << table.feature_names[static_cast<std::size_t>(a)] << '\n';
  out << "[biclusters]\n";
  write_bicluster_dump(out, model.biclusters, table);
  out << "[rules]\n";
  write_rule_dump(out, model.rules, table);
  out << "[model]\n";
  write_model(out, model.strong);
}

void write_manifest_metrics_train(std::ostream& out,
                                  const ConfusionMetrics& metrics,
                                  const RocCurve& roc) {
  out << "[metrics]\n";
  out << "tp = " << metrics.tp << '\n';
  out << "fp = " << metrics.fp << '\n';
  out << "tn = " << metrics.tn << '\n';
  out << "fn = " << metrics.fn << '\n';
  write_metric(out, "accuracy", metrics.accuracy);
  write_metric(out, "precision", metrics.precision);
  write_metric(out, "recall", metrics.recall);
  write_metric(out, "specificity", metrics.specificity);
  out << "train_auc = " << fmt_double(roc.auc) << '\n';
}

void write_manifest_metrics_cv(std::ostream& out, const CvReport& report) {
  out << "[metrics]\n";
  out << "folds = " << report.plan.k << '\n';
  out << "failed = " << report.n_failed << '\n';
  for (std::size_t i = 0; i < report.folds.size(); ++i) {
    const FoldResult& f = report.folds[i];
    out << "fold " << i << " ";
    if (f.failed) {
      out << "failed: " << f.error << '\n';
      continue;
    }
    out << "tp " << f.metrics.tp << " fp " << f.metrics.fp << " tn "
        << f.metrics.tn << " fn " << f.metrics.fn << " accuracy "
        << (f.metrics.accuracy ? fmt_double(*f.metrics.accuracy) : "absent")
        << " auc " << (f.auc ? fmt_double(*f.auc) : "absent") << '\n';
  }
  write_metric(out, "mean_accuracy", report.mean_accuracy);
  write_metric(out, "mean_precision", report.mean_precision);
  write_metric(out, "mean_recall", report.mean_recall);
  write_metric(out, "mean_specificity", report.mean_specificity);
  write_metric(out, "mean_auc", report.mean_auc);
  if (report.pooled_roc.fpr.empty())
    out << "pooled_auc = absent\n";
  else
    out << "pooled_auc = " << fmt_double(report.pooled_roc.auc) << '\n';
}

void write_manifest_timings(std::ostream& out, const ManifestTimings& t) {
  out << "[timings]\n";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.1f", t.load_ms);
  out << "load_ms = " << buf << '\n';
  std::snprintf(buf, sizeof buf, "%.1f", t.train_ms);
  out << "train_ms = " << buf << '\n';
  std::snprintf(buf, sizeof buf, "%.1f", t.evaluate_ms);
  out << "evaluate_ms = " << buf << '\n';
}

}  // namespace frbc
