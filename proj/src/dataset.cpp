#include "frbc/dataset.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "frbc/error.hpp"

namespace frbc {

std::size_t DecisionTable::count_label(int y) const {
  return static_cast<std::size_t>(
      std::count(labels.begin(), labels.end(), y));
}

int DecisionTable::majority_label() const {
  return count_label(1) >= count_label(-1) ? 1 : -1;
}

DecisionTable DecisionTable::select_rows(const std::vector<int>& rows) const {
  DecisionTable out;
  out.n = rows.size();
  out.m = m;
  out.feature_names = feature_names;
  out.label_a = label_a;
  out.label_b = label_b;
  out.values.reserve(out.n * m);
  out.labels.reserve(out.n);
  for (int r : rows) {
    auto src = row(static_cast<std::size_t>(r));
    out.values.insert(out.values.end(), src.begin(), src.end());
    out.labels.push_back(labels[static_cast<std::size_t>(r)]);
  }
  return out;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      cells.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  cells.push_back(cur);
  return cells;
}

bool parse_double(const std::string& s, double* out) {
  if (s.empty()) return false;
  const char* begin = s.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (end != begin + s.size()) return false;
  *out = v;
  return true;
}

std::string cell_location(std::size_t line_no, std::size_t col) {
  std::ostringstream os;
  os << "row " << line_no << ", column " << (col + 1);
  return os.str();
}

}  // namespace

DecisionTable load_table(const std::string& path, const std::string& label_col,
                         const std::string& positive_label) {
  std::ifstream in(path);
  if (!in) throw Error("load", "cannot open '" + path + "'");

  std::vector<std::vector<std::string>> lines;
  std::string raw;
  while (std::getline(in, raw)) {
    if (raw.empty() || raw == "\r") continue;
    lines.push_back(split_csv_line(raw));
  }
  if (lines.empty()) throw Error("load", "'" + path + "' has no data rows");

  const std::size_t width = lines[0].size();
  if (width < 2)
    throw Error("load", "'" + path + "' needs at least one feature column "
                        "and one label column");
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].size() != width) {
      std::ostringstream os;
      os << "row " << (i + 1) << " has " << lines[i].size()
         << " cells, expected " << width;
      throw Error("load", os.str());
    }
  }

  // The label column is either a 0-based index or a header name.
  std::size_t label_idx = width;
  bool by_index = false;
  {
    char* end = nullptr;
    long idx = std::strtol(label_col.c_str(), &end, 10);
    if (!label_col.empty() && end == label_col.c_str() + label_col.size()) {
      by_index = true;
      if (idx < 0) idx += static_cast<long>(width);  // -1 = last column
      if (idx < 0 || idx >= static_cast<long>(width))
        throw Error("load", "label column index " + label_col +
                            " out of range for " + std::to_string(width) +
                            " columns");
      label_idx = static_cast<std::size_t>(idx);
    }
  }

  // Header detection: a first line whose non-label cells are not all
  // numeric. When the label column was given by name, a header is required.
  bool has_header = false;
  if (!by_index) {
    has_header = true;
    auto& head = lines[0];
    for (std::size_t j = 0; j < width; ++j) {
      if (head[j] == label_col) {
        label_idx = j;
        break;
      }
    }
    if (label_idx == width)
      throw Error("load",
                  "no header column named '" + label_col + "' in '" + path +
                      "' (give a 0-based index for headerless files)");
  } else {
    for (std::size_t j = 0; j < width && !has_header; ++j) {
      double v;
      if (j != label_idx && !parse_double(lines[0][j], &v)) has_header = true;
    }
  }

  DecisionTable table;
  table.m = width - 1;
  for (std::size_t j = 0; j < width; ++j) {
    if (j == label_idx) continue;
    if (has_header)
      table.feature_names.push_back(lines[0][j]);
    else
      table.feature_names.push_back("f" + std::to_string(j));
  }

  std::map<std::string, int> label_values;  // value -> first row seen
  std::vector<std::string> raw_labels;
  const std::size_t first = has_header ? 1 : 0;
  if (first >= lines.size())
    throw Error("load", "'" + path + "' has a header but no data rows");

  for (std::size_t i = first; i < lines.size(); ++i) {
    for (std::size_t j = 0; j < width; ++j) {
      const std::string& cell = lines[i][j];
      if (j == label_idx) {
        if (cell.empty())
          throw Error("load", "empty label at " + cell_location(i + 1, j));
        label_values.emplace(cell, static_cast<int>(i + 1));
        raw_labels.push_back(cell);
        continue;
      }
      double v;
      if (cell.empty())
        throw Error("load", "missing value at " + cell_location(i + 1, j));
      if (!parse_double(cell, &v))
        throw Error("load", "non-numeric value '" + cell + "' at " +
                            cell_location(i + 1, j));
      table.values.push_back(v);
    }
  }
  table.n = raw_labels.size();

  if (label_values.size() != 2) {
    std::ostringstream os;
    os << "expected exactly 2 label values, found " << label_values.size()
       << " (";
    bool sep = false;
    for (auto& [v, row] : label_values) {
      if (sep) os << ", ";
      os << "'" << v << "' first at row " << row;
      sep = true;
    }
    os << ")";
    throw Error("load", os.str());
  }
  if (!label_values.count(positive_label))
    throw Error("load", "positive label '" + positive_label +
                        "' does not occur in '" + path + "'");

  table.label_a = positive_label;
  for (auto& [v, row] : label_values)
    if (v != positive_label) table.label_b = v;
  table.labels.reserve(table.n);
  for (auto& v : raw_labels)
    table.labels.push_back(v == positive_label ? 1 : -1);
  return table;
}

DecisionTable normalize_minmax(const DecisionTable& table) {
  DecisionTable out = table;
  for (std::size_t j = 0; j < table.m; ++j) {
    double lo = table.at(0, j), hi = table.at(0, j);
    for (std::size_t i = 1; i < table.n; ++i) {
      lo = std::min(lo, table.at(i, j));
      hi = std::max(hi, table.at(i, j));
    }
    for (std::size_t i = 0; i < table.n; ++i) {
      double& v = out.values[i * table.m + j];
      v = (hi > lo) ? (v - lo) / (hi - lo) : 0.0;
    }
  }
  return out;
}

namespace {

// Deterministic generator; the standard shuffle is implementation-defined,
// and fold assignments must be reproducible everywhere.
struct SplitMix64 {
  std::uint64_t state;
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
};

void shuffle_indices(std::vector<int>& idx, SplitMix64& rng) {
  for (std::size_t i = idx.size(); i > 1; --i)
    std::swap(idx[i - 1], idx[rng.next() % i]);
}

}  // namespace

FoldPlan stratified_folds(const std::vector<int>& labels, int k,
                          std::uint64_t seed) {
  const std::size_t n = labels.size();
  if (k < 2 || static_cast<std::size_t>(k) > n)
    throw Error("folds", "k must be in [2, n]; got k=" + std::to_string(k) +
                         ", n=" + std::to_string(n));

  FoldPlan plan;
  plan.k = k;
  plan.fold_of.assign(n, -1);

  SplitMix64 rng{seed};
  int start = 0;
  for (int y : {1, -1}) {
    std::vector<int> idx;
    for (std::size_t i = 0; i < n; ++i)
      if (labels[i] == y) idx.push_back(static_cast<int>(i));
    shuffle_indices(idx, rng);
    for (std::size_t i = 0; i < idx.size(); ++i)
      plan.fold_of[static_cast<std::size_t>(idx[i])] =
          (start + static_cast<int>(i)) % k;
    // Rotate where the next class starts dealing so the leftover samples
    // land on different folds and fold sizes stay within one of another.
    start = (start + static_cast<int>(idx.size() % static_cast<std::size_t>(k))) % k;
  }
  return plan;
}

}  // namespace frbc
