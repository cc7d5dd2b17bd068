#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace frbc {

// Binary-labelled numeric decision table, row major. Labels are +1 ("A",
// the positive class) or -1 ("B"). Original label strings are kept so
// reports can print them.
struct DecisionTable {
  std::size_t n = 0;  // samples
  std::size_t m = 0;  // condition attributes
  std::vector<double> values;  // n*m, row major
  std::vector<int> labels;     // n entries, +1 or -1
  std::vector<std::string> feature_names;  // m entries
  std::string label_a;  // original string mapped to +1
  std::string label_b;  // original string mapped to -1

  double at(std::size_t i, std::size_t j) const { return values[i * m + j]; }
  std::span<const double> row(std::size_t i) const {
    return {values.data() + i * m, m};
  }
  std::size_t count_label(int y) const;
  int majority_label() const;  // ties go to +1
  DecisionTable select_rows(const std::vector<int>& rows) const;
};

// Loads a comma-separated file. label_col is a column name (requires a
// header row) or a 0-based column index; positive_label names the label
// value mapped to +1. A header row is detected by non-numeric cells in
// the first line. Throws frbc::Error with row/column locations on missing
// file, non-numeric feature cells, empty cells, fewer or more than two
// distinct label values, or ragged rows.
DecisionTable load_table(const std::string& path, const std::string& label_col,
                         const std::string& positive_label);

// Per-column min-max rescale onto [0,1]; constant columns map to 0.
// Idempotent and rank preserving.
DecisionTable normalize_minmax(const DecisionTable& table);

// Fold assignment per sample for stratified k-fold cross validation.
struct FoldPlan {
  int k = 0;
  std::vector<int> fold_of;  // n entries in [0,k)
};

// Deterministic function of (labels, seed, k): samples of each class are
// shuffled by a seeded generator and dealt round-robin, rotating the
// starting fold between classes so fold sizes stay within one sample.
FoldPlan stratified_folds(const std::vector<int>& labels, int k,
                          std::uint64_t seed);

}  // namespace frbc
