#pragma once

#include <cstddef>
#include <vector>

#include "frbc/dataset.hpp"

namespace frbc {

// Single-linkage clustering of scalar values with absolute-difference
// distance; merging continues while the minimum inter-cluster distance is
// <= t. In one dimension that reduces to splitting the sorted values
// wherever an adjacent gap exceeds t. Returns clusters as index lists into
// `values`, ordered by position along the sorted axis.
std::vector<std::vector<int>> cluster_column(const std::vector<double>& values,
                                             double t);

// Entropy of one column of the submatrix (rows x col): cluster the
// column's values, then  log2(n) - (1/n) * sum_i p_i*log2(p_i)  over
// cluster sizes p_i. 0 when all values fall in one cluster, log2(n) when
// all are singletons.
double column_entropy(const DecisionTable& table, const std::vector<int>& rows,
                      int col, double t);

// Mean of column_entropy over `cols`.
double mean_entropy_score(const DecisionTable& table,
                          const std::vector<int>& rows,
                          const std::vector<int>& cols, double t);

struct Bicluster {
  std::vector<int> rows;             // ascending, indices into the table
  std::vector<int> cols;             // ascending, original attribute ids
  std::vector<double> representatives;  // per col: mean over rows
  double mes = 0.0;
  double support = 0.0;
  int n_a = 0, n_b = 0;  // row label counts
};

struct GrowLimits {
  double t = 0.1;
  double eps_mes = 0.2;
  int min_rows = 2;
  int min_cols = 2;
};

// One seed per cluster of every column (clusters below min_rows are
// dropped): ordered by column, then by descending cluster size, ties to
// the lowest first row index.
std::vector<std::vector<int>> extract_seeds(const DecisionTable& table,
                                            const std::vector<int>& cols,
                                            double t, int min_rows);

// Greedy deletion from (seed rows, all candidate columns): repeatedly
// remove the single row or column minimizing the resulting MES, prefer a
// row over a column on ties, then the lowest index. Stops when MES drops
// below eps_mes, when no deletion is admissible under the min_rows /
// min_cols floors, or when even the best deletion would raise MES.
// MES never increases along accepted deletions.
Bicluster grow_from_seed(const DecisionTable& table,
                         const std::vector<int>& seed_rows,
                         const std::vector<int>& cols,
                         const GrowLimits& limits);

// max(n_a, n_b) / (n_a + n_b): degree to which one class dominates the
// bicluster's rows.
double support_degree(const Bicluster& bc);

// Deduplicates near-identical biclusters: when both row sets and column
// sets overlap with Jaccard >= jaccard, only the lower-MES one survives
// (ties: higher support, then the earlier-listed). Output preserves the
// input order of survivors.
std::vector<Bicluster> integrate_biclusters(std::vector<Bicluster> list,
                                            double jaccard);

}  // namespace frbc
