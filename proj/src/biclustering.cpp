#include "frbc/biclustering.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "frbc/error.hpp"

namespace frbc {

namespace {

// All entropy sums below run left to right over cluster sizes in axis order
// so that independently written evaluators produce bit-identical doubles.
double entropy_from_sizes(const std::vector<int>& sizes, int n) {
  if (n <= 1) return 0.0;
  double acc = 0.0;
  for (int s : sizes)
    if (s > 0) acc += static_cast<double>(s) * std::log2(static_cast<double>(s));
  return std::log2(static_cast<double>(n)) - acc / static_cast<double>(n);
}

std::vector<int> cluster_sizes(const std::vector<double>& sorted_vals, double t) {
  std::vector<int> sizes;
  for (std::size_t i = 0; i < sorted_vals.size(); ++i) {
    if (i == 0 || sorted_vals[i] - sorted_vals[i - 1] > t)
      sizes.push_back(1);
    else
      ++sizes.back();
  }
  return sizes;
}

// How deleting one row changes one column's cluster-size list.
struct RowEffect {
  int cluster = 0;   // axis-order cluster index
  bool split = false;
  int left = 0, right = 0;  // split sizes; unused when !split
};

struct ColumnState {
  std::vector<int> sorted_rows;   // current rows ordered by (value, row)
  std::vector<int> sizes;         // cluster sizes in axis order
  double entropy = 0.0;
  std::vector<RowEffect> effect_by_pos;  // parallel to sorted_rows
};

}  // namespace

std::vector<std::vector<int>> cluster_column(const std::vector<double>& values,
                                             double t) {
  if (t < 0.0) throw Error("biclustering", "cluster distance must be >= 0");
  std::vector<int> order(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (values[a] != values[b]) return values[a] < values[b];
    return a < b;
  });
  std::vector<std::vector<int>> clusters;
  for (std::size_t p = 0; p < order.size(); ++p) {
    if (p == 0 || values[order[p]] - values[order[p - 1]] > t)
      clusters.emplace_back();
    clusters.back().push_back(order[p]);
  }
  return clusters;
}

double column_entropy(const DecisionTable& table, const std::vector<int>& rows,
                      int col, double t) {
  if (col < 0 || static_cast<std::size_t>(col) >= table.m)
    throw Error("biclustering", "column out of range");
  std::vector<double> vals;
  vals.reserve(rows.size());
  for (int r : rows) vals.push_back(table.at(r, col));
  std::sort(vals.begin(), vals.end());
  return entropy_from_sizes(cluster_sizes(vals, t),
                            static_cast<int>(rows.size()));
}

double mean_entropy_score(const DecisionTable& table,
                          const std::vector<int>& rows,
                          const std::vector<int>& cols, double t) {
  if (cols.empty()) throw Error("biclustering", "no columns");
  double acc = 0.0;
  for (int c : cols) acc += column_entropy(table, rows, c, t);
  return acc / static_cast<double>(cols.size());
}

std::vector<std::vector<int>> extract_seeds(const DecisionTable& table,
                                            const std::vector<int>& cols,
                                            double t, int min_rows) {
  std::vector<std::vector<int>> seeds;
  for (int c : cols) {
    if (c < 0 || static_cast<std::size_t>(c) >= table.m)
      throw Error("biclustering", "column out of range");
    std::vector<double> vals(table.n);
    for (std::size_t i = 0; i < table.n; ++i) vals[i] = table.at(i, c);
    auto clusters = cluster_column(vals, t);
    std::vector<std::vector<int>> keep;
    for (auto& cl : clusters) {
      if (static_cast<int>(cl.size()) < min_rows) continue;
      std::sort(cl.begin(), cl.end());
      keep.push_back(std::move(cl));
    }
    std::stable_sort(keep.begin(), keep.end(),
                     [](const std::vector<int>& a, const std::vector<int>& b) {
                       if (a.size() != b.size()) return a.size() > b.size();
                       return a.front() < b.front();
                     });
    for (auto& s : keep) seeds.push_back(std::move(s));
  }
  return seeds;
}

double support_degree(const Bicluster& bc) {
  const int total = bc.n_a + bc.n_b;
  if (total == 0) return 0.0;
  return static_cast<double>(std::max(bc.n_a, bc.n_b)) /
         static_cast<double>(total);
}

Bicluster grow_from_seed(const DecisionTable& table,
                         const std::vector<int>& seed_rows,
                         const std::vector<int>& cols,
                         const GrowLimits& limits) {
  if (seed_rows.empty()) throw Error("biclustering", "empty seed");
  if (cols.empty()) throw Error("biclustering", "no candidate columns");
  if (limits.t < 0.0) throw Error("biclustering", "cluster distance must be >= 0");

  std::vector<int> rows(seed_rows);
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  std::vector<int> cur_cols(cols);
  std::sort(cur_cols.begin(), cur_cols.end());
  cur_cols.erase(std::unique(cur_cols.begin(), cur_cols.end()), cur_cols.end());
  for (int r : rows)
    if (r < 0 || static_cast<std::size_t>(r) >= table.n)
      throw Error("biclustering", "seed row out of range");
  for (int c : cur_cols)
    if (c < 0 || static_cast<std::size_t>(c) >= table.m)
      throw Error("biclustering", "column out of range");

  const double band = 1e-12;
  double mes = 0.0;

  // Rebuilds per-column cluster structure and the per-row deletion effects
  // for the current (rows, cur_cols); returns the canonical MES.
  std::vector<ColumnState> states;
  auto rebuild = [&]() {
    states.assign(cur_cols.size(), ColumnState{});
    const int r = static_cast<int>(rows.size());
    double acc = 0.0;
    for (std::size_t ci = 0; ci < cur_cols.size(); ++ci) {
      const int col = cur_cols[ci];
      ColumnState& st = states[ci];
      st.sorted_rows = rows;
      std::sort(st.sorted_rows.begin(), st.sorted_rows.end(),
                [&](int a, int b) {
                  const double va = table.at(a, col), vb = table.at(b, col);
                  if (va != vb) return va < vb;
                  return a < b;
                });
      // cluster boundaries along the sorted axis
      std::vector<int> start_of_pos(st.sorted_rows.size(), 0);
      for (std::size_t p = 0; p < st.sorted_rows.size(); ++p) {
        if (p == 0 || table.at(st.sorted_rows[p], col) -
                              table.at(st.sorted_rows[p - 1], col) >
                          limits.t) {
          st.sizes.push_back(1);
          start_of_pos[p] = static_cast<int>(p);
        } else {
          ++st.sizes.back();
          start_of_pos[p] = start_of_pos[p - 1];
        }
      }
      st.entropy = entropy_from_sizes(st.sizes, r);
      acc += st.entropy;
      // per-position deletion effects
      st.effect_by_pos.assign(st.sorted_rows.size(), RowEffect{});
      int cluster_idx = -1;
      for (std::size_t p = 0; p < st.sorted_rows.size(); ++p) {
        if (start_of_pos[p] == static_cast<int>(p)) ++cluster_idx;
        RowEffect& eff = st.effect_by_pos[p];
        eff.cluster = cluster_idx;
        const int cs = start_of_pos[p];
        const int ce = cs + st.sizes[cluster_idx] - 1;  // inclusive end
        if (static_cast<int>(p) > cs && static_cast<int>(p) < ce) {
          const double gap = table.at(st.sorted_rows[p + 1], col) -
                             table.at(st.sorted_rows[p - 1], col);
          if (gap > limits.t) {
            eff.split = true;
            eff.left = static_cast<int>(p) - cs;
            eff.right = ce - static_cast<int>(p);
          }
        }
      }
    }
    return acc / static_cast<double>(cur_cols.size());
  };

  // Canonical entropy of one column after deleting the row at position
  // `pos` of its sorted order.
  auto entropy_after_row = [&](const ColumnState& st, int pos, int new_n) {
    double acc = 0.0;
    const RowEffect& eff = st.effect_by_pos[pos];
    for (std::size_t k = 0; k < st.sizes.size(); ++k) {
      if (static_cast<int>(k) == eff.cluster) {
        if (eff.split) {
          if (eff.left > 0)
            acc += static_cast<double>(eff.left) *
                   std::log2(static_cast<double>(eff.left));
          if (eff.right > 0)
            acc += static_cast<double>(eff.right) *
                   std::log2(static_cast<double>(eff.right));
        } else {
          const int s = st.sizes[k] - 1;
          if (s > 0)
            acc += static_cast<double>(s) * std::log2(static_cast<double>(s));
        }
      } else {
        acc += static_cast<double>(st.sizes[k]) *
               std::log2(static_cast<double>(st.sizes[k]));
      }
    }
    if (new_n <= 1) return 0.0;
    return std::log2(static_cast<double>(new_n)) -
           acc / static_cast<double>(new_n);
  };

  mes = rebuild();

  while (true) {
    if (mes < limits.eps_mes) break;

    const int r = static_cast<int>(rows.size());
    const int k = static_cast<int>(cur_cols.size());
    const bool may_drop_row = r - 1 >= std::max(1, limits.min_rows);
    const bool may_drop_col = k - 1 >= std::max(1, limits.min_cols);
    if (!may_drop_row && !may_drop_col) break;

    bool have = false, best_is_row = false;
    std::size_t best_idx = 0;  // row position in `rows` or column position
    double best_mes = 0.0;

    if (may_drop_row) {
      // position of every row in every column's sorted order
      std::vector<std::vector<int>> pos_of(cur_cols.size(),
                                           std::vector<int>(rows.size()));
      std::vector<int> rank_of_row(table.n, -1);
      for (std::size_t i = 0; i < rows.size(); ++i) rank_of_row[rows[i]] = static_cast<int>(i);
      for (std::size_t ci = 0; ci < cur_cols.size(); ++ci)
        for (std::size_t p = 0; p < states[ci].sorted_rows.size(); ++p)
          pos_of[ci][rank_of_row[states[ci].sorted_rows[p]]] = static_cast<int>(p);

      for (std::size_t i = 0; i < rows.size(); ++i) {
        double acc = 0.0;
        for (std::size_t ci = 0; ci < cur_cols.size(); ++ci)
          acc += entropy_after_row(states[ci], pos_of[ci][i], r - 1);
        const double cand = acc / static_cast<double>(k);
        if (!have || cand < best_mes - band) {
          have = true;
          best_is_row = true;
          best_idx = i;
          best_mes = cand;
        }
      }
    }
    if (may_drop_col) {
      for (std::size_t ci = 0; ci < cur_cols.size(); ++ci) {
        double acc = 0.0;
        for (std::size_t cj = 0; cj < cur_cols.size(); ++cj)
          if (cj != ci) acc += states[cj].entropy;
        const double cand = acc / static_cast<double>(k - 1);
        if (!have || cand < best_mes - band) {
          have = true;
          best_is_row = false;
          best_idx = ci;
          best_mes = cand;
        }
      }
    }

    if (!have) break;
    if (best_mes > mes + band) break;  // the best move would raise the score

    if (best_is_row)
      rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(best_idx));
    else
      cur_cols.erase(cur_cols.begin() + static_cast<std::ptrdiff_t>(best_idx));
    mes = rebuild();
  }

  Bicluster bc;
  bc.rows = rows;
  bc.cols = cur_cols;
  bc.mes = mes;
  for (int c : cur_cols) {
    double acc = 0.0;
    for (int rw : rows) acc += table.at(rw, c);
    bc.representatives.push_back(acc / static_cast<double>(rows.size()));
  }
  for (int rw : rows)
    (table.labels[rw] > 0 ? bc.n_a : bc.n_b) += 1;
  bc.support = support_degree(bc);
  return bc;
}

namespace {

double jaccard_sorted(const std::vector<int>& a, const std::vector<int>& b) {
  std::size_t i = 0, j = 0, both = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) {
      ++both;
      ++i;
      ++j;
    } else if (a[i] < b[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  const std::size_t uni = a.size() + b.size() - both;
  if (uni == 0) return 1.0;
  return static_cast<double>(both) / static_cast<double>(uni);
}

}  // namespace

std::vector<Bicluster> integrate_biclusters(std::vector<Bicluster> list,
                                            double jaccard) {
  std::vector<char> alive(list.size(), 1);
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (!alive[i]) continue;
    for (std::size_t j = i + 1; j < list.size(); ++j) {
      if (!alive[j]) continue;
      if (jaccard_sorted(list[i].rows, list[j].rows) < jaccard) continue;
      if (jaccard_sorted(list[i].cols, list[j].cols) < jaccard) continue;
      // near-duplicates: keep the lower score, then the higher support,
      // then the earlier-listed
      bool keep_i;
      if (list[i].mes < list[j].mes - 1e-12)
        keep_i = true;
      else if (list[j].mes < list[i].mes - 1e-12)
        keep_i = false;
      else if (list[i].support != list[j].support)
        keep_i = list[i].support > list[j].support;
      else
        keep_i = true;
      if (keep_i) {
        alive[j] = 0;
      } else {
        alive[i] = 0;
        break;
      }
    }
  }
  std::vector<Bicluster> out;
  for (std::size_t i = 0; i < list.size(); ++i)
    if (alive[i]) out.push_back(std::move(list[i]));
  return out;
}

}  // namespace frbc
