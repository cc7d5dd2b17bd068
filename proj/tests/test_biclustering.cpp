#include "frbc/biclustering.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "frbc/dataset.hpp"
#include "frbc/error.hpp"
#include "oracles.hpp"
#include "util.hpp"

using frbc::Bicluster;
using frbc::cluster_column;
using frbc::column_entropy;
using frbc::DecisionTable;
using frbc::extract_seeds;
using frbc::grow_from_seed;
using frbc::GrowLimits;
using frbc::integrate_biclusters;
using frbc::mean_entropy_score;
using frbc::support_degree;

namespace {

DecisionTable make_table(const std::vector<std::vector<double>>& rows,
                         const std::vector<int>& labels) {
  DecisionTable t;
  t.n = rows.size();
  t.m = rows.empty() ? 0 : rows[0].size();
  for (const auto& r : rows)
    t.values.insert(t.values.end(), r.begin(), r.end());
  t.labels = labels;
  for (std::size_t j = 0; j < t.m; ++j)
    t.feature_names.push_back("f" + std::to_string(j));
  t.label_a = "pos";
  t.label_b = "neg";
  return t;
}

bool close(double a, double b, double tol = 1e-12) {
  return std::fabs(a - b) <= tol;
}

Bicluster stub(std::vector<int> rows, std::vector<int> cols, double mes,
               int n_a, int n_b) {
  Bicluster bc;
  bc.rows = std::move(rows);
  bc.cols = std::move(cols);
  bc.mes = mes;
  bc.n_a = n_a;
  bc.n_b = n_b;
  bc.support = support_degree(bc);
  return bc;
}

}  // namespace

TEST_CASE("one-dimensional single linkage splits at gaps wider than t") {
  using VV = std::vector<std::vector<int>>;

  CHECK(cluster_column({0.1, 0.12, 0.5}, 0.1) == VV{{0, 1}, {2}});
  // a gap of exactly t still merges
  CHECK(cluster_column({0.1, 0.2, 0.31}, 0.1) == VV{{0, 1}, {2}});
  CHECK(cluster_column({0.5, 0.5, 0.5}, 0.0) == VV{{0, 1, 2}});
  CHECK(cluster_column({0.3, 0.1, 0.2}, 0.1) == VV{{1, 2, 0}});  // unsorted in
  CHECK(cluster_column({0.3, 0.1, 0.25}, 0.01) == VV{{1}, {2}, {0}});
  CHECK(cluster_column({}, 0.1).empty());
  CHECK_THROWS_AS(cluster_column({0.1}, -0.5), frbc::Error);

  // equals literal agglomerative single linkage, ties and all
  testutil::Rng rng(101);
  for (int it = 0; it < 60; ++it) {
    const std::size_t n = 1 + rng.below(12);
    std::vector<double> vals(n);
    for (auto& v : vals) v = 0.05 * static_cast<double>(rng.below(21));
    for (double t : {0.0, 0.05, 0.1, 0.25}) {
      CHECK(cluster_column(vals, t) == oracle::slink(vals, t));
    }
  }
}

TEST_CASE("column entropy over cluster sizes") {
  // one tight cluster scores 0, all singletons score log2(n)
  auto t = make_table({{0.50, 0.00}, {0.51, 0.30}, {0.52, 0.60}, {0.53, 1.00}},
                      {1, 1, -1, -1});
  const std::vector<int> all{0, 1, 2, 3};
  CHECK(close(column_entropy(t, all, 0, 0.1), 0.0));
  CHECK(column_entropy(t, all, 1, 0.1) == 2.0);

  // sizes {2,2} on 4 rows: log2(4) - (2*1 + 2*1)/4 = 1
  auto t2 = make_table({{0.00}, {0.01}, {0.50}, {0.51}}, {1, 1, -1, -1});
  CHECK(column_entropy(t2, all, 0, 0.1) == 1.0);

  CHECK(close(mean_entropy_score(t, all, {0, 1}, 0.1),
              (column_entropy(t, all, 0, 0.1) + column_entropy(t, all, 1, 0.1)) / 2));
  CHECK_THROWS_AS(mean_entropy_score(t, all, {}, 0.1), frbc::Error);
  CHECK_THROWS_AS(column_entropy(t, all, 7, 0.1), frbc::Error);

  // matches the reference on random subsets
  testutil::Rng rng(103);
  for (int it = 0; it < 40; ++it) {
    const std::size_t n = 8;
    std::vector<std::vector<double>> rows(n, std::vector<double>(3));
    std::vector<int> labels(n, 1);
    for (auto& r : rows)
      for (auto& v : r) v = 0.05 * static_cast<double>(rng.below(21));
    auto tr = make_table(rows, labels);
    std::vector<int> subset;
    for (std::size_t i = 0; i < n; ++i)
      if (rng.below(2) == 0) subset.push_back(static_cast<int>(i));
    if (subset.empty()) subset.push_back(0);
    for (int c = 0; c < 3; ++c)
      CHECK(column_entropy(tr, subset, c, 0.1) ==
            oracle::col_entropy(tr, subset, c, 0.1));
  }
}

TEST_CASE("seeds come from per-column clusters, large first") {
  // column 0: clusters {0,1}, {2,3,4}, {5}; column 1: one cluster of all 6
  auto t = make_table({{0.00, 0.5},
                       {0.02, 0.5},
                       {0.50, 0.5},
                       {0.52, 0.5},
                       {0.54, 0.5},
                       {1.00, 0.5}},
                      {1, 1, 1, -1, -1, -1});
  const auto seeds = extract_seeds(t, {0, 1}, 0.1, 2);
  REQUIRE(seeds.size() == 3);
  CHECK(seeds[0] == std::vector<int>{2, 3, 4});  // biggest cluster of col 0
  CHECK(seeds[1] == std::vector<int>{0, 1});
  CHECK(seeds[2] == std::vector<int>{0, 1, 2, 3, 4, 5});

  // size ties order by lowest first row
  auto t2 = make_table({{0.9}, {0.0}, {0.92}, {0.02}}, {1, 1, -1, -1});
  const auto s2 = extract_seeds(t2, {0}, 0.1, 2);
  REQUIRE(s2.size() == 2);
  CHECK(s2[0] == std::vector<int>{0, 2});
  CHECK(s2[1] == std::vector<int>{1, 3});

  // min_rows filters
  CHECK(extract_seeds(t2, {0}, 0.1, 3).empty());
}

TEST_CASE("growing a bicluster by greedy deletion") {
  GrowLimits lim;  // t=0.1, eps=0.2, floors 2/2

  SUBCASE("noise columns are deleted, coherent block kept") {
    auto t = make_table({{0.50, 0.20, 0.00},
                         {0.52, 0.22, 0.90},
                         {0.54, 0.24, 0.30},
                         {0.50, 0.20, 0.60},
                         {0.90, 0.90, 0.45}},
                        {1, 1, 1, -1, -1});
    const auto bc = grow_from_seed(t, {0, 1, 2, 3}, {0, 1, 2}, lim);
    CHECK(bc.rows == std::vector<int>{0, 1, 2, 3});
    CHECK(bc.cols == std::vector<int>{0, 1});
    CHECK(bc.mes < 0.2);
    CHECK(bc.n_a == 3);
    CHECK(bc.n_b == 1);
    CHECK(close(bc.support, 0.75));
    REQUIRE(bc.representatives.size() == 2);
    CHECK(close(bc.representatives[0], (0.50 + 0.52 + 0.54 + 0.50) / 4));
    CHECK(close(bc.representatives[1], (0.20 + 0.22 + 0.24 + 0.20) / 4));
  }

  SUBCASE("floors stop deletion") {
    auto t = make_table({{0.0, 1.0}, {0.5, 0.0}, {1.0, 0.5}}, {1, -1, 1});
    const auto bc = grow_from_seed(t, {0, 1, 2}, {0, 1}, lim);
    // everything is a singleton cluster; scores stay high but nothing may
    // shrink below 2 rows / 2 cols, and the first row deletion is tried
    CHECK(static_cast<int>(bc.rows.size()) >= lim.min_rows);
    CHECK(static_cast<int>(bc.cols.size()) >= lim.min_cols);
  }

  SUBCASE("stops when the best admissible move raises the score") {
    // col 0 splits if the interior row leaves; col 1 loses its pair cluster
    // either way; every single deletion raises the mean entropy
    auto t = make_table({{0.00, 0.00}, {0.16, 0.05}, {0.08, 0.50}},
                        {1, 1, -1});
    const double start = mean_entropy_score(t, {0, 1, 2}, {0, 1}, lim.t);
    CHECK(start > lim.eps_mes);
    const auto bc = grow_from_seed(t, {0, 1, 2}, {0, 1}, lim);
    CHECK(bc.rows == std::vector<int>{0, 1, 2});
    CHECK(bc.cols == std::vector<int>{0, 1});
    CHECK(close(bc.mes, start));
  }

  SUBCASE("already-coherent seeds stop immediately") {
    auto t = make_table({{0.1, 0.1}, {0.11, 0.11}, {0.12, 0.12}}, {1, 1, -1});
    const auto bc = grow_from_seed(t, {0, 1, 2}, {0, 1}, lim);
    CHECK(bc.rows.size() == 3);
    CHECK(bc.cols.size() == 2);
    CHECK(close(bc.mes, 0.0));
  }

  SUBCASE("matches full-recomputation reference on random tables") {
    testutil::Rng rng(107);
    for (int it = 0; it < 25; ++it) {
      const std::size_t n = 8 + rng.below(6);
      std::vector<std::vector<double>> rows(n, std::vector<double>(4));
      std::vector<int> labels(n);
      for (std::size_t i = 0; i < n; ++i) {
        labels[i] = i % 2 == 0 ? 1 : -1;
        for (auto& v : rows[i])
          v = it % 2 == 0 ? 0.05 * static_cast<double>(rng.below(21))
                          : rng.uniform();
      }
      auto tr = make_table(rows, labels);
      std::vector<int> seed;
      for (std::size_t i = 0; i < n; ++i)
        if (rng.below(2) == 0) seed.push_back(static_cast<int>(i));
      while (seed.size() < 3) seed.push_back(static_cast<int>(rng.below(n)));
      const auto got = grow_from_seed(tr, seed, {0, 1, 2, 3}, lim);
      const auto want =
          oracle::grow(tr, seed, {0, 1, 2, 3}, lim.t, lim.eps_mes,
                       lim.min_rows, lim.min_cols);
      CHECK(got.rows == want.rows);
      CHECK(got.cols == want.cols);
      CHECK(close(got.mes, want.mes));
      // the score never rises along the accepted path
      std::vector<int> sseed(seed);
      std::sort(sseed.begin(), sseed.end());
      sseed.erase(std::unique(sseed.begin(), sseed.end()), sseed.end());
      CHECK(got.mes <= oracle::mes(tr, sseed, {0, 1, 2, 3}, lim.t) + 1e-12);
    }
  }

  SUBCASE("input validation") {
    auto t = make_table({{0.1}, {0.2}}, {1, -1});
    CHECK_THROWS_AS(grow_from_seed(t, {}, {0}, lim), frbc::Error);
    CHECK_THROWS_AS(grow_from_seed(t, {0}, {}, lim), frbc::Error);
    CHECK_THROWS_AS(grow_from_seed(t, {9}, {0}, lim), frbc::Error);
    CHECK_THROWS_AS(grow_from_seed(t, {0}, {4}, lim), frbc::Error);
  }
}

TEST_CASE("support degree") {
  CHECK(close(support_degree(stub({0, 1, 2, 3}, {0}, 0.0, 3, 1)), 0.75));
  CHECK(close(support_degree(stub({0, 1}, {0}, 0.0, 1, 1)), 0.5));
  CHECK(close(support_degree(stub({0}, {0}, 0.0, 0, 1)), 1.0));
  CHECK(support_degree(stub({}, {0}, 0.0, 0, 0)) == 0.0);
}

TEST_CASE("integrating near-duplicate biclusters") {
  SUBCASE("the lower score wins; ties go to support, then listing order") {
    auto a = stub({0, 1, 2}, {0, 1}, 0.10, 3, 0);
    auto b = stub({0, 1, 2}, {0, 1}, 0.05, 2, 1);
    auto kept = integrate_biclusters({a, b}, 0.8);
    REQUIRE(kept.size() == 1);
    CHECK(close(kept[0].mes, 0.05));

    auto c = stub({0, 1, 2}, {0, 1}, 0.10, 2, 1);  // same mes, lower support
    kept = integrate_biclusters({c, a}, 0.8);
    REQUIRE(kept.size() == 1);
    CHECK(kept[0].n_a == 3);  // a wins on support

    auto a2 = a;
    kept = integrate_biclusters({a, a2}, 0.8);
    REQUIRE(kept.size() == 1);  // full tie keeps the first
  }

  SUBCASE("overlap below the threshold keeps both") {
    auto a = stub({0, 1, 2, 3, 4}, {0, 1}, 0.10, 5, 0);
    auto b = stub({5, 6, 7, 8, 9}, {0, 1}, 0.05, 5, 0);
    const auto kept = integrate_biclusters({a, b}, 0.8);
    CHECK(kept.size() == 2);

    // rows overlap 4/6 = 0.67 < 0.8 even though columns are identical
    auto c = stub({0, 1, 2, 3, 4}, {0, 1}, 0.10, 5, 0);
    auto d = stub({1, 2, 3, 4, 5}, {0, 1}, 0.05, 5, 0);
    CHECK(integrate_biclusters({c, d}, 0.8).size() == 2);
    // 9/11 = 0.82 >= 0.8 merges
    auto e = stub({0, 1, 2, 3, 4, 5, 6, 7, 8, 9}, {0, 1}, 0.10, 10, 0);
    auto f = stub({0, 1, 2, 3, 4, 5, 6, 7, 8, 10}, {0, 1}, 0.05, 10, 0);
    CHECK(integrate_biclusters({e, f}, 0.8).size() == 1);
  }

  SUBCASE("survivors keep their input order and later pairs are rechecked") {
    auto a = stub({0, 1, 2, 3}, {0, 1}, 0.05, 4, 0);
    auto b = stub({0, 1, 2, 3}, {0, 1}, 0.10, 4, 0);  // killed by a
    auto c = stub({7, 8, 9}, {2, 3}, 0.3, 3, 0);
    const auto kept = integrate_biclusters({b, a, c}, 0.8);
    REQUIRE(kept.size() == 2);
    CHECK(close(kept[0].mes, 0.05));
    CHECK(kept[1].cols == std::vector<int>{2, 3});
  }
}
