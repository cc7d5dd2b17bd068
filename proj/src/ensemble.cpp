#include "frbc/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "frbc/error.hpp"

namespace frbc {

namespace {

constexpr double kEpsFloor = 1e-10;

double clamp_eps(double e) {
  return std::min(std::max(e, kEpsFloor), 1.0 - kEpsFloor);
}

}  // namespace

StrongClassifier adaboost_train(const std::vector<WeakClassifier>& pool,
                                const DecisionTable& table, int rounds,
                                double tau) {
  if (pool.empty()) throw Error("ensemble", "empty weak-classifier pool");
  if (table.n == 0) throw Error("ensemble", "empty training table");
  if (rounds < 1) throw Error("ensemble", "rounds must be >= 1");
  if (!(tau > 0.0)) throw Error("ensemble", "match radius must be > 0");

  const std::size_t n = table.n;
  // votes are fixed per member, so cache them
  std::vector<std::vector<int>> vote(pool.size(), std::vector<int>(n));
  for (std::size_t p = 0; p < pool.size(); ++p)
    for (std::size_t i = 0; i < n; ++i)
      vote[p][i] = weak_classify(pool[p], table.row(i), tau).label;

  StrongClassifier strong;
  strong.tau = tau;
  strong.majority_label = table.majority_label();

  std::vector<double> w(n, 1.0 / static_cast<double>(n));
  std::vector<char> used(pool.size(), 0);
  std::vector<std::size_t> picked;

  for (int t = 0; t < rounds; ++t) {
    // lowest weighted error, ties to the lowest pool id
    std::size_t best = pool.size();
    double best_eps = 0.0;
    for (std::size_t p = 0; p < pool.size(); ++p) {
      if (used[p]) continue;
      double eps = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        if (vote[p][i] != table.labels[i]) eps += w[i];
      if (best == pool.size() || eps < best_eps) {
        best = p;
        best_eps = eps;
      }
    }
    if (best == pool.size()) break;  // pool exhausted
    if (best_eps >= 0.5) {
      if (t == 0)
        throw Error("ensemble",
                    "no weak classifier beats chance on the training set");
      break;
    }

    const double ec = clamp_eps(best_eps);
    const double alpha = 0.5 * std::log((1.0 - ec) / ec);
    used[best] = 1;
    picked.push_back(best);
    strong.members.push_back({pool[best], alpha});

    double z = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      w[i] *= std::exp(-alpha * static_cast<double>(table.labels[i]) *
                       static_cast<double>(vote[best][i]));
      z += w[i];
    }
    for (double& wi : w) wi /= z;
    strong.rounds.push_back({best_eps, z});

    double sum = 0.0;
    for (double wi : w) sum += wi;
    if (std::fabs(sum - 1.0) > 1e-9)
      throw Error("ensemble", "sample weights drifted away from 1");
  }

  // exponential training-error bound on the plain vote: the fraction of
  // training samples with non-positive y * sum(alpha*h) cannot exceed the
  // product of 2*sqrt(e*(1-e)) over the rounds (with e clamped, which only
  // matters for perfect rounds).
  double bound = 1.0;
  for (const auto& r : strong.rounds) {
    const double ec = clamp_eps(r.epsilon);
    bound *= 2.0 * std::sqrt(ec * (1.0 - ec));
  }
  std::size_t wrong = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double f = 0.0;
    for (std::size_t mi = 0; mi < strong.members.size(); ++mi)
      f += strong.members[mi].alpha * static_cast<double>(vote[picked[mi]][i]);
    if (static_cast<double>(table.labels[i]) * f <= 0.0) ++wrong;
  }
  const double train_err =
      static_cast<double>(wrong) / static_cast<double>(n);
  if (train_err > bound + 1e-9)
    throw Error("ensemble", "training error exceeds the exponential bound");

  return strong;
}

double decision_margin(const StrongClassifier& strong,
                       std::span<const double> row) {
  double f = 0.0;
  for (const auto& m : strong.members) {
    const WeakVote v = weak_classify(m.wc, row, strong.tau);
    f += m.alpha * v.membership * static_cast<double>(v.label);
  }
  return f;
}

int strong_classify(const StrongClassifier& strong, std::span<const double> row,
                    int tie_default) {
  const double f = decision_margin(strong, row);
  if (f > 0.0) return 1;
  if (f < 0.0) return -1;
  return tie_default;
}

}  // namespace frbc
