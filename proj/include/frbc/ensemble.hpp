#pragma once

#include <span>
#include <vector>

#include "frbc/dataset.hpp"
#include "frbc/rules.hpp"

namespace frbc {

struct RoundMeta {
  double epsilon = 0.0;  // weighted error of the selected member
  double z = 0.0;        // weight normalizer of the round
};

struct StrongClassifier {
  struct Member {
    WeakClassifier wc;
    double alpha = 0.0;
  };
  std::vector<Member> members;
  std::vector<RoundMeta> rounds;
  double tau = 0.1;        // match radius used by the weak votes
  int majority_label = 1;  // training-set majority, margin-tie fallback
};

// Boosting over a fixed pool: sample weights start uniform; each round
// selects the pool member with the lowest weighted error (ties to the
// lowest pool id) and removes it from the pool, alpha = 0.5*ln((1-e)/e)
// with e clamped to [1e-10, 1-1e-10], then weights are scaled by
// exp(-alpha*y*h) and renormalized. Stops after `rounds` rounds, when the
// best error reaches 0.5, or when the pool empties; throws when no member
// beats 0.5 in the first round. After training, asserts the exponential
// bound: plain-vote training error <= prod_t 2*sqrt(e_t*(1-e_t)).
StrongClassifier adaboost_train(const std::vector<WeakClassifier>& pool,
                                const DecisionTable& table, int rounds,
                                double tau);

// Signed confidence sum_t alpha_t * c_t * h_t where h_t is the member's
// vote and c_t the matched rule's dominant membership.
double decision_margin(const StrongClassifier& strong,
                       std::span<const double> row);

// Sign of the margin; an exactly zero margin falls back to tie_default.
int strong_classify(const StrongClassifier& strong, std::span<const double> row,
                    int tie_default);

}  // namespace frbc
