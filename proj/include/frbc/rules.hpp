#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "frbc/biclustering.hpp"
#include "frbc/dataset.hpp"

namespace frbc {

// Fuzzy classification rule read off a bicluster: the bicluster's columns
// with their representative values, plus class memberships derived from
// the row label counts. m_a + m_b == 1.
struct Rule {
  std::vector<int> cols;
  std::vector<double> values;
  double m_a = 0.0, m_b = 0.0;
  int n_source_rows = 0;
};

Rule extract_rule(const Bicluster& bc);

// +1 when m_a > m_b, else -1 (exact ties go to the negative class).
int assign_rule_class(const Rule& rule);

// A weak classifier pairs one positive-class rule with one negative-class
// rule. `id` is the pair's position in the built pool.
struct WeakClassifier {
  Rule rule_a, rule_b;
  int id = 0;
};

// All (A-rule, B-rule) pairs in (A id, B id) lexicographic order, capped at
// `cap` pairs ranked by the summed n_source_rows * dominant-membership of
// the two rules, descending (ties keep lexicographic order). Throws when
// either class has no rule.
std::vector<WeakClassifier> build_weak_classifiers(
    const std::vector<Rule>& rules, std::size_t cap);

struct WeakVote {
  int label = 0;          // +1 or -1
  double membership = 0;  // dominant membership of the matched rule
};

// Match score of a rule on a sample: mean over the rule's columns of the
// triangular co-membership of the sample value and the rule value with
// radius tau. The higher-scoring rule decides the vote; score ties go to
// the rule with the larger dominant membership, then to the A rule.
WeakVote weak_classify(const WeakClassifier& wc, std::span<const double> row,
                       double tau);

}  // namespace frbc
