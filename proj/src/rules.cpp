#include "frbc/rules.hpp"

#include <algorithm>
#include <cstddef>
#include <tuple>
#include <vector>

#include "frbc/error.hpp"
#include "frbc/fuzzy_rough.hpp"

namespace frbc {

namespace {

double dominant(const Rule& r) { return std::max(r.m_a, r.m_b); }

double pair_weight(const Rule& a, const Rule& b) {
  return static_cast<double>(a.n_source_rows) * dominant(a) +
         static_cast<double>(b.n_source_rows) * dominant(b);
}

double match_score(const Rule& r, std::span<const double> row, double tau) {
  double acc = 0.0;
  for (std::size_t k = 0; k < r.cols.size(); ++k) {
    const int c = r.cols[k];
    if (c < 0 || static_cast<std::size_t>(c) >= row.size())
      throw Error("rules", "rule column out of range for the sample");
    acc += covering_membership(row[c], r.values[k], tau);
  }
  return acc / static_cast<double>(r.cols.size());
}

}  // namespace

Rule extract_rule(const Bicluster& bc) {
  if (bc.cols.empty()) throw Error("rules", "bicluster has no columns");
  const int total = bc.n_a + bc.n_b;
  if (total == 0) throw Error("rules", "bicluster has no rows");
  Rule r;
  r.cols = bc.cols;
  r.values = bc.representatives;
  r.m_a = static_cast<double>(bc.n_a) / static_cast<double>(total);
  r.m_b = static_cast<double>(bc.n_b) / static_cast<double>(total);
  r.n_source_rows = total;
  return r;
}

int assign_rule_class(const Rule& rule) { return rule.m_a > rule.m_b ? 1 : -1; }

std::vector<WeakClassifier> build_weak_classifiers(
    const std::vector<Rule>& rules, std::size_t cap) {
  std::vector<std::size_t> a_ids, b_ids;
  for (std::size_t i = 0; i < rules.size(); ++i)
    (assign_rule_class(rules[i]) > 0 ? a_ids : b_ids).push_back(i);
  if (a_ids.empty()) throw Error("rules", "no rule for the positive class");
  if (b_ids.empty()) throw Error("rules", "no rule for the negative class");

  // (a index, b index) pairs in lexicographic order of the source rule ids
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a : a_ids)
    for (std::size_t b : b_ids) pairs.emplace_back(a, b);

  if (cap > 0 && pairs.size() > cap) {
    // keep the heaviest pairs; stable sort preserves lexicographic order
    // among equal weights, and survivors return to lexicographic order
    std::stable_sort(pairs.begin(), pairs.end(),
                     [&](const auto& x, const auto& y) {
                       return pair_weight(rules[x.first], rules[x.second]) >
                              pair_weight(rules[y.first], rules[y.second]);
                     });
    pairs.resize(cap);
    std::sort(pairs.begin(), pairs.end());
  }

  std::vector<WeakClassifier> pool;
  pool.reserve(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    WeakClassifier wc;
    wc.rule_a = rules[pairs[i].first];
    wc.rule_b = rules[pairs[i].second];
    wc.id = static_cast<int>(i);
    pool.push_back(std::move(wc));
  }
  return pool;
}

WeakVote weak_classify(const WeakClassifier& wc, std::span<const double> row,
                       double tau) {
  const double sa = match_score(wc.rule_a, row, tau);
  const double sb = match_score(wc.rule_b, row, tau);
  WeakVote v;
  bool pick_a;
  if (sa != sb)
    pick_a = sa > sb;
  else if (dominant(wc.rule_a) != dominant(wc.rule_b))
    pick_a = dominant(wc.rule_a) > dominant(wc.rule_b);
  else
    pick_a = true;
  v.label = pick_a ? 1 : -1;
  v.membership = dominant(pick_a ? wc.rule_a : wc.rule_b);
  return v;
}

}  // namespace frbc
