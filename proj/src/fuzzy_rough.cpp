#include "frbc/fuzzy_rough.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <sstream>
#include <vector>

#include "frbc/error.hpp"

namespace frbc {

namespace {

constexpr double kTol = 1e-9;

// Per-attribute similarity of two samples: equal values are fully similar,
// otherwise the best co-membership over the centre grid.
double attr_pair_sim(const CoveringFamily& fam, std::size_t a, std::size_t i,
                     std::size_t j) {
  if (fam.value(i, a) == fam.value(j, a)) return 1.0;
  const std::size_t ng = fam.grid.centers.size();
  double best = 0.0;
  for (std::size_t g = 0; g < ng; ++g) {
    const double* col = fam.column(a, g);
    const double lo = std::min(col[i], col[j]);
    if (lo > best) best = lo;
  }
  return best;
}

std::vector<int> check_attrs(const CoveringFamily& fam,
                             const std::vector<int>& attrs,
                             const char* where) {
  if (attrs.empty()) throw Error("fuzzy_rough", std::string(where) + ": empty attribute set");
  std::vector<int> out(attrs);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  for (int a : out) {
    if (a < 0 || static_cast<std::size_t>(a) >= fam.m) {
      std::ostringstream os;
      os << where << ": attribute " << a << " out of range (m=" << fam.m << ")";
      throw Error("fuzzy_rough", os.str());
    }
  }
  return out;
}

// Cross-class similarity block for one attribute: rows follow idx_a, columns
// follow idx_b. Positive regions of a two-class table only ever consult
// opposite-class pairs, so this is all the relation we need per attribute.
std::vector<double> cross_block(const CoveringFamily& fam, int attr,
                                const std::vector<std::size_t>& idx_a,
                                const std::vector<std::size_t>& idx_b) {
  std::vector<double> blk(idx_a.size() * idx_b.size());
  for (std::size_t i = 0; i < idx_a.size(); ++i)
    for (std::size_t j = 0; j < idx_b.size(); ++j)
      blk[i * idx_b.size() + j] =
          attr_pair_sim(fam, static_cast<std::size_t>(attr), idx_a[i], idx_b[j]);
  return blk;
}

// Positive-region degrees from a cross-class block (or a pointwise min of
// blocks): pos(x) = 1 - max over opposite-class u of R(x,u). With no
// opposite class at all every sample is fully discernible.
void pos_from_block(const std::vector<double>& blk,
                    const std::vector<std::size_t>& idx_a,
                    const std::vector<std::size_t>& idx_b,
                    std::vector<double>& pos) {
  const std::size_t na = idx_a.size(), nb = idx_b.size();
  for (std::size_t i = 0; i < na; ++i) {
    double mx = 0.0;
    for (std::size_t j = 0; j < nb; ++j) mx = std::max(mx, blk[i * nb + j]);
    pos[idx_a[i]] = 1.0 - mx;
  }
  for (std::size_t j = 0; j < nb; ++j) {
    double mx = 0.0;
    for (std::size_t i = 0; i < na; ++i) mx = std::max(mx, blk[i * nb + j]);
    pos[idx_b[j]] = 1.0 - mx;
  }
}

void min_into(std::vector<double>& acc, const std::vector<double>& blk) {
  for (std::size_t k = 0; k < acc.size(); ++k) acc[k] = std::min(acc[k], blk[k]);
}

}  // namespace

double covering_membership(double v, double c, double delta) {
  const double d = std::fabs(v - c);
  return d >= delta ? 0.0 : (delta - d) / delta;
}

CenterGrid build_center_grid(double delta) {
  if (!(delta > 0.0) || delta > 0.5 + 1e-12)
    throw Error("fuzzy_rough", "grid radius must lie in (0, 0.5]");
  CenterGrid grid;
  grid.delta = delta;
  for (int k = 0;; ++k) {
    const double c = k * delta;
    if (c > 1.0 + 1e-12) break;
    grid.centers.push_back(std::min(c, 1.0));
  }
  if (std::fabs(grid.centers.back() - 1.0) <= kTol)
    grid.centers.back() = 1.0;
  else
    grid.centers.push_back(1.0);
  return grid;
}

CenterGrid make_uniform_grid(std::size_t size, double delta) {
  if (size < 2) throw Error("fuzzy_rough", "uniform grid needs at least 2 centres");
  if (!(delta > 0.0) || delta > 0.5 + 1e-12)
    throw Error("fuzzy_rough", "grid radius must lie in (0, 0.5]");
  const double spacing = 1.0 / static_cast<double>(size - 1);
  if (spacing > delta + 1e-12) {
    std::ostringstream os;
    os << "uniform grid spacing " << spacing << " exceeds radius " << delta
       << "; some values would be uncovered";
    throw Error("fuzzy_rough", os.str());
  }
  CenterGrid grid;
  grid.delta = delta;
  for (std::size_t i = 0; i < size; ++i)
    grid.centers.push_back(static_cast<double>(i) / static_cast<double>(size - 1));
  grid.centers.back() = 1.0;
  return grid;
}

CoveringFamily build_covering_family(const DecisionTable& table,
                                     const CenterGrid& grid, double beta) {
  if (grid.centers.empty()) throw Error("fuzzy_rough", "empty centre grid");
  if (!(beta > 0.0) || beta > 1.0)
    throw Error("fuzzy_rough", "beta must lie in (0, 1]");
  CoveringFamily fam;
  fam.grid = grid;
  fam.n = table.n;
  fam.m = table.m;
  fam.beta = beta;
  fam.values = table.values;
  const std::size_t ng = grid.centers.size();
  fam.mem.assign(fam.m * ng * fam.n, 0.0);
  for (std::size_t a = 0; a < fam.m; ++a) {
    for (std::size_t i = 0; i < fam.n; ++i) {
      const double v = table.at(i, a);
      if (v < -1e-12 || v > 1.0 + 1e-12) {
        std::ostringstream os;
        os << "value " << v << " at sample " << i << ", attribute " << a
           << " lies outside [0,1]; normalize the table first";
        throw Error("fuzzy_rough", os.str());
      }
      double best = 0.0;
      for (std::size_t g = 0; g < ng; ++g) {
        const double memv = covering_membership(v, grid.centers[g], grid.delta);
        fam.mem[(a * ng + g) * fam.n + i] = memv;
        best = std::max(best, memv);
      }
      if (best < beta - 1e-12) {
        std::ostringstream os;
        os << "covering property violated: sample " << i << ", attribute " << a
           << " reaches membership " << best << " < beta " << beta;
        throw Error("fuzzy_rough", os.str());
      }
    }
  }
  return fam;
}

Relation fuzzy_similarity(const CoveringFamily& family,
                          const std::vector<int>& attrs) {
  const std::vector<int> as = check_attrs(family, attrs, "fuzzy_similarity");
  Relation rel;
  rel.n = family.n;
  rel.r.assign(rel.n * rel.n, 1.0);
  for (std::size_t i = 0; i < rel.n; ++i) {
    for (std::size_t j = i + 1; j < rel.n; ++j) {
      double sim = 1.0;
      for (int a : as) {
        sim = std::min(sim, attr_pair_sim(family, static_cast<std::size_t>(a), i, j));
        if (sim == 0.0) break;
      }
      rel.r[i * rel.n + j] = sim;
      rel.r[j * rel.n + i] = sim;
    }
  }
  return rel;
}

std::vector<double> lower_approximation(const Relation& rel,
                                        const std::vector<double>& fuzzy_set) {
  if (fuzzy_set.size() != rel.n)
    throw Error("fuzzy_rough", "fuzzy set size does not match relation size");
  std::vector<double> out(rel.n, 1.0);
  for (std::size_t i = 0; i < rel.n; ++i) {
    double lo = 1.0;
    for (std::size_t u = 0; u < rel.n; ++u)
      lo = std::min(lo, std::max(1.0 - rel.at(i, u), fuzzy_set[u]));
    out[i] = lo;
  }
  return out;
}

std::vector<double> upper_approximation(const Relation& rel,
                                        const std::vector<double>& fuzzy_set) {
  if (fuzzy_set.size() != rel.n)
    throw Error("fuzzy_rough", "fuzzy set size does not match relation size");
  std::vector<double> out(rel.n, 0.0);
  for (std::size_t i = 0; i < rel.n; ++i) {
    double hi = 0.0;
    for (std::size_t u = 0; u < rel.n; ++u)
      hi = std::max(hi, std::min(rel.at(i, u), fuzzy_set[u]));
    out[i] = hi;
  }
  return out;
}

std::vector<double> positive_region(const DecisionTable& table,
                                    const CoveringFamily& family,
                                    const std::vector<int>& attrs) {
  if (table.n != family.n || table.m != family.m)
    throw Error("fuzzy_rough", "table does not match covering family");
  const std::vector<int> as = check_attrs(family, attrs, "positive_region");
  std::vector<double> pos(table.n, 1.0);
  for (std::size_t i = 0; i < table.n; ++i) {
    double mx = 0.0;
    for (std::size_t u = 0; u < table.n; ++u) {
      if (table.labels[u] == table.labels[i]) continue;
      double sim = 1.0;
      for (int a : as) {
        sim = std::min(sim, attr_pair_sim(family, static_cast<std::size_t>(a), i, u));
        if (sim <= mx) break;  // cannot raise the max any more
      }
      mx = std::max(mx, sim);
      if (mx >= 1.0) break;
    }
    pos[i] = 1.0 - mx;
  }
  return pos;
}

std::vector<std::vector<int>> related_family(const DecisionTable& table,
                                             const CoveringFamily& family,
                                             const std::vector<int>& admissible) {
  if (table.n != family.n || table.m != family.m)
    throw Error("fuzzy_rough", "table does not match covering family");
  const std::vector<int> as = check_attrs(family, admissible, "related_family");
  const std::vector<double> full = positive_region(table, family, as);
  std::vector<std::vector<int>> fams(table.n);
  for (int a : as) {
    const std::vector<double> single = positive_region(table, family, {a});
    for (std::size_t i = 0; i < table.n; ++i)
      if (single[i] >= full[i] - kTol) fams[i].push_back(a);
  }
  return fams;
}

Reduct greedy_reduct(const DecisionTable& table, const CoveringFamily& family,
                     const std::vector<int>& excluded) {
  if (table.n != family.n || table.m != family.m)
    throw Error("fuzzy_rough", "table does not match covering family");
  std::vector<char> is_excluded(family.m, 0);
  for (int a : excluded)
    if (a >= 0 && static_cast<std::size_t>(a) < family.m) is_excluded[a] = 1;
  std::vector<int> admissible;
  for (std::size_t a = 0; a < family.m; ++a)
    if (!is_excluded[a]) admissible.push_back(static_cast<int>(a));
  if (admissible.empty())
    throw Error("fuzzy_rough", "attribute reduction: every attribute is excluded");

  std::vector<std::size_t> idx_a, idx_b;
  for (std::size_t i = 0; i < table.n; ++i)
    (table.labels[i] > 0 ? idx_a : idx_b).push_back(i);
  const std::size_t cells = idx_a.size() * idx_b.size();

  // Per-attribute cross-class similarity blocks; everything below works on
  // pointwise minima of these.
  std::vector<std::vector<double>> blocks(admissible.size());
  for (std::size_t k = 0; k < admissible.size(); ++k)
    blocks[k] = cross_block(family, admissible[k], idx_a, idx_b);

  std::vector<double> full_min(cells, 1.0);
  for (const auto& blk : blocks) min_into(full_min, blk);
  std::vector<double> target(table.n, 1.0);
  pos_from_block(full_min, idx_a, idx_b, target);

  // Related families from single-attribute degrees.
  std::vector<std::vector<double>> single_pos(admissible.size(),
                                              std::vector<double>(table.n, 1.0));
  for (std::size_t k = 0; k < admissible.size(); ++k)
    pos_from_block(blocks[k], idx_a, idx_b, single_pos[k]);
  std::vector<std::vector<std::size_t>> fam_of(table.n);
  for (std::size_t k = 0; k < admissible.size(); ++k)
    for (std::size_t i = 0; i < table.n; ++i)
      if (single_pos[k][i] >= target[i] - kTol) fam_of[i].push_back(k);

  std::vector<char> chosen(admissible.size(), 0);
  std::vector<std::size_t> order;  // insertion order of chosen attributes
  std::vector<double> sel_min(cells, 1.0);
  std::vector<double> sel_pos(table.n, idx_a.empty() || idx_b.empty() ? 1.0 : 0.0);

  auto add_attr = [&](std::size_t k) {
    chosen[k] = 1;
    order.push_back(k);
    min_into(sel_min, blocks[k]);
    pos_from_block(sel_min, idx_a, idx_b, sel_pos);
  };

  // Greedy cover of the samples whose families are non-empty: each pick is
  // the attribute sitting in the most still-uncovered families, ties to the
  // lowest attribute index (admissible is ascending, so lowest k wins).
  std::vector<char> covered(table.n, 0);
  std::size_t uncovered = 0;
  for (std::size_t i = 0; i < table.n; ++i) {
    if (fam_of[i].empty())
      covered[i] = 1;  // not coverable; the repair pass handles it
    else
      ++uncovered;
  }
  while (uncovered > 0) {
    std::size_t best_k = admissible.size();
    std::size_t best_count = 0;
    for (std::size_t k = 0; k < admissible.size(); ++k) {
      if (chosen[k]) continue;
      std::size_t count = 0;
      for (std::size_t i = 0; i < table.n; ++i)
        if (!covered[i] &&
            std::find(fam_of[i].begin(), fam_of[i].end(), k) != fam_of[i].end())
          ++count;
      if (count > best_count) {
        best_count = count;
        best_k = k;
      }
    }
    if (best_k == admissible.size()) break;  // nothing covers anything new
    add_attr(best_k);
    for (std::size_t i = 0; i < table.n; ++i)
      if (!covered[i] &&
          std::find(fam_of[i].begin(), fam_of[i].end(), best_k) != fam_of[i].end()) {
        covered[i] = 1;
        --uncovered;
      }
  }

  auto preserved = [&](const std::vector<double>& pos) {
    for (std::size_t i = 0; i < table.n; ++i)
      if (pos[i] < target[i] - kTol) return false;
    return true;
  };

  // Repair: while some sample still falls short of the admissible-set degree,
  // add the attribute that newly preserves the most such samples; ties by the
  // larger summed degree gain over the shortfall samples, then lowest index.
  // Adding attributes never lowers any degree, and choosing all admissible
  // attributes reproduces the target exactly, so this terminates.
  while (!preserved(sel_pos)) {
    std::vector<std::size_t> shortfall;
    for (std::size_t i = 0; i < table.n; ++i)
      if (sel_pos[i] < target[i] - kTol) shortfall.push_back(i);
    std::size_t best_k = admissible.size();
    std::size_t best_count = 0;
    double best_gain = -1.0;
    std::vector<double> cand_min(cells), cand_pos(table.n, 1.0);
    for (std::size_t k = 0; k < admissible.size(); ++k) {
      if (chosen[k]) continue;
      cand_min = sel_min;
      min_into(cand_min, blocks[k]);
      pos_from_block(cand_min, idx_a, idx_b, cand_pos);
      std::size_t count = 0;
      double gain = 0.0;
      for (std::size_t i : shortfall) {
        if (cand_pos[i] >= target[i] - kTol) ++count;
        gain += cand_pos[i] - sel_pos[i];
      }
      if (count > best_count ||
          (count == best_count && gain > best_gain + kTol)) {
        best_count = count;
        best_gain = gain;
        best_k = k;
      }
    }
    if (best_k == admissible.size()) {
      std::ostringstream os;
      os << "attribute reduction cannot preserve the positive region; failing samples:";
      for (std::size_t c = 0; c < shortfall.size() && c < 10; ++c)
        os << ' ' << shortfall[c];
      throw Error("fuzzy_rough", os.str());
    }
    add_attr(best_k);
  }

  // Prune in reverse insertion order; a removal survives only if every degree
  // stays within tolerance of the target and the set stays non-empty. Each
  // kept attribute is therefore necessary for the final set as well, because
  // degrees only shrink when the set shrinks further.
  for (std::size_t t = order.size(); t-- > 0;) {
    const std::size_t k = order[t];
    std::size_t kept = 0;
    for (std::size_t q = 0; q < admissible.size(); ++q)
      if (chosen[q] && q != k) ++kept;
    if (kept == 0) continue;
    std::vector<double> trial_min(cells, 1.0);
    for (std::size_t q = 0; q < admissible.size(); ++q)
      if (chosen[q] && q != k) min_into(trial_min, blocks[q]);
    std::vector<double> trial_pos(table.n, 1.0);
    pos_from_block(trial_min, idx_a, idx_b, trial_pos);
    if (preserved(trial_pos)) {
      chosen[k] = 0;
      sel_min.swap(trial_min);
      sel_pos.swap(trial_pos);
    }
  }

  Reduct red;
  red.delta = family.grid.delta;
  red.beta = family.beta;
  for (std::size_t k = 0; k < admissible.size(); ++k)
    if (chosen[k]) red.attrs.push_back(admissible[k]);
  if (red.attrs.empty()) red.attrs.push_back(admissible.front());
  return red;
}

}  // namespace frbc
