#pragma once

#include <cstddef>
#include <vector>

#include "frbc/dataset.hpp"

namespace frbc {

// Triangular membership of value v in the covering element centred at c
// with radius delta: (delta - |v-c|)/delta inside the radius, else 0.
double covering_membership(double v, double c, double delta);

// Covering element centres over [0,1].
struct CenterGrid {
  double delta = 0.0;
  std::vector<double> centers;
};

// Centres 0, delta, 2*delta, ... truncated at 1, with 1 appended when the
// arithmetic sequence does not land on it. Consecutive gaps never exceed
// delta, so every value of [0,1] has membership >= 0.5 somewhere.
CenterGrid build_center_grid(double delta);

// Evenly spaced grid of `size` centres from 0 to 1 (the fixed-count
// reading of the covering construction). Throws if the spacing exceeds
// delta, which would break the coverage guarantee above.
CenterGrid make_uniform_grid(std::size_t size, double delta);

// Per-attribute, per-centre membership columns for a whole table.
// Memberships are stored [attr][centre][sample].
struct CoveringFamily {
  CenterGrid grid;
  std::size_t n = 0, m = 0;
  double beta = 0.5;
  std::vector<double> mem;
  std::vector<double> values;  // row-major copy of the normalized table

  const double* column(std::size_t attr, std::size_t centre) const {
    return mem.data() + (attr * grid.centers.size() + centre) * n;
  }
  double value(std::size_t sample, std::size_t attr) const {
    return values[sample * m + attr];
  }
};

// Builds the membership columns and checks the beta-covering property:
// every (sample, attribute) pair must reach membership >= beta in some
// element. Requires normalized values in [0,1].
CoveringFamily build_covering_family(const DecisionTable& table,
                                     const CenterGrid& grid, double beta);

// Symmetric fuzzy similarity relation over samples, flat n*n.
struct Relation {
  std::size_t n = 0;
  std::vector<double> r;
  double at(std::size_t i, std::size_t j) const { return r[i * n + j]; }
};

// Per attribute: best co-membership over all centres (max over centres of
// min of the two memberships), except that equal values are fully similar
// (degree 1, the reflexive completion; the raw max-min of a value with
// itself peaks below 1 off the centre grid). Over a set of attributes: the
// min across attributes. Reflexive and symmetric; transitivity is not
// enforced.
Relation fuzzy_similarity(const CoveringFamily& family,
                          const std::vector<int>& attrs);

// Fuzzy lower/upper approximation of a fuzzy concept F under relation R:
//   lower(x) = min over u of max(1 - R(x,u), F(u))
//   upper(x) = max over u of min(R(x,u), F(u))
std::vector<double> lower_approximation(const Relation& rel,
                                        const std::vector<double>& fuzzy_set);
std::vector<double> upper_approximation(const Relation& rel,
                                        const std::vector<double>& fuzzy_set);

// Per-sample degree of membership in the positive region of the decision
// classes under the given attribute subset: the lower approximation of
// the sample's own (crisp) class, evaluated at the sample.
std::vector<double> positive_region(const DecisionTable& table,
                                    const CoveringFamily& family,
                                    const std::vector<int>& attrs);

// For every sample, the admissible attributes that alone preserve the
// sample's positive-region degree under the whole admissible set, within
// tolerance 1e-9.
std::vector<std::vector<int>> related_family(
    const DecisionTable& table, const CoveringFamily& family,
    const std::vector<int>& admissible);

struct Reduct {
  std::vector<int> attrs;  // ascending
  double delta = 0.0;
  double beta = 0.0;
};

// Attribute reduction: greedy set cover over the related families (ties to
// the lowest column index), then a repair pass that keeps adding the
// attribute preserving the most still-unpreserved samples (samples with
// empty families cannot be covered but can be preserved jointly), then
// reverse-insertion-order pruning. The result preserves every sample's
// positive-region degree within 1e-9 of the admissible set's and is
// minimal: dropping any single attribute breaks preservation.
Reduct greedy_reduct(const DecisionTable& table, const CoveringFamily& family,
                     const std::vector<int>& excluded);

}  // namespace frbc
