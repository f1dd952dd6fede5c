#pragma once

#include <optional>
#include <vector>

#include "sdlab/matrix.hpp"
#include "sdlab/rational.hpp"

namespace sdlab {

/// Exact rank over the rationals. No floating point is involved anywhere:
/// elimination is fraction-free over arbitrary-precision integers.
int rank(const ModularityMatrix& matrix);

struct DependencyTerm {
  int pivot_index;        // index of the independent vector on the same axis
  Rational coefficient;
};

struct Dependency {
  int dependent_index;
  std::vector<DependencyTerm> terms;  // dependent = sum(coefficient * pivot)
};

/// Pivots are chosen greedily in axis order: a vector is a pivot iff it is
/// independent of all earlier pivots, so the pivot set is the first maximal
/// independent prefix-greedy subset.
struct DependencyReport {
  Axis axis;
  int rank = 0;
  std::vector<int> pivot_indices;
  std::vector<Dependency> dependencies;
};

DependencyReport dependency_report(const ModularityMatrix& matrix, Axis axis);

struct WellComposedResult {
  bool well_composed = false;
  std::string explanation;  // "well-composed" or the first failing condition
};

/// Admissible + square + full rank.
WellComposedResult is_well_composed(const ModularityMatrix& matrix);

enum class CoalesceAxis { Functionals, Structors, Both };

/// Merges identical rows (and/or columns). The merged label joins the
/// participants with "+" and keeps the earliest position. Idempotent.
ModularityMatrix coalesce_duplicates(const ModularityMatrix& matrix,
                                     CoalesceAxis axis = CoalesceAxis::Functionals);

struct CountVector {
  Axis axis;                        // axis of the added vectors
  std::vector<std::string> labels;  // labels of the orthogonal axis
  std::vector<Rational> counts;
  bool negative_coefficient_warning = false;
};

/// Sum of selected structor columns (or functional rows) as count vectors,
/// optionally weighted. Duplicate or out-of-range indices are errors;
/// negative coefficients are allowed but flagged.
CountVector add_vectors(const ModularityMatrix& matrix, Axis axis, const std::vector<int>& indices,
                        const std::optional<std::vector<Rational>>& coefficients = std::nullopt);

}  // namespace sdlab
