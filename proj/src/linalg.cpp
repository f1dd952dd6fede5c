#include "sdlab/linalg.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <utility>

namespace sdlab {

namespace {

// Fraction-free (Bareiss) forward elimination over exact integers.
// Column pivots are taken left to right, so pivot_cols is the greedy
// prefix-maximal independent column set; skipped columns stay reducible
// against earlier pivots. Entries of u remain minors of the input, and
// every division below is exact.
struct Echelon {
  std::vector<std::vector<BigInt>> u;
  std::vector<int> pivot_cols;
};

BigInt exact_div(const BigInt& num, const BigInt& den) {
  BigInt q, r;
  boost::multiprecision::divide_qr(num, den, q, r);
  if (r != 0) throw std::logic_error("fraction-free elimination produced a non-exact division");
  return q;
}

Echelon eliminate(std::vector<std::vector<BigInt>> u) {
  Echelon result;
  const int nrows = static_cast<int>(u.size());
  const int ncols = nrows == 0 ? 0 : static_cast<int>(u[0].size());
  BigInt prev = 1;
  int r = 0;
  for (int c = 0; c < ncols && r < nrows; ++c) {
    int pivot_row = -1;
    for (int i = r; i < nrows; ++i) {
      if (u[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] != 0) {
        pivot_row = i;
        break;
      }
    }
    if (pivot_row < 0) continue;
    std::swap(u[static_cast<std::size_t>(r)], u[static_cast<std::size_t>(pivot_row)]);
    const BigInt pivot = u[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
    for (int i = r + 1; i < nrows; ++i) {
      auto& row = u[static_cast<std::size_t>(i)];
      const auto& prow = u[static_cast<std::size_t>(r)];
      const BigInt factor = row[static_cast<std::size_t>(c)];
      for (int j = 0; j < ncols; ++j) {
        row[static_cast<std::size_t>(j)] =
            exact_div(pivot * row[static_cast<std::size_t>(j)] - factor * prow[static_cast<std::size_t>(j)], prev);
      }
    }
    prev = pivot;
    result.pivot_cols.push_back(c);
    ++r;
  }
  result.u = std::move(u);
  return result;
}

std::vector<std::vector<BigInt>> as_grid(const ModularityMatrix& m) {
  std::vector<std::vector<BigInt>> grid(static_cast<std::size_t>(m.functional_count()));
  for (int r = 0; r < m.functional_count(); ++r) {
    grid[static_cast<std::size_t>(r)].reserve(static_cast<std::size_t>(m.structor_count()));
    for (int c = 0; c < m.structor_count(); ++c) {
      grid[static_cast<std::size_t>(r)].emplace_back(m.at(r, c));
    }
  }
  return grid;
}

}  // namespace

int rank(const ModularityMatrix& matrix) {
  return static_cast<int>(eliminate(as_grid(matrix)).pivot_cols.size());
}

DependencyReport dependency_report(const ModularityMatrix& matrix, Axis axis) {
  const ModularityMatrix oriented = axis == Axis::Structors ? matrix : matrix.transposed();
  const auto grid = as_grid(oriented);
  const Echelon ech = eliminate(grid);
  const int nvec = oriented.structor_count();
  const int r = static_cast<int>(ech.pivot_cols.size());

  DependencyReport report;
  report.axis = axis;
  report.rank = r;
  report.pivot_indices = ech.pivot_cols;

  std::set<int> pivot_set(ech.pivot_cols.begin(), ech.pivot_cols.end());
  for (int d = 0; d < nvec; ++d) {
    if (pivot_set.count(d)) continue;
    // Back-substitution on the echelon form; row operations preserve
    // column relations, so the coefficients carry over to the input.
    std::vector<Rational> x(static_cast<std::size_t>(r));
    for (int k = r - 1; k >= 0; --k) {
      Rational acc(ech.u[static_cast<std::size_t>(k)][static_cast<std::size_t>(d)]);
      for (int m = k + 1; m < r; ++m) {
        acc -= Rational(ech.u[static_cast<std::size_t>(k)][static_cast<std::size_t>(ech.pivot_cols[static_cast<std::size_t>(m)])]) *
               x[static_cast<std::size_t>(m)];
      }
      x[static_cast<std::size_t>(k)] =
          acc / Rational(ech.u[static_cast<std::size_t>(k)][static_cast<std::size_t>(ech.pivot_cols[static_cast<std::size_t>(k)])]);
    }
    for (int i = r; i < static_cast<int>(ech.u.size()); ++i) {
      if (ech.u[static_cast<std::size_t>(i)][static_cast<std::size_t>(d)] != 0) {
        throw std::logic_error("echelon form inconsistent with skipped column");
      }
    }
    // Exactness check against the original vectors.
    for (int row = 0; row < oriented.functional_count(); ++row) {
      Rational sum = 0;
      for (int k = 0; k < r; ++k) {
        sum += x[static_cast<std::size_t>(k)] * oriented.at(row, ech.pivot_cols[static_cast<std::size_t>(k)]);
      }
      if (sum != Rational(oriented.at(row, d))) {
        throw std::logic_error("dependency coefficients failed verification");
      }
    }
    Dependency dep;
    dep.dependent_index = d;
    for (int k = 0; k < r; ++k) {
      if (x[static_cast<std::size_t>(k)] != 0) {
        dep.terms.push_back({ech.pivot_cols[static_cast<std::size_t>(k)], x[static_cast<std::size_t>(k)]});
      }
    }
    report.dependencies.push_back(std::move(dep));
  }
  return report;
}

WellComposedResult is_well_composed(const ModularityMatrix& matrix) {
  const ValidationReport validation = validate(matrix);
  if (!validation.is_admissible) {
    for (const Finding& f : validation.findings) {
      if (f.severity == Finding::Severity::Error) {
        return {false, "not admissible: " + f.message};
      }
    }
  }
  if (matrix.functional_count() != matrix.structor_count()) {
    return {false, "not square"};
  }
  const DependencyReport deps = dependency_report(matrix, Axis::Structors);
  if (deps.rank != matrix.structor_count()) {
    const int first_dependent = deps.dependencies.front().dependent_index;
    return {false, "structors dependent: column " + std::to_string(first_dependent + 1)};
  }
  return {true, "well-composed"};
}

namespace {

struct MergeResult {
  std::vector<std::string> labels;
  std::vector<int> keep;  // kept original indices, in original order
};

// Groups equal patterns, keeps the earliest member's position and joins
// the group's labels with "+".
MergeResult merge_axis(const std::vector<std::string>& labels,
                       const std::vector<std::string>& patterns) {
  std::map<std::string, int> first;
  std::vector<std::vector<int>> groups;
  for (int i = 0; i < static_cast<int>(labels.size()); ++i) {
    auto [it, inserted] = first.emplace(patterns[static_cast<std::size_t>(i)], static_cast<int>(groups.size()));
    if (inserted) {
      groups.push_back({i});
    } else {
      groups[static_cast<std::size_t>(it->second)].push_back(i);
    }
  }
  MergeResult result;
  for (const auto& group : groups) {
    std::string label;
    for (std::size_t k = 0; k < group.size(); ++k) {
      if (k) label += "+";
      label += labels[static_cast<std::size_t>(group[k])];
    }
    result.labels.push_back(std::move(label));
    result.keep.push_back(group.front());
  }
  return result;
}

ModularityMatrix coalesce_rows(const ModularityMatrix& m) {
  std::vector<std::string> patterns(static_cast<std::size_t>(m.functional_count()));
  for (int r = 0; r < m.functional_count(); ++r) {
    for (int c = 0; c < m.structor_count(); ++c) {
      patterns[static_cast<std::size_t>(r)].push_back(static_cast<char>('0' + m.at(r, c)));
    }
  }
  const MergeResult merged = merge_axis(m.functional_names(), patterns);
  std::vector<std::vector<int>> entries;
  for (int r : merged.keep) {
    std::vector<int> row(static_cast<std::size_t>(m.structor_count()));
    for (int c = 0; c < m.structor_count(); ++c) row[static_cast<std::size_t>(c)] = m.at(r, c);
    entries.push_back(std::move(row));
  }
  return ModularityMatrix::build(m.name(), merged.labels, m.structor_names(), entries);
}

}  // namespace

ModularityMatrix coalesce_duplicates(const ModularityMatrix& matrix, CoalesceAxis axis) {
  switch (axis) {
    case CoalesceAxis::Functionals:
      return coalesce_rows(matrix);
    case CoalesceAxis::Structors:
      return coalesce_rows(matrix.transposed()).transposed().renamed(matrix.name());
    case CoalesceAxis::Both:
      return coalesce_duplicates(coalesce_rows(matrix), CoalesceAxis::Structors);
  }
  throw std::logic_error("unreachable");
}

CountVector add_vectors(const ModularityMatrix& matrix, Axis axis, const std::vector<int>& indices,
                        const std::optional<std::vector<Rational>>& coefficients) {
  const int axis_size = axis == Axis::Structors ? matrix.structor_count() : matrix.functional_count();
  if (indices.empty()) throw AnalysisError("no vectors selected");
  std::set<int> seen;
  for (int idx : indices) {
    if (idx < 0 || idx >= axis_size) {
      throw AnalysisError("vector index " + std::to_string(idx + 1) + " out of range");
    }
    if (!seen.insert(idx).second) {
      throw AnalysisError("vector index " + std::to_string(idx + 1) + " selected twice");
    }
  }
  if (coefficients && coefficients->size() != indices.size()) {
    throw AnalysisError("coefficient count does not match selected vectors");
  }

  CountVector result;
  result.axis = axis;
  result.labels = axis == Axis::Structors ? matrix.functional_names() : matrix.structor_names();
  result.counts.assign(result.labels.size(), Rational(0));
  for (std::size_t k = 0; k < indices.size(); ++k) {
    const Rational coef = coefficients ? (*coefficients)[k] : Rational(1);
    if (coef < 0) result.negative_coefficient_warning = true;
    for (std::size_t pos = 0; pos < result.labels.size(); ++pos) {
      const int value = axis == Axis::Structors ? matrix.at(static_cast<int>(pos), indices[k])
                                                : matrix.at(indices[k], static_cast<int>(pos));
      result.counts[pos] += coef * value;
    }
  }
  return result;
}

}  // namespace sdlab
