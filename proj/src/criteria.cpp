#include "sdlab/criteria.hpp"

#include <cstdlib>

namespace sdlab {

long long matrix_trace(const ModularityMatrix& matrix) {
  const int n = std::min(matrix.functional_count(), matrix.structor_count());
  long long t = 0;
  for (int i = 0; i < n; ++i) t += matrix.at(i, i);
  return t;
}

long long offdiag(const ModularityMatrix& matrix) {
  long long sum = 0;
  for (int r = 0; r < matrix.functional_count(); ++r) {
    for (int c = 0; c < matrix.structor_count(); ++c) {
      if (matrix.at(r, c) && r != c) sum += std::abs(r - c);
    }
  }
  return sum;
}

long long diagonality(const ModularityMatrix& matrix) {
  return matrix_trace(matrix) - offdiag(matrix);
}

Rational sparsity(const ModularityMatrix& matrix) {
  const long long cells = static_cast<long long>(matrix.functional_count()) * matrix.structor_count();
  return Rational(cells - matrix.ones_count(), cells);
}

CriteriaReport criteria(const ModularityMatrix& matrix) {
  CriteriaReport report;
  report.n_rows = matrix.functional_count();
  report.n_cols = matrix.structor_count();
  report.ones_count = matrix.ones_count();
  report.trace = matrix_trace(matrix);
  report.offdiag = offdiag(matrix);
  report.diagonality = report.trace - report.offdiag;
  report.sparsity = sparsity(matrix);
  return report;
}

long long composition_score(const ModularityMatrix& matrix, const std::vector<int>& block_rows,
                            const std::vector<int>& block_cols) {
  auto pairs = [](long long k) { return k * (k - 1) / 2; };
  long long score = 0;
  for (int r : block_rows) {
    long long ones = 0;
    for (int c : block_cols) ones += matrix.at(r, c);
    score += pairs(ones);
  }
  for (int c : block_cols) {
    long long ones = 0;
    for (int r : block_rows) ones += matrix.at(r, c);
    score += pairs(ones);
  }
  return score;
}

}  // namespace sdlab
