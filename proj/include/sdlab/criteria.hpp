#pragma once

#include <vector>

#include "sdlab/matrix.hpp"
#include "sdlab/rational.hpp"

namespace sdlab {

struct CriteriaReport {
  int n_rows = 0;
  int n_cols = 0;
  long long ones_count = 0;
  long long trace = 0;       // ones on the main diagonal
  long long offdiag = 0;     // sum of |row - col| over off-diagonal ones
  long long diagonality = 0; // trace - offdiag
  Rational sparsity;         // (cells - ones) / cells, exact
};

CriteriaReport criteria(const ModularityMatrix& matrix);

long long matrix_trace(const ModularityMatrix& matrix);
long long offdiag(const ModularityMatrix& matrix);
long long diagonality(const ModularityMatrix& matrix);
Rational sparsity(const ModularityMatrix& matrix);

/// Couplings packed into one block at this stage of a design: every pair of
/// ones sharing a row plus every pair sharing a column, counted within the
/// given sub-rectangle.
long long composition_score(const ModularityMatrix& matrix, const std::vector<int>& block_rows,
                            const std::vector<int>& block_cols);

}  // namespace sdlab
