#pragma once

// Shared fixtures and independent oracles for the test suites. The oracles
// deliberately use their own arithmetic (64-bit fraction-free elimination,
// direct grid walks) so they cannot inherit a bug from the library path.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "sdlab/matrix.hpp"
#include "sdlab/structure.hpp"

namespace testdata {

using Grid = std::vector<std::vector<int>>;

inline sdlab::ModularityMatrix gs() {
  return sdlab::ModularityMatrix::build(
      "gs",
      {"Calculate-Circle-Functions", "Calculate-Triangle-Functions", "Translate-Shape", "Display",
       "Refresh"},
      {"Circle", "Triangle", "Shape", "GUI", "Refresh Aspect"},
      {{1, 0, 0, 0, 0}, {0, 1, 0, 0, 0}, {1, 1, 1, 0, 0}, {0, 0, 0, 1, 0}, {0, 0, 0, 1, 1}});
}

inline sdlab::ModularityMatrix ng() {
  return sdlab::ModularityMatrix::build(
      "ng",
      {"CollData", "MngData", "DataView", "OtherCol", "SynCol", "AsynCol", "HPC", "SimCodes",
       "HybExp", "SercData"},
      {"Data Str", "Data Rp", "Data Vu", "Data Ac", "Tele pre", "Chef", "Grif Infr", "Sim Rep",
       "Hyb Exp", "Data Dis"},
      {{1, 1, 0, 1, 0, 0, 0, 0, 0, 0},
       {0, 1, 1, 0, 0, 0, 0, 0, 0, 0},
       {0, 0, 1, 0, 0, 0, 0, 0, 0, 0},
       {0, 0, 1, 1, 0, 1, 1, 0, 0, 0},
       {0, 0, 0, 0, 1, 1, 0, 0, 0, 0},
       {0, 0, 0, 0, 0, 1, 0, 0, 0, 0},
       {0, 0, 0, 0, 0, 0, 1, 0, 0, 0},
       {0, 0, 0, 0, 0, 0, 0, 1, 0, 0},
       {0, 0, 0, 0, 0, 0, 0, 0, 1, 0},
       {0, 0, 0, 0, 0, 0, 0, 0, 0, 1}});
}

inline sdlab::ModularityMatrix obs() {
  Grid grid(8, std::vector<int>(8, 0));
  grid[3][3] = 1;
  grid[4][3] = 1;
  grid[4][4] = 1;
  return sdlab::ModularityMatrix::build(
      "obs",
      {"Maintain list", "Notify observers", "Maintain global-state", "Maintain local-state",
       "Update observers", "Display analog", "Display digital", "Construct objects"},
      {"subject", "Concrete subject", "Subject resource", "Concrete observer", "Observer",
       "GUI analog", "GUI digit", "Init"},
      grid);
}

// The six-module split of ng: two 3x3 blocks plus four singletons.
inline std::vector<sdlab::Block> ng_paper_blocks() {
  return {{{0, 1, 2}, {0, 1, 2}}, {{3, 4, 5}, {3, 4, 5}}, {{6}, {6}},
          {{7}, {7}},             {{8}, {8}},             {{9}, {9}}};
}

inline Grid grid_of(const sdlab::ModularityMatrix& m) {
  Grid grid(static_cast<std::size_t>(m.functional_count()),
            std::vector<int>(static_cast<std::size_t>(m.structor_count()), 0));
  for (int r = 0; r < m.functional_count(); ++r) {
    for (int c = 0; c < m.structor_count(); ++c) grid[r][c] = m.at(r, c);
  }
  return grid;
}

// trace minus taxicab-weighted off-diagonal, straight off the definition.
inline long long diagonality_of(const Grid& grid) {
  long long trace = 0, off = 0;
  for (std::size_t r = 0; r < grid.size(); ++r) {
    for (std::size_t c = 0; c < grid[r].size(); ++c) {
      if (!grid[r][c]) continue;
      if (r == c) {
        ++trace;
      } else {
        off += static_cast<long long>(r > c ? r - c : c - r);
      }
    }
  }
  return trace - off;
}

// Exhaustive optimum over every row and column ordering. Desk-scale inputs
// only (5x5 is 14400 arrangements).
inline long long best_diagonality_exhaustive(const sdlab::ModularityMatrix& m) {
  const Grid grid = grid_of(m);
  std::vector<int> rows(grid.size()), cols(grid.front().size());
  std::iota(rows.begin(), rows.end(), 0);
  std::iota(cols.begin(), cols.end(), 0);
  long long best = diagonality_of(grid);
  std::vector<int> p = rows;
  do {
    std::vector<int> q = cols;
    do {
      Grid arranged(grid.size(), std::vector<int>(cols.size(), 0));
      for (std::size_t r = 0; r < p.size(); ++r) {
        for (std::size_t c = 0; c < q.size(); ++c) {
          arranged[r][c] = grid[static_cast<std::size_t>(p[r])][static_cast<std::size_t>(q[c])];
        }
      }
      best = std::max(best, diagonality_of(arranged));
    } while (std::next_permutation(q.begin(), q.end()));
  } while (std::next_permutation(p.begin(), p.end()));
  return best;
}

// Fraction-free elimination over int64; entries stay tiny for 0/1 grids of
// the sizes the oracle sees.
inline int rank_oracle(Grid grid) {
  const std::size_t rows = grid.size();
  const std::size_t cols = rows ? grid.front().size() : 0;
  int rank = 0;
  std::int64_t previous = 1;
  std::size_t pivot_row = 0;
  std::vector<std::vector<std::int64_t>> a(rows, std::vector<std::int64_t>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) a[r][c] = grid[r][c];
  }
  for (std::size_t col = 0; col < cols && pivot_row < rows; ++col) {
    std::size_t found = pivot_row;
    while (found < rows && a[found][col] == 0) ++found;
    if (found == rows) continue;
    std::swap(a[pivot_row], a[found]);
    for (std::size_t r = pivot_row + 1; r < rows; ++r) {
      for (std::size_t c = col + 1; c < cols; ++c) {
        a[r][c] = (a[pivot_row][col] * a[r][c] - a[r][col] * a[pivot_row][c]) / previous;
      }
      a[r][col] = 0;
    }
    previous = a[pivot_row][col];
    ++pivot_row;
    ++rank;
  }
  return rank;
}

inline Grid columns_subset(const Grid& grid, const std::vector<int>& cols) {
  Grid out(grid.size(), std::vector<int>(cols.size(), 0));
  for (std::size_t r = 0; r < grid.size(); ++r) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      out[r][j] = grid[r][static_cast<std::size_t>(cols[j])];
    }
  }
  return out;
}

// Largest independent column subset, scanning subset sizes from the top.
inline int rank_by_column_subsets(const Grid& grid) {
  const int n = grid.empty() ? 0 : static_cast<int>(grid.front().size());
  for (int size = n; size >= 1; --size) {
    std::vector<int> pick(static_cast<std::size_t>(size));
    std::iota(pick.begin(), pick.end(), 0);
    while (true) {
      if (rank_oracle(columns_subset(grid, pick)) == size) return size;
      int i = size - 1;
      while (i >= 0 && pick[static_cast<std::size_t>(i)] == n - size + i) --i;
      if (i < 0) break;
      ++pick[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < size; ++j) {
        pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
      }
    }
  }
  return 0;
}

inline std::vector<int> random_permutation(int n, std::mt19937& engine) {
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  for (int i = n - 1; i > 0; --i) {
    const int j = static_cast<int>(engine() % static_cast<std::uint32_t>(i + 1));
    std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]);
  }
  return order;
}

inline sdlab::ModularityMatrix scrambled(const sdlab::ModularityMatrix& m, std::uint32_t seed) {
  std::mt19937 engine(seed);
  return m.permuted(random_permutation(m.functional_count(), engine),
                    random_permutation(m.structor_count(), engine));
}

}  // namespace testdata
