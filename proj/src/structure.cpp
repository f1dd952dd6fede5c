#include "sdlab/structure.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <queue>
#include <set>

#include "sdlab/linalg.hpp"

namespace sdlab {

namespace {

ModularityMatrix submatrix(const ModularityMatrix& m, const std::vector<int>& rows,
                           const std::vector<int>& cols, const std::string& name) {
  std::vector<std::string> fnames, snames;
  for (int r : rows) fnames.push_back(m.functional_names()[static_cast<std::size_t>(r)]);
  for (int c : cols) snames.push_back(m.structor_names()[static_cast<std::size_t>(c)]);
  std::vector<std::vector<int>> entries;
  for (int r : rows) {
    std::vector<int> row;
    for (int c : cols) row.push_back(m.at(r, c));
    entries.push_back(std::move(row));
  }
  return ModularityMatrix::build(name, std::move(fnames), std::move(snames), entries);
}

void canonical_block_order(std::vector<Block>& blocks) {
  std::stable_sort(blocks.begin(), blocks.end(), [](const Block& a, const Block& b) {
    const std::size_t sa = a.rows.size() + a.cols.size();
    const std::size_t sb = b.rows.size() + b.cols.size();
    if (sa != sb) return sa > sb;
    const int ra = a.rows.empty() ? -1 : a.rows.front();
    const int rb = b.rows.empty() ? -1 : b.rows.front();
    if (ra != rb) return ra < rb;
    return (a.cols.empty() ? -1 : a.cols.front()) < (b.cols.empty() ? -1 : b.cols.front());
  });
}

}  // namespace

std::vector<Component> connected_components(const ModularityMatrix& matrix) {
  const int nf = matrix.functional_count();
  const int ns = matrix.structor_count();
  std::vector<bool> row_seen(static_cast<std::size_t>(nf), false);
  std::vector<bool> col_seen(static_cast<std::size_t>(ns), false);
  std::vector<Component> components;

  auto sweep = [&](int start_row, int start_col) {
    Component comp;
    std::queue<std::pair<bool, int>> frontier;  // (is_row, index)
    if (start_row >= 0) {
      row_seen[static_cast<std::size_t>(start_row)] = true;
      frontier.push({true, start_row});
    } else {
      col_seen[static_cast<std::size_t>(start_col)] = true;
      frontier.push({false, start_col});
    }
    while (!frontier.empty()) {
      auto [is_row, idx] = frontier.front();
      frontier.pop();
      if (is_row) {
        comp.rows.push_back(idx);
        for (int c = 0; c < ns; ++c) {
          if (matrix.at(idx, c) && !col_seen[static_cast<std::size_t>(c)]) {
            col_seen[static_cast<std::size_t>(c)] = true;
            frontier.push({false, c});
          }
        }
      } else {
        comp.cols.push_back(idx);
        for (int r = 0; r < nf; ++r) {
          if (matrix.at(r, idx) && !row_seen[static_cast<std::size_t>(r)]) {
            row_seen[static_cast<std::size_t>(r)] = true;
            frontier.push({true, r});
          }
        }
      }
    }
    std::sort(comp.rows.begin(), comp.rows.end());
    std::sort(comp.cols.begin(), comp.cols.end());
    comp.degenerate = comp.rows.empty() || comp.cols.empty();
    return comp;
  };

  for (int r = 0; r < nf; ++r) {
    if (!row_seen[static_cast<std::size_t>(r)]) components.push_back(sweep(r, -1));
  }
  for (int c = 0; c < ns; ++c) {
    if (!col_seen[static_cast<std::size_t>(c)]) components.push_back(sweep(-1, c));
  }
  return components;
}

BlockPartition make_partition(const ModularityMatrix& matrix, std::vector<Block> blocks) {
  const int nf = matrix.functional_count();
  const int ns = matrix.structor_count();
  std::vector<int> row_block(static_cast<std::size_t>(nf), -1);
  std::vector<int> col_block(static_cast<std::size_t>(ns), -1);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    Block& block = blocks[b];
    if (block.rows.empty() || block.cols.empty()) {
      throw AnalysisError("invalid partition: block " + std::to_string(b + 1) +
                          " needs at least one row and one column");
    }
    std::sort(block.rows.begin(), block.rows.end());
    std::sort(block.cols.begin(), block.cols.end());
    for (int r : block.rows) {
      if (r < 0 || r >= nf) throw AnalysisError("invalid partition: row index out of range");
      if (row_block[static_cast<std::size_t>(r)] >= 0) {
        throw AnalysisError("invalid partition: row " + std::to_string(r + 1) + " appears in two blocks");
      }
      row_block[static_cast<std::size_t>(r)] = static_cast<int>(b);
    }
    for (int c : block.cols) {
      if (c < 0 || c >= ns) throw AnalysisError("invalid partition: column index out of range");
      if (col_block[static_cast<std::size_t>(c)] >= 0) {
        throw AnalysisError("invalid partition: column " + std::to_string(c + 1) +
                            " appears in two blocks");
      }
      col_block[static_cast<std::size_t>(c)] = static_cast<int>(b);
    }
  }
  for (int r = 0; r < nf; ++r) {
    if (row_block[static_cast<std::size_t>(r)] < 0) {
      throw AnalysisError("invalid partition: row " + std::to_string(r + 1) + " is not covered");
    }
  }
  for (int c = 0; c < ns; ++c) {
    if (col_block[static_cast<std::size_t>(c)] < 0) {
      throw AnalysisError("invalid partition: column " + std::to_string(c + 1) + " is not covered");
    }
  }

  BlockPartition partition;
  partition.blocks = std::move(blocks);
  for (int r = 0; r < nf; ++r) {
    for (int c = 0; c < ns; ++c) {
      if (matrix.at(r, c) &&
          row_block[static_cast<std::size_t>(r)] != col_block[static_cast<std::size_t>(c)]) {
        partition.outliers.emplace_back(r, c);
      }
    }
  }
  return partition;
}

DetectedBlocks detect_blocks(const ModularityMatrix& matrix) {
  if (!validate(matrix).is_admissible) {
    throw AnalysisError("matrix is not admissible; fix empty rows/columns first");
  }
  std::vector<Block> blocks;
  for (const Component& comp : connected_components(matrix)) {
    blocks.push_back({comp.rows, comp.cols});
  }
  canonical_block_order(blocks);

  DetectedBlocks result{make_partition(matrix, blocks), {}, blocks.size() >= 2};
  for (const Block& block : result.partition.blocks) {
    BlockFlags flags;
    flags.square = block.rows.size() == block.cols.size();
    flags.well_composed =
        is_well_composed(submatrix(matrix, block.rows, block.cols, "block")).well_composed;
    result.flags.push_back(flags);
  }
  return result;
}

// ---------------------------------------------------------------------------
// reorder

namespace {

struct BlockArrangement {
  std::vector<int> rows;  // original indices in display order
  std::vector<int> cols;
  int row_offset = 0;
  int col_offset = 0;
};

// Ones whose row or column belongs to the block; only their placement can
// change while this block is rearranged.
std::vector<std::pair<int, int>> touching_ones(const ModularityMatrix& m,
                                               const std::vector<bool>& in_rows,
                                               const std::vector<bool>& in_cols) {
  std::vector<std::pair<int, int>> ones;
  for (int r = 0; r < m.functional_count(); ++r) {
    for (int c = 0; c < m.structor_count(); ++c) {
      if (m.at(r, c) && (in_rows[static_cast<std::size_t>(r)] || in_cols[static_cast<std::size_t>(c)])) {
        ones.emplace_back(r, c);
      }
    }
  }
  return ones;
}

long long placement_value(const std::vector<std::pair<int, int>>& ones,
                          const std::vector<int>& pos_row, const std::vector<int>& pos_col) {
  long long value = 0;
  for (const auto& [r, c] : ones) {
    const int pr = pos_row[static_cast<std::size_t>(r)];
    const int pc = pos_col[static_cast<std::size_t>(c)];
    value += pr == pc ? 1 : -std::abs(pr - pc);
  }
  return value;
}

void apply_positions(const BlockArrangement& a, std::vector<int>& pos_row, std::vector<int>& pos_col) {
  for (std::size_t k = 0; k < a.rows.size(); ++k) {
    pos_row[static_cast<std::size_t>(a.rows[k])] = a.row_offset + static_cast<int>(k);
  }
  for (std::size_t k = 0; k < a.cols.size(); ++k) {
    pos_col[static_cast<std::size_t>(a.cols[k])] = a.col_offset + static_cast<int>(k);
  }
}

// Exhaustive search over the block's row and column permutations, taking the
// lexicographically smallest ordering among those reaching the best value.
bool optimize_exhaustive(BlockArrangement& a, const std::vector<std::pair<int, int>>& ones,
                         std::vector<int>& pos_row, std::vector<int>& pos_col) {
  const BlockArrangement before = a;
  std::vector<int> rperm = a.rows;
  std::sort(rperm.begin(), rperm.end());
  std::vector<int> best_rows = a.rows, best_cols = a.cols;
  long long best = placement_value(ones, pos_row, pos_col);
  do {
    std::vector<int> cperm = a.cols;
    std::sort(cperm.begin(), cperm.end());
    do {
      BlockArrangement candidate{rperm, cperm, a.row_offset, a.col_offset};
      apply_positions(candidate, pos_row, pos_col);
      const long long value = placement_value(ones, pos_row, pos_col);
      if (value > best) {
        best = value;
        best_rows = rperm;
        best_cols = cperm;
      }
    } while (std::next_permutation(cperm.begin(), cperm.end()));
  } while (std::next_permutation(rperm.begin(), rperm.end()));
  a.rows = best_rows;
  a.cols = best_cols;
  apply_positions(a, pos_row, pos_col);
  return a.rows != before.rows || a.cols != before.cols;
}

bool hill_climb(BlockArrangement& a, const std::vector<std::pair<int, int>>& ones,
                std::vector<int>& pos_row, std::vector<int>& pos_col) {
  bool changed = false;
  bool improved = true;
  int guard = 0;
  while (improved && guard++ < 500) {
    improved = false;
    auto try_axis = [&](std::vector<int>& order) {
      for (std::size_t i = 0; i + 1 < order.size() && !improved; ++i) {
        for (std::size_t j = i + 1; j < order.size() && !improved; ++j) {
          const long long before = placement_value(ones, pos_row, pos_col);
          std::swap(order[i], order[j]);
          apply_positions(a, pos_row, pos_col);
          if (placement_value(ones, pos_row, pos_col) > before) {
            improved = true;
            changed = true;
          } else {
            std::swap(order[i], order[j]);
            apply_positions(a, pos_row, pos_col);
          }
        }
      }
    };
    try_axis(a.rows);
    if (!improved) try_axis(a.cols);
  }
  return changed;
}

// Barycenter passes followed by pairwise-swap hill climbing. The starting
// order is the block's labels sorted, which makes the reached value a
// function of the labeled content only, independent of input ordering.
bool optimize_heuristic(const ModularityMatrix& m, BlockArrangement& a,
                        const std::vector<std::pair<int, int>>& ones, std::vector<int>& pos_row,
                        std::vector<int>& pos_col) {
  const BlockArrangement before = a;

  auto label_sorted = [&](std::vector<int> idx, bool rows) {
    std::sort(idx.begin(), idx.end(), [&](int x, int y) {
      const auto& names = rows ? m.functional_names() : m.structor_names();
      return names[static_cast<std::size_t>(x)] < names[static_cast<std::size_t>(y)];
    });
    return idx;
  };
  a.rows = label_sorted(a.rows, true);
  a.cols = label_sorted(a.cols, false);
  apply_positions(a, pos_row, pos_col);

  for (int pass = 0; pass < 4; ++pass) {
    auto barycenter_sort = [&](std::vector<int>& order, bool rows) {
      std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
        auto center = [&](int idx) {
          double sum = 0;
          int count = 0;
          if (rows) {
            for (int c = 0; c < m.structor_count(); ++c) {
              if (m.at(idx, c)) {
                sum += pos_col[static_cast<std::size_t>(c)];
                ++count;
              }
            }
            return count ? sum / count : static_cast<double>(pos_row[static_cast<std::size_t>(idx)]);
          }
          for (int r = 0; r < m.functional_count(); ++r) {
            if (m.at(r, idx)) {
              sum += pos_row[static_cast<std::size_t>(r)];
              ++count;
            }
          }
          return count ? sum / count : static_cast<double>(pos_col[static_cast<std::size_t>(idx)]);
        };
        return center(x) < center(y);
      });
      apply_positions(a, pos_row, pos_col);
    };
    barycenter_sort(a.rows, true);
    barycenter_sort(a.cols, false);
  }
  hill_climb(a, ones, pos_row, pos_col);
  apply_positions(a, pos_row, pos_col);
  return a.rows != before.rows || a.cols != before.cols;
}

}  // namespace

Reordering reorder(const ModularityMatrix& matrix, const BlockPartition& partition) {
  const BlockPartition checked = make_partition(matrix, partition.blocks);
  const int nf = matrix.functional_count();
  const int ns = matrix.structor_count();

  std::vector<BlockArrangement> arrangements;
  int row_offset = 0, col_offset = 0;
  for (const Block& block : checked.blocks) {
    BlockArrangement a{block.rows, block.cols, row_offset, col_offset};
    arrangements.push_back(std::move(a));
    row_offset += static_cast<int>(block.rows.size());
    col_offset += static_cast<int>(block.cols.size());
  }

  std::vector<int> pos_row(static_cast<std::size_t>(nf)), pos_col(static_cast<std::size_t>(ns));
  for (const BlockArrangement& a : arrangements) apply_positions(a, pos_row, pos_col);

  // Per-block data reused across sweeps.
  std::vector<std::vector<std::pair<int, int>>> touching;
  for (const BlockArrangement& a : arrangements) {
    std::vector<bool> in_rows(static_cast<std::size_t>(nf), false), in_cols(static_cast<std::size_t>(ns), false);
    for (int r : a.rows) in_rows[static_cast<std::size_t>(r)] = true;
    for (int c : a.cols) in_cols[static_cast<std::size_t>(c)] = true;
    touching.push_back(touching_ones(matrix, in_rows, in_cols));
  }

  for (int sweep = 0; sweep < 8; ++sweep) {
    bool changed = false;
    for (std::size_t b = 0; b < arrangements.size(); ++b) {
      BlockArrangement& a = arrangements[b];
      if (a.rows.size() <= 1 && a.cols.size() <= 1) continue;
      if (a.rows.size() <= 6 && a.cols.size() <= 6) {
        changed = optimize_exhaustive(a, touching[b], pos_row, pos_col) || changed;
      } else {
        changed = optimize_heuristic(matrix, a, touching[b], pos_row, pos_col) || changed;
      }
    }
    if (!changed) break;
  }

  Reordering result{std::vector<int>(static_cast<std::size_t>(nf)),
                    std::vector<int>(static_cast<std::size_t>(ns)),
                    matrix,
                    0,
                    {}};
  for (const BlockArrangement& a : arrangements) {
    for (std::size_t k = 0; k < a.rows.size(); ++k) {
      result.row_order[static_cast<std::size_t>(a.row_offset) + k] = a.rows[k];
    }
    for (std::size_t k = 0; k < a.cols.size(); ++k) {
      result.col_order[static_cast<std::size_t>(a.col_offset) + k] = a.cols[k];
    }
  }
  result.matrix = matrix.permuted(result.row_order, result.col_order);

  std::vector<Block> mapped;
  for (const BlockArrangement& a : arrangements) {
    Block block;
    for (std::size_t k = 0; k < a.rows.size(); ++k) block.rows.push_back(a.row_offset + static_cast<int>(k));
    for (std::size_t k = 0; k < a.cols.size(); ++k) block.cols.push_back(a.col_offset + static_cast<int>(k));
    mapped.push_back(std::move(block));
  }
  result.partition = make_partition(result.matrix, mapped);

  long long total = 0;
  for (int r = 0; r < nf; ++r) {
    for (int c = 0; c < ns; ++c) {
      if (result.matrix.at(r, c)) total += r == c ? 1 : -std::abs(r - c);
    }
  }
  result.diagonality = total;
  return result;
}

// ---------------------------------------------------------------------------
// diagnosis

DiagnosisReport diagnose_outliers(const ModularityMatrix& matrix, const BlockPartition& partition) {
  const BlockPartition checked = make_partition(matrix, partition.blocks);
  std::vector<int> row_block(static_cast<std::size_t>(matrix.functional_count()), -1);
  std::vector<int> col_block(static_cast<std::size_t>(matrix.structor_count()), -1);
  for (std::size_t b = 0; b < checked.blocks.size(); ++b) {
    for (int r : checked.blocks[b].rows) row_block[static_cast<std::size_t>(r)] = static_cast<int>(b);
    for (int c : checked.blocks[b].cols) col_block[static_cast<std::size_t>(c)] = static_cast<int>(b);
  }

  DiagnosisReport report{checked, {}};
  for (const auto& [r, c] : checked.outliers) {
    OutlierDetail detail;
    detail.row = r;
    detail.col = c;
    detail.functional = matrix.functional_names()[static_cast<std::size_t>(r)];
    detail.structor = matrix.structor_names()[static_cast<std::size_t>(c)];
    detail.row_block = row_block[static_cast<std::size_t>(r)];
    detail.col_block = col_block[static_cast<std::size_t>(c)];
    auto block_name = [&](int b) {
      const Block& block = checked.blocks[static_cast<std::size_t>(b)];
      const bool singleton = block.rows.size() == 1 && block.cols.size() == 1;
      return std::string(singleton ? "singleton " : "block ") + std::to_string(b + 1);
    };
    detail.suggestions = {
        "delete the link from \"" + detail.functional + "\" to \"" + detail.structor + "\"",
        "add a structor to " + block_name(detail.row_block) + " and move the link to it",
        "add a functional to " + block_name(detail.col_block) + " and move the link to it",
        "merge " + block_name(detail.row_block) + " and " + block_name(detail.col_block),
    };
    report.outliers.push_back(std::move(detail));
  }
  return report;
}

// ---------------------------------------------------------------------------
// partition search

namespace {

struct CutSide {
  std::vector<int> rows, cols;
};

struct Cut {
  long long cost = 0;
  CutSide a, b;  // a contains the block's smallest row
};

bool side_components_valid(const ModularityMatrix& m, const CutSide& side,
                           std::vector<Block>* out) {
  std::vector<int> row_comp(static_cast<std::size_t>(m.functional_count()), -1);
  std::vector<int> col_comp(static_cast<std::size_t>(m.structor_count()), -1);
  int comp_count = 0;
  for (int start : side.rows) {
    if (row_comp[static_cast<std::size_t>(start)] >= 0) continue;
    const int id = comp_count++;
    std::queue<std::pair<bool, int>> frontier;
    frontier.push({true, start});
    row_comp[static_cast<std::size_t>(start)] = id;
    while (!frontier.empty()) {
      auto [is_row, idx] = frontier.front();
      frontier.pop();
      if (is_row) {
        for (int c : side.cols) {
          if (m.at(idx, c) && col_comp[static_cast<std::size_t>(c)] < 0) {
            col_comp[static_cast<std::size_t>(c)] = id;
            frontier.push({false, c});
          }
        }
      } else {
        for (int r : side.rows) {
          if (m.at(r, idx) && row_comp[static_cast<std::size_t>(r)] < 0) {
            row_comp[static_cast<std::size_t>(r)] = id;
            frontier.push({true, r});
          }
        }
      }
    }
  }
  for (int c : side.cols) {
    if (col_comp[static_cast<std::size_t>(c)] < 0) return false;  // column with no row on this side
  }
  std::vector<Block> blocks(static_cast<std::size_t>(comp_count));
  for (int r : side.rows) blocks[static_cast<std::size_t>(row_comp[static_cast<std::size_t>(r)])].rows.push_back(r);
  for (int c : side.cols) blocks[static_cast<std::size_t>(col_comp[static_cast<std::size_t>(c)])].cols.push_back(c);
  for (const Block& b : blocks) {
    if (b.rows.empty() || b.cols.empty()) return false;
  }
  if (out) *out = std::move(blocks);
  return true;
}

long long cut_cap(const CutSide& a, const CutSide& b) {
  const long long da = static_cast<long long>(std::min(a.rows.size(), a.cols.size()));
  const long long db = static_cast<long long>(std::min(b.rows.size(), b.cols.size()));
  return std::max(da, db);
}

bool side_key_less(const CutSide& x, const CutSide& y) {
  if (x.rows != y.rows) return x.rows < y.rows;
  return x.cols < y.cols;
}

// Exhaustive minimum-cost split of one block. Bipartitions of the chosen
// axis are enumerated directly; members of the other axis then go to the
// side holding more of their links, which is optimal per member, with the
// cheapest moves applied afterwards to keep two of them on each side.
std::optional<Cut> best_cut_enumerated(const ModularityMatrix& m, const Block& block,
                                       bool enumerate_rows) {
  const std::vector<int>& axis = enumerate_rows ? block.rows : block.cols;
  const std::vector<int>& other = enumerate_rows ? block.cols : block.rows;
  const int n = static_cast<int>(axis.size());
  auto link = [&](int a, int o) {
    return enumerate_rows ? m.at(axis[static_cast<std::size_t>(a)], other[static_cast<std::size_t>(o)])
                          : m.at(other[static_cast<std::size_t>(o)], axis[static_cast<std::size_t>(a)]);
  };

  std::optional<Cut> best;
  // Fix axis[0] on side one to halve the enumeration.
  for (std::uint32_t mask = 0; mask < (1u << (n - 1)); ++mask) {
    std::vector<int> side_of_axis(static_cast<std::size_t>(n), 0);
    int count1 = 1;
    for (int i = 1; i < n; ++i) {
      if (mask & (1u << (i - 1))) {
        side_of_axis[static_cast<std::size_t>(i)] = 1;
      } else {
        ++count1;
      }
    }
    const int count2 = n - count1;
    if (count1 < 2 || count2 < 2) continue;

    std::vector<int> side_of_other(other.size(), 0);
    long long cost = 0;
    for (std::size_t o = 0; o < other.size(); ++o) {
      int d1 = 0, d2 = 0;
      for (int i = 0; i < n; ++i) {
        if (link(i, static_cast<int>(o))) {
          (side_of_axis[static_cast<std::size_t>(i)] == 0 ? d1 : d2) += 1;
        }
      }
      if (d2 > d1) {
        side_of_other[o] = 1;
        cost += d1;
      } else {
        cost += d2;
      }
    }
    // Keep at least two members of the other axis on each side.
    for (int target_side = 0; target_side <= 1; ++target_side) {
      while (std::count(side_of_other.begin(), side_of_other.end(), target_side) < 2) {
        long long best_delta = -1;
        std::size_t best_idx = other.size();
        for (std::size_t o = 0; o < other.size(); ++o) {
          if (side_of_other[o] == target_side) continue;
          int d1 = 0, d2 = 0;
          for (int i = 0; i < n; ++i) {
            if (link(i, static_cast<int>(o))) (side_of_axis[static_cast<std::size_t>(i)] == 0 ? d1 : d2) += 1;
          }
          const long long delta = target_side == 0 ? d2 - d1 : d1 - d2;
          if (best_idx == other.size() || delta < best_delta) {
            best_delta = delta;
            best_idx = o;
          }
        }
        if (best_idx == other.size()) break;
        side_of_other[best_idx] = target_side;
        cost += best_delta;
      }
    }
    if (std::count(side_of_other.begin(), side_of_other.end(), 0) < 2 ||
        std::count(side_of_other.begin(), side_of_other.end(), 1) < 2) {
      continue;
    }

    CutSide s1, s2;
    for (int i = 0; i < n; ++i) {
      auto& rows = enumerate_rows ? (side_of_axis[static_cast<std::size_t>(i)] == 0 ? s1.rows : s2.rows)
                                  : (side_of_axis[static_cast<std::size_t>(i)] == 0 ? s1.cols : s2.cols);
      rows.push_back(axis[static_cast<std::size_t>(i)]);
    }
    for (std::size_t o = 0; o < other.size(); ++o) {
      auto& cols = enumerate_rows ? (side_of_other[o] == 0 ? s1.cols : s2.cols)
                                  : (side_of_other[o] == 0 ? s1.rows : s2.rows);
      cols.push_back(other[o]);
    }
    if (cost > cut_cap(s1, s2)) continue;
    if (!side_components_valid(m, s1, nullptr) || !side_components_valid(m, s2, nullptr)) continue;

    // Side a is the one holding the smallest row of the block.
    Cut cut;
    cut.cost = cost;
    const int min_row = block.rows.front();
    const bool s1_has_min = std::find(s1.rows.begin(), s1.rows.end(), min_row) != s1.rows.end();
    cut.a = s1_has_min ? s1 : s2;
    cut.b = s1_has_min ? s2 : s1;
    if (!best || cut.cost < best->cost ||
        (cut.cost == best->cost && side_key_less(cut.a, best->a))) {
      best = cut;
    }
  }
  return best;
}

// Deterministic local search for blocks too large to enumerate: label-sorted
// halves refined by single-row moves.
std::optional<Cut> best_cut_greedy(const ModularityMatrix& m, const Block& block) {
  std::vector<int> rows = block.rows;
  std::sort(rows.begin(), rows.end(), [&](int x, int y) {
    return m.functional_names()[static_cast<std::size_t>(x)] < m.functional_names()[static_cast<std::size_t>(y)];
  });
  std::vector<int> side(rows.size(), 0);
  for (std::size_t i = rows.size() / 2; i < rows.size(); ++i) side[i] = 1;

  auto evaluate = [&](const std::vector<int>& side_of_row) -> std::optional<Cut> {
    CutSide s1, s2;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      (side_of_row[i] == 0 ? s1.rows : s2.rows).push_back(rows[i]);
    }
    if (s1.rows.size() < 2 || s2.rows.size() < 2) return std::nullopt;
    std::sort(s1.rows.begin(), s1.rows.end());
    std::sort(s2.rows.begin(), s2.rows.end());
    std::set<int> set1(s1.rows.begin(), s1.rows.end());
    long long cost = 0;
    for (int c : block.cols) {
      int d1 = 0, d2 = 0;
      for (int r : block.rows) {
        if (m.at(r, c)) (set1.count(r) ? d1 : d2) += 1;
      }
      if (d1 >= d2) {
        s1.cols.push_back(c);
        cost += d2;
      } else {
        s2.cols.push_back(c);
        cost += d1;
      }
    }
    if (s1.cols.size() < 2 || s2.cols.size() < 2) return std::nullopt;
    if (cost > cut_cap(s1, s2)) return std::nullopt;
    if (!side_components_valid(m, s1, nullptr) || !side_components_valid(m, s2, nullptr)) {
      return std::nullopt;
    }
    Cut cut;
    cut.cost = cost;
    const int min_row = block.rows.front();
    const bool s1_has_min = std::find(s1.rows.begin(), s1.rows.end(), min_row) != s1.rows.end();
    cut.a = s1_has_min ? s1 : s2;
    cut.b = s1_has_min ? s2 : s1;
    return cut;
  };

  std::optional<Cut> best = evaluate(side);
  for (int iter = 0; iter < 200; ++iter) {
    bool improved = false;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      std::vector<int> candidate = side;
      candidate[i] ^= 1;
      const auto cut = evaluate(candidate);
      if (cut && (!best || cut->cost < best->cost)) {
        best = cut;
        side = candidate;
        improved = true;
      }
    }
    if (!improved) break;
  }
  return best;
}

std::optional<Cut> best_cut(const ModularityMatrix& m, const Block& block) {
  if (block.rows.size() < 4 || block.cols.size() < 4) return std::nullopt;
  if (block.rows.size() <= 12) return best_cut_enumerated(m, block, true);
  if (block.cols.size() <= 12) return best_cut_enumerated(m, block, false);
  return best_cut_greedy(m, block);
}

}  // namespace

std::vector<PartitionCandidate> suggest_partitions(const ModularityMatrix& matrix, int max_blocks) {
  if (max_blocks < 1) throw AnalysisError("max_blocks must be positive");
  if (!validate(matrix).is_admissible) {
    throw AnalysisError("matrix is not admissible; fix empty rows/columns first");
  }

  std::vector<Block> blocks;
  for (const Component& comp : connected_components(matrix)) {
    blocks.push_back({comp.rows, comp.cols});
  }
  canonical_block_order(blocks);

  std::vector<PartitionCandidate> candidates;
  BlockPartition initial = make_partition(matrix, blocks);
  const int initial_outliers = static_cast<int>(initial.outliers.size());
  candidates.push_back({std::move(initial), initial_outliers});

  while (static_cast<int>(blocks.size()) < max_blocks) {
    std::optional<Cut> chosen;
    std::size_t chosen_block = 0;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      const auto cut = best_cut(matrix, blocks[b]);
      if (cut && (!chosen || cut->cost < chosen->cost ||
                  (cut->cost == chosen->cost && side_key_less(cut->a, chosen->a)))) {
        chosen = cut;
        chosen_block = b;
      }
    }
    if (!chosen) break;

    std::vector<Block> next;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      if (b != chosen_block) next.push_back(blocks[b]);
    }
    for (const CutSide* side : {&chosen->a, &chosen->b}) {
      std::vector<Block> parts;
      side_components_valid(matrix, *side, &parts);
      for (Block& part : parts) {
        std::sort(part.rows.begin(), part.rows.end());
        std::sort(part.cols.begin(), part.cols.end());
        next.push_back(std::move(part));
      }
    }
    canonical_block_order(next);
    blocks = std::move(next);
    BlockPartition partition = make_partition(matrix, blocks);
    const int outliers = static_cast<int>(partition.outliers.size());
    candidates.push_back({std::move(partition), outliers});
  }

  // Pareto filter: more blocks and fewer outliers both count as better.
  std::vector<PartitionCandidate> front;
  for (const PartitionCandidate& c : candidates) {
    const bool dominated = std::any_of(candidates.begin(), candidates.end(), [&](const PartitionCandidate& o) {
      const auto cb = c.partition.blocks.size();
      const auto ob = o.partition.blocks.size();
      return (ob >= cb && o.outlier_count <= c.outlier_count) &&
             (ob > cb || o.outlier_count < c.outlier_count);
    });
    if (!dominated) front.push_back(c);
  }
  std::stable_sort(front.begin(), front.end(), [](const PartitionCandidate& x, const PartitionCandidate& y) {
    return x.partition.blocks.size() < y.partition.blocks.size();
  });
  return front;
}

// ---------------------------------------------------------------------------
// responsibility, sharing, coupling

std::vector<ResponsibilityViolation> single_responsibility_check(const ModularityMatrix& matrix,
                                                                 const BlockPartition& partition) {
  const BlockPartition checked = make_partition(matrix, partition.blocks);
  std::vector<int> row_block(static_cast<std::size_t>(matrix.functional_count()), -1);
  std::vector<int> col_block(static_cast<std::size_t>(matrix.structor_count()), -1);
  for (std::size_t b = 0; b < checked.blocks.size(); ++b) {
    for (int r : checked.blocks[b].rows) row_block[static_cast<std::size_t>(r)] = static_cast<int>(b);
    for (int c : checked.blocks[b].cols) col_block[static_cast<std::size_t>(c)] = static_cast<int>(b);
  }

  std::vector<ResponsibilityViolation> violations;
  for (int r = 0; r < matrix.functional_count(); ++r) {
    std::set<int> touched;
    for (int c = 0; c < matrix.structor_count(); ++c) {
      if (matrix.at(r, c)) touched.insert(col_block[static_cast<std::size_t>(c)]);
    }
    if (touched.size() >= 2) {
      violations.push_back({Axis::Functionals, r, matrix.functional_names()[static_cast<std::size_t>(r)],
                            std::vector<int>(touched.begin(), touched.end())});
    }
  }
  for (int c = 0; c < matrix.structor_count(); ++c) {
    std::set<int> touched;
    for (int r = 0; r < matrix.functional_count(); ++r) {
      if (matrix.at(r, c)) touched.insert(row_block[static_cast<std::size_t>(r)]);
    }
    if (touched.size() >= 2) {
      violations.push_back({Axis::Structors, c, matrix.structor_names()[static_cast<std::size_t>(c)],
                            std::vector<int>(touched.begin(), touched.end())});
    }
  }
  return violations;
}

std::vector<SharedFunctional> shared_functional_flags(const ModularityMatrix& matrix) {
  std::vector<SharedFunctional> shared;
  for (int r = 0; r < matrix.functional_count(); ++r) {
    std::vector<int> providers;
    for (int c = 0; c < matrix.structor_count(); ++c) {
      if (matrix.at(r, c)) providers.push_back(c);
    }
    if (providers.size() >= 2) {
      shared.push_back({r, matrix.functional_names()[static_cast<std::size_t>(r)], std::move(providers),
                        "inheritance-or-composite"});
    }
  }
  return shared;
}

std::vector<BlockCoupling> cross_block_coupling(const ModularityMatrix& matrix,
                                                const BlockPartition& partition) {
  const BlockPartition checked = make_partition(matrix, partition.blocks);
  std::vector<BlockCoupling> couplings;
  for (std::size_t a = 0; a < checked.blocks.size(); ++a) {
    for (std::size_t b = a + 1; b < checked.blocks.size(); ++b) {
      BlockCoupling coupling;
      coupling.block_a = static_cast<int>(a);
      coupling.block_b = static_cast<int>(b);
      for (int ca : checked.blocks[a].cols) {
        for (int cb : checked.blocks[b].cols) {
          long long dot = 0;
          for (int r = 0; r < matrix.functional_count(); ++r) dot += matrix.at(r, ca) * matrix.at(r, cb);
          if (dot > coupling.max_column_product) {
            coupling.max_column_product = dot;
            coupling.column_witness = {ca, cb};
          }
        }
      }
      for (int ra : checked.blocks[a].rows) {
        for (int rb : checked.blocks[b].rows) {
          long long dot = 0;
          for (int c = 0; c < matrix.structor_count(); ++c) dot += matrix.at(ra, c) * matrix.at(rb, c);
          if (dot > coupling.max_row_product) {
            coupling.max_row_product = dot;
            coupling.row_witness = {ra, rb};
          }
        }
      }
      coupling.coupled = coupling.max_column_product > 0 || coupling.max_row_product > 0;
      couplings.push_back(coupling);
    }
  }
  return couplings;
}

// ---------------------------------------------------------------------------
// collapse / expand

CollapseResult collapse_block(const ModularityMatrix& matrix, const Block& block,
                              const std::string& new_label) {
  if (new_label.empty()) throw AnalysisError("collapsed label must not be empty");
  Block sorted = block;
  std::sort(sorted.rows.begin(), sorted.rows.end());
  std::sort(sorted.cols.begin(), sorted.cols.end());
  if (sorted.rows.empty() || sorted.cols.empty()) {
    throw AnalysisError("a block needs at least one row and one column to collapse");
  }
  std::set<int> row_set(sorted.rows.begin(), sorted.rows.end());
  std::set<int> col_set(sorted.cols.begin(), sorted.cols.end());
  if (row_set.size() != sorted.rows.size() || sorted.rows.front() < 0 ||
      sorted.rows.back() >= matrix.functional_count()) {
    throw AnalysisError("block rows out of range or repeated");
  }
  if (col_set.size() != sorted.cols.size() || sorted.cols.front() < 0 ||
      sorted.cols.back() >= matrix.structor_count()) {
    throw AnalysisError("block columns out of range or repeated");
  }
  for (int r = 0; r < matrix.functional_count(); ++r) {
    if (!row_set.count(r) && matrix.functional_names()[static_cast<std::size_t>(r)] == new_label) {
      throw AnalysisError("collapsed label collides with functional \"" + new_label + "\"");
    }
  }
  for (int c = 0; c < matrix.structor_count(); ++c) {
    if (!col_set.count(c) && matrix.structor_names()[static_cast<std::size_t>(c)] == new_label) {
      throw AnalysisError("collapsed label collides with structor \"" + new_label + "\"");
    }
  }

  std::vector<std::string> fnames, snames;
  std::vector<int> kept_rows, kept_cols;  // -1 marks the collapsed slot
  for (int r = 0; r < matrix.functional_count(); ++r) {
    if (r == sorted.rows.front()) {
      fnames.push_back(new_label);
      kept_rows.push_back(-1);
    } else if (!row_set.count(r)) {
      fnames.push_back(matrix.functional_names()[static_cast<std::size_t>(r)]);
      kept_rows.push_back(r);
    }
  }
  for (int c = 0; c < matrix.structor_count(); ++c) {
    if (c == sorted.cols.front()) {
      snames.push_back(new_label);
      kept_cols.push_back(-1);
    } else if (!col_set.count(c)) {
      snames.push_back(matrix.structor_names()[static_cast<std::size_t>(c)]);
      kept_cols.push_back(c);
    }
  }

  std::vector<std::vector<int>> entries(fnames.size(), std::vector<int>(snames.size(), 0));
  for (std::size_t i = 0; i < kept_rows.size(); ++i) {
    for (std::size_t j = 0; j < kept_cols.size(); ++j) {
      const int r = kept_rows[i];
      const int c = kept_cols[j];
      if (r >= 0 && c >= 0) {
        entries[i][j] = matrix.at(r, c);
      } else if (r < 0 && c < 0) {
        entries[i][j] = 1;
      } else if (r < 0) {
        int any = 0;
        for (int br : sorted.rows) any |= matrix.at(br, c);
        entries[i][j] = any;
      } else {
        int any = 0;
        for (int bc : sorted.cols) any |= matrix.at(r, bc);
        entries[i][j] = any;
      }
    }
  }

  CollapseResult result{
      ModularityMatrix::build(matrix.name(), std::move(fnames), std::move(snames), entries),
      HierarchyNode{matrix, {}}};
  result.node.children.emplace(
      new_label, HierarchyChild{sorted,
                                HierarchyNode{submatrix(matrix, sorted.rows, sorted.cols, new_label), {}}});
  return result;
}

ModularityMatrix expand_block(const ModularityMatrix& matrix, const HierarchyNode& node,
                              const std::string& label) {
  const auto it = node.children.find(label);
  if (it == node.children.end()) {
    throw AnalysisError("unknown collapsed label \"" + label + "\"");
  }
  const CollapseResult redone = collapse_block(node.matrix, it->second.block, label);
  if (redone.matrix != matrix) {
    throw AnalysisError("matrix does not match the recorded collapse for \"" + label + "\"");
  }
  return node.matrix;
}

}  // namespace sdlab
