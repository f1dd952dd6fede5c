#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sdlab/matrix.hpp"

namespace sdlab {

struct Block {
  std::vector<int> rows;  // sorted ascending
  std::vector<int> cols;
};

struct Component {
  std::vector<int> rows;
  std::vector<int> cols;
  bool degenerate = false;  // an all-zero row or column forms one alone
};

/// Components of the bipartite functional/structor graph induced by the
/// 1-entries, ordered by smallest row index (row-less ones last by column).
std::vector<Component> connected_components(const ModularityMatrix& matrix);

/// Blocks are disjoint, jointly cover every row and column, and each has at
/// least one row and one column. Outliers are the 1-entries outside every
/// block rectangle, in row-major order.
struct BlockPartition {
  std::vector<Block> blocks;
  std::vector<std::pair<int, int>> outliers;
};

/// Validates the block list against the matrix and fills in the outliers.
BlockPartition make_partition(const ModularityMatrix& matrix, std::vector<Block> blocks);

struct BlockFlags {
  bool square = false;
  bool well_composed = false;
};

struct DetectedBlocks {
  BlockPartition partition;      // components as blocks; zero outliers by construction
  std::vector<BlockFlags> flags;
  bool is_modular = false;       // false when everything is one component
};

/// Requires an admissible matrix. Blocks are ordered by size descending,
/// then by smallest row index, to keep reports deterministic.
DetectedBlocks detect_blocks(const ModularityMatrix& matrix);

struct Reordering {
  std::vector<int> row_order;  // row_order[new_position] = original row
  std::vector<int> col_order;
  ModularityMatrix matrix;     // original composed with the two orders
  long long diagonality = 0;
  BlockPartition partition;    // the input partition mapped to the new positions
};

/// Rearranges rows and columns so the partition's blocks become contiguous
/// along the diagonal in partition order; inside each block the order is
/// chosen to maximize the full-matrix diagonality (exhaustively up to 6x6
/// per block, barycenter plus pairwise-swap hill climbing beyond that).
Reordering reorder(const ModularityMatrix& matrix, const BlockPartition& partition);

struct OutlierDetail {
  int row = 0;
  int col = 0;
  std::string functional;
  std::string structor;
  int row_block = 0;  // block owning the row
  int col_block = 0;  // block owning the column
  std::vector<std::string> suggestions;
};

struct DiagnosisReport {
  BlockPartition partition;
  std::vector<OutlierDetail> outliers;
};

DiagnosisReport diagnose_outliers(const ModularityMatrix& matrix, const BlockPartition& partition);

struct PartitionCandidate {
  BlockPartition partition;
  int outlier_count = 0;
};

/// Candidate block structures, coarsest first: the connected components, then
/// successive minimum-cost splits. A split is considered only when both sides
/// keep at least two rows and two columns and its cost does not exceed the
/// larger side's smaller dimension, so shaving single pairs off a cohesive
/// block never qualifies. The result is Pareto-optimal in (more blocks,
/// fewer outliers).
std::vector<PartitionCandidate> suggest_partitions(const ModularityMatrix& matrix,
                                                   int max_blocks = 16);

struct ResponsibilityViolation {
  Axis axis;
  int index = 0;
  std::string label;
  std::vector<int> blocks;  // blocks reached through the vector's 1-entries
};

/// A structor should serve rows of a single block and a functional should be
/// provided within a single block; anything else is listed here.
std::vector<ResponsibilityViolation> single_responsibility_check(const ModularityMatrix& matrix,
                                                                 const BlockPartition& partition);

struct SharedFunctional {
  int functional = 0;
  std::string label;
  std::vector<int> structors;
  std::string note;  // "inheritance-or-composite"
};

/// Functionals provided by more than one structor. The matrix alone cannot
/// tell inheritance from composition, so entries carry a note instead of a
/// resolution.
std::vector<SharedFunctional> shared_functional_flags(const ModularityMatrix& matrix);

struct BlockCoupling {
  int block_a = 0;
  int block_b = 0;
  long long max_column_product = 0;
  long long max_row_product = 0;
  bool coupled = false;  // any nonzero product in either direction
  std::pair<int, int> column_witness{-1, -1};  // argmax column pair, if any
  std::pair<int, int> row_witness{-1, -1};
};

/// Inner products are taken over full-length vectors, so couplings caused by
/// outlier entries are visible even across block boundaries.
std::vector<BlockCoupling> cross_block_coupling(const ModularityMatrix& matrix,
                                                const BlockPartition& partition);

struct HierarchyChild;

/// One level of a design hierarchy. `matrix` is the expanded view at this
/// level; each child maps a collapsed label in the level above to the block
/// it stands for.
struct HierarchyNode {
  ModularityMatrix matrix;
  std::map<std::string, HierarchyChild> children;
};

struct HierarchyChild {
  Block block;
  HierarchyNode node;  // node.matrix is the sub-block as its own matrix
};

struct CollapseResult {
  ModularityMatrix matrix;  // the collapsed, higher-level view
  HierarchyNode node;
};

/// Replaces the block by a single row/column pair named `new_label` sitting
/// at the block's first row/column positions. Links between the block and
/// the outside are OR-aggregated onto the new row and column; the collapsed
/// diagonal cell is 1.
CollapseResult collapse_block(const ModularityMatrix& matrix, const Block& block,
                              const std::string& new_label);

/// Inverse of collapse_block: checks that `matrix` is exactly the recorded
/// collapse of the node's expanded view and returns that view.
ModularityMatrix expand_block(const ModularityMatrix& matrix, const HierarchyNode& node,
                              const std::string& label);

}  // namespace sdlab
