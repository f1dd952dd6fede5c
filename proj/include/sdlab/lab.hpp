#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sdlab/criteria.hpp"
#include "sdlab/rational.hpp"
#include "sdlab/structure.hpp"

namespace sdlab {

enum class Verdict { Standard, Bordered, NonStandard };

std::string to_string(Verdict verdict);  // "standard" / "bordered" / "non-standard"

/// Everything needed to judge how close a design is to the ideal square,
/// block-diagonal form. The optional fields require an admissible matrix.
struct StandardAssessment {
  bool is_admissible = false;
  bool is_square = false;
  bool is_full_rank = false;
  bool is_block_diagonal = false;  // no within-bound finer partition exists
  bool is_modular = false;         // at least two components
  int rank = 0;
  int component_count = 0;
  CriteriaReport criteria;           // of the matrix as given
  Rational bordered_bound;           // absolute outlier allowance
  std::optional<long long> canonical_diagonality;  // after reordering detected blocks
  std::optional<int> refinement_outliers;          // fewest outliers among finer partitions
  std::optional<int> minimal_modular_outliers;     // fewest outliers among >=2-block partitions
  std::vector<PartitionCandidate> front;
  Verdict verdict = Verdict::NonStandard;
};

/// Assesses against the standard form. `bound_fraction` of the 1-entries is
/// the outlier allowance: a matrix whose detected blocks can be refined into
/// more blocks at that price or less is considered bordered rather than
/// block-diagonal; standard requires every boolean to hold.
StandardAssessment assess_standard(const ModularityMatrix& matrix,
                                   const Rational& bound_fraction = Rational(1, 10),
                                   int max_blocks = 16);

enum class CompareOutcome { Left, Right, Tie };

struct DesignComparison {
  std::string left_name;
  std::string right_name;
  StandardAssessment left;
  StandardAssessment right;
  CompareOutcome outcome = CompareOutcome::Tie;
  std::string deciding_factor;  // the key field that settled it, or "tie"
};

/// Lexicographic comparison: squareness, full rank, fewer minimal outliers
/// (unknown counts worst), higher canonical diagonality, higher sparsity.
/// Every key field is independent of row/column order.
DesignComparison compare_designs(const ModularityMatrix& left, const ModularityMatrix& right);

struct BlockSpec {
  int rows = 0;
  int cols = 0;
  Rational density;  // chance for each non-spine in-block cell
};

struct GeneratorSpec {
  std::string name = "generated";
  std::uint64_t seed = 0;
  std::vector<BlockSpec> blocks;
  int outlier_count = 0;
};

/// Deterministic random system: blocks on the diagonal, a diagonal-like
/// spine in each (so no empty row or column), density fill, then outliers
/// placed off-block, nearest to the blocks first.
ModularityMatrix generate_system(const GeneratorSpec& spec);

struct TrendPoint {
  int size = 0;
  Rational sparsity;
};

/// Builds a square block-diagonal system of each size (dense blocks of
/// `block_size`, identity when 1, a smaller trailing block when the size is
/// not divisible) and reports exact sparsity, checking it strictly grows.
std::vector<TrendPoint> sparsity_trend(const std::vector<int>& sizes, int block_size);

}  // namespace sdlab
