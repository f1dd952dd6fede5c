#include "sdlab/lab.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <random>

#include "sdlab/linalg.hpp"

namespace sdlab {

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Standard: return "standard";
    case Verdict::Bordered: return "bordered";
    case Verdict::NonStandard: return "non-standard";
  }
  return "non-standard";
}

StandardAssessment assess_standard(const ModularityMatrix& matrix, const Rational& bound_fraction,
                                   int max_blocks) {
  StandardAssessment a;
  a.criteria = criteria(matrix);
  a.rank = rank(matrix);
  a.is_admissible = validate(matrix).is_admissible;
  a.is_square = matrix.functional_count() == matrix.structor_count();
  a.is_full_rank = a.rank == std::min(matrix.functional_count(), matrix.structor_count());
  a.component_count = static_cast<int>(connected_components(matrix).size());
  a.is_modular = a.component_count >= 2;
  a.bordered_bound = bound_fraction * Rational(a.criteria.ones_count);

  if (a.is_admissible) {
    const DetectedBlocks detected = detect_blocks(matrix);
    a.canonical_diagonality = reorder(matrix, detected.partition).diagonality;
    a.front = suggest_partitions(matrix, max_blocks);
    const std::size_t base_blocks = detected.partition.blocks.size();
    for (const PartitionCandidate& candidate : a.front) {
      if (candidate.partition.blocks.size() > base_blocks) {
        if (!a.refinement_outliers || candidate.outlier_count < *a.refinement_outliers) {
          a.refinement_outliers = candidate.outlier_count;
        }
      }
      if (candidate.partition.blocks.size() >= 2) {
        if (!a.minimal_modular_outliers || candidate.outlier_count < *a.minimal_modular_outliers) {
          a.minimal_modular_outliers = candidate.outlier_count;
        }
      }
    }
    a.is_block_diagonal =
        !(a.refinement_outliers && Rational(*a.refinement_outliers) <= a.bordered_bound);
  }

  if (a.is_admissible && a.is_square && a.is_full_rank && a.is_modular && a.is_block_diagonal) {
    a.verdict = Verdict::Standard;
  } else if (a.is_admissible && a.is_square && a.is_full_rank && a.is_modular &&
             !a.is_block_diagonal) {
    a.verdict = Verdict::Bordered;
  } else {
    a.verdict = Verdict::NonStandard;
  }
  return a;
}

DesignComparison compare_designs(const ModularityMatrix& left, const ModularityMatrix& right) {
  DesignComparison d;
  d.left_name = left.name();
  d.right_name = right.name();
  d.left = assess_standard(left);
  d.right = assess_standard(right);

  auto decide = [&](CompareOutcome outcome, const std::string& factor) {
    d.outcome = outcome;
    d.deciding_factor = factor;
  };
  // Lower is better once missing values are mapped past every real one.
  auto fewer = [](const std::optional<int>& x) {
    return x ? static_cast<long long>(*x) : std::numeric_limits<long long>::max();
  };
  auto higher = [](const std::optional<long long>& x) {
    return x ? *x : std::numeric_limits<long long>::min();
  };

  if (d.left.is_square != d.right.is_square) {
    decide(d.left.is_square ? CompareOutcome::Left : CompareOutcome::Right, "squareness");
  } else if (d.left.is_full_rank != d.right.is_full_rank) {
    decide(d.left.is_full_rank ? CompareOutcome::Left : CompareOutcome::Right, "full rank");
  } else if (fewer(d.left.minimal_modular_outliers) != fewer(d.right.minimal_modular_outliers)) {
    decide(fewer(d.left.minimal_modular_outliers) < fewer(d.right.minimal_modular_outliers)
               ? CompareOutcome::Left
               : CompareOutcome::Right,
           "fewer minimal outliers");
  } else if (higher(d.left.canonical_diagonality) != higher(d.right.canonical_diagonality)) {
    decide(higher(d.left.canonical_diagonality) > higher(d.right.canonical_diagonality)
               ? CompareOutcome::Left
               : CompareOutcome::Right,
           "higher diagonality");
  } else if (d.left.criteria.sparsity != d.right.criteria.sparsity) {
    decide(d.left.criteria.sparsity > d.right.criteria.sparsity ? CompareOutcome::Left
                                                                : CompareOutcome::Right,
           "higher sparsity");
  } else {
    decide(CompareOutcome::Tie, "tie");
  }
  return d;
}

// ---------------------------------------------------------------------------
// generation

namespace {

// std::mt19937 emits exactly 32 uniform bits per call; drawing through it
// directly (instead of std::uniform_* distributions, whose mapping is
// implementation-defined) keeps output identical across standard libraries.
std::uint32_t draw_u32(std::mt19937& engine) { return engine(); }

std::uint32_t draw_below(std::mt19937& engine, std::uint32_t n) {
  const std::uint64_t full = 1ull << 32;
  const std::uint64_t span = full - full % n;
  while (true) {
    const std::uint64_t d = draw_u32(engine);
    if (d < span) return static_cast<std::uint32_t>(d % n);
  }
}

std::uint64_t density_threshold(const Rational& density) {
  const BigInt scaled = (numerator(density) << 32) / denominator(density);
  return scaled.convert_to<std::uint64_t>();
}

}  // namespace

ModularityMatrix generate_system(const GeneratorSpec& spec) {
  if (spec.blocks.empty()) throw AnalysisError("generator needs at least one block");
  if (spec.outlier_count < 0) throw AnalysisError("outlier count must be non-negative");
  int total_rows = 0, total_cols = 0;
  for (const BlockSpec& block : spec.blocks) {
    if (block.rows < 1 || block.cols < 1) {
      throw AnalysisError("every generated block needs at least one row and one column");
    }
    if (block.density < 0 || block.density > 1) {
      throw AnalysisError("density must lie in [0, 1]");
    }
    total_rows += block.rows;
    total_cols += block.cols;
  }

  std::vector<std::vector<int>> entries(static_cast<std::size_t>(total_rows),
                                        std::vector<int>(static_cast<std::size_t>(total_cols), 0));
  std::vector<std::pair<int, int>> row_span, col_span;  // per block: [begin, end)
  std::mt19937 engine(static_cast<std::uint32_t>(spec.seed ^ (spec.seed >> 32)));

  int row_off = 0, col_off = 0;
  for (const BlockSpec& block : spec.blocks) {
    row_span.emplace_back(row_off, row_off + block.rows);
    col_span.emplace_back(col_off, col_off + block.cols);
    // Spine: every row and column of the block gets a deterministic 1.
    for (int i = 0; i < block.rows; ++i) entries[row_off + i][col_off + i % block.cols] = 1;
    for (int j = 0; j < block.cols; ++j) entries[row_off + j % block.rows][col_off + j] = 1;

    const std::uint64_t threshold = density_threshold(block.density);
    for (int i = 0; i < block.rows; ++i) {
      for (int j = 0; j < block.cols; ++j) {
        if (entries[row_off + i][col_off + j]) continue;
        if (draw_u32(engine) < threshold) entries[row_off + i][col_off + j] = 1;
      }
    }
    row_off += block.rows;
    col_off += block.cols;
  }

  // Off-block cells grouped by taxicab distance to the nearest block; the
  // requested outliers fill the nearest tier first, at random inside a tier.
  std::map<int, std::vector<std::pair<int, int>>> tiers;
  std::size_t off_block = 0;
  for (int r = 0; r < total_rows; ++r) {
    for (int c = 0; c < total_cols; ++c) {
      int nearest = -1;
      for (std::size_t b = 0; b < spec.blocks.size(); ++b) {
        int dr = 0, dc = 0;
        if (r < row_span[b].first) dr = row_span[b].first - r;
        if (r >= row_span[b].second) dr = r - row_span[b].second + 1;
        if (c < col_span[b].first) dc = col_span[b].first - c;
        if (c >= col_span[b].second) dc = c - col_span[b].second + 1;
        const int dist = dr + dc;
        if (nearest < 0 || dist < nearest) nearest = dist;
      }
      if (nearest > 0) {
        tiers[nearest].emplace_back(r, c);
        ++off_block;
      }
    }
  }
  if (static_cast<std::size_t>(spec.outlier_count) > off_block) {
    throw AnalysisError("infeasible spec: only " + std::to_string(off_block) +
                        " off-block cells for " + std::to_string(spec.outlier_count) + " outliers");
  }
  int remaining = spec.outlier_count;
  for (auto& [dist, cells] : tiers) {
    while (remaining > 0 && !cells.empty()) {
      const std::uint32_t pick = draw_below(engine, static_cast<std::uint32_t>(cells.size()));
      const auto [r, c] = cells[pick];
      cells[pick] = cells.back();
      cells.pop_back();
      entries[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = 1;
      --remaining;
    }
    if (remaining == 0) break;
  }

  std::vector<std::string> fnames, snames;
  for (int r = 0; r < total_rows; ++r) fnames.push_back("F" + std::to_string(r + 1));
  for (int c = 0; c < total_cols; ++c) snames.push_back("S" + std::to_string(c + 1));
  return ModularityMatrix::build(spec.name, std::move(fnames), std::move(snames), entries);
}

std::vector<TrendPoint> sparsity_trend(const std::vector<int>& sizes, int block_size) {
  if (block_size < 1) throw AnalysisError("block size must be positive");
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] < 1) throw AnalysisError("sizes must be positive");
    if (i > 0 && sizes[i] <= sizes[i - 1]) throw AnalysisError("sizes must be strictly ascending");
  }

  std::vector<TrendPoint> points;
  for (int size : sizes) {
    std::vector<std::vector<int>> entries(static_cast<std::size_t>(size),
                                          std::vector<int>(static_cast<std::size_t>(size), 0));
    for (int base = 0; base < size; base += block_size) {
      const int extent = std::min(block_size, size - base);
      for (int i = 0; i < extent; ++i) {
        for (int j = 0; j < extent; ++j) entries[base + i][base + j] = 1;
      }
    }
    std::vector<std::string> fnames, snames;
    for (int r = 0; r < size; ++r) fnames.push_back("F" + std::to_string(r + 1));
    for (int c = 0; c < size; ++c) snames.push_back("S" + std::to_string(c + 1));
    const ModularityMatrix m = ModularityMatrix::build(
        "standard-" + std::to_string(size), std::move(fnames), std::move(snames), entries);
    points.push_back({size, sparsity(m)});
  }
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (!(points[i].sparsity > points[i - 1].sparsity)) {
      throw AnalysisError("sparsity failed to increase from size " +
                          std::to_string(points[i - 1].size) + " to " +
                          std::to_string(points[i].size));
    }
  }
  return points;
}

}  // namespace sdlab
