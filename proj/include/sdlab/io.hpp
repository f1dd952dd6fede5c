#pragma once

#include <string>
#include <vector>

#include "sdlab/criteria.hpp"
#include "sdlab/lab.hpp"
#include "sdlab/linalg.hpp"
#include "sdlab/matrix.hpp"
#include "sdlab/structure.hpp"

namespace sdlab {

/// Input-text problems, with 1-based file coordinates when known.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& message, int line = 0, int column = 0)
      : Error(message), line_(line), column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// CSV layout: header = corner cell then structor names; each later row =
/// functional name then 0/1 cells. A non-empty corner cell names the matrix
/// (render_csv always writes the name there); otherwise `default_name` is
/// used. Labels are trimmed and must not contain commas.
ModularityMatrix parse_csv(const std::string& text, const std::string& default_name = "design");
std::string render_csv(const ModularityMatrix& matrix);

/// Design language: `system <name>`, an optional `functionals: <comma list>`
/// fixing row order, then one or more `structor <name> provides <comma list>`.
/// Without a functionals line, rows appear in first-mention order. `#` opens
/// a comment.
ModularityMatrix parse_sdl(const std::string& text);

/// Partition files name rows and columns by label, never by index, so the
/// same file applies before and after any reordering:
/// {"blocks": [{"rows": ["..."], "cols": ["..."]}, ...]}
BlockPartition parse_partition_json(const std::string& text, const ModularityMatrix& matrix);
std::string render_partition_json(const BlockPartition& partition, const ModularityMatrix& matrix);

enum class ReportFormat { Text, Json, Markdown };

ReportFormat parse_format(const std::string& word);  // "text" / "json" / "markdown"

struct ReportDocument {
  ReportFormat format = ReportFormat::Text;
  std::string body;
};

/// Character grid of the matrix: positional ids on the axes, `1`/`.` cells,
/// `*` for outliers, and block boundaries drawn when every block of the
/// partition covers contiguous rows and columns. A legend maps positional
/// ids to labels whenever they differ.
std::string render_matrix_grid(const ModularityMatrix& matrix,
                               const BlockPartition* partition = nullptr);

ReportDocument render_validation_report(const ModularityMatrix& matrix,
                                        const ValidationReport& report, ReportFormat format);
ReportDocument render_criteria_report(const ModularityMatrix& matrix, const CriteriaReport& report,
                                      ReportFormat format);
ReportDocument render_blocks_report(const ModularityMatrix& matrix, const DetectedBlocks& blocks,
                                    ReportFormat format);
ReportDocument render_reorder_report(const Reordering& reordering, ReportFormat format);
ReportDocument render_diagnosis_report(const ModularityMatrix& matrix,
                                       const DiagnosisReport& report, ReportFormat format);
ReportDocument render_suggestions_report(const ModularityMatrix& matrix,
                                         const std::vector<PartitionCandidate>& candidates,
                                         ReportFormat format);
ReportDocument render_comparison_report(const DesignComparison& comparison, ReportFormat format);
ReportDocument render_assessment_report(const ModularityMatrix& matrix,
                                        const StandardAssessment& assessment, ReportFormat format);
ReportDocument render_count_vector_report(const CountVector& vector, ReportFormat format);
ReportDocument render_trend_report(const std::vector<TrendPoint>& points, int block_size,
                                   ReportFormat format);
/// For operations whose result is a matrix (generate, coalesce, collapse,
/// expand): `headline` says what produced it.
ReportDocument render_matrix_report(const ModularityMatrix& matrix, const std::string& headline,
                                    ReportFormat format);

/// The json report bodies parse back to the payloads they came from, so
/// reports are both human output and a machine interface.
ValidationReport parse_validation_json(const std::string& text);
CriteriaReport parse_criteria_json(const std::string& text);
DiagnosisReport parse_diagnosis_json(const std::string& text);
StandardAssessment parse_assessment_json(const std::string& text);
DesignComparison parse_comparison_json(const std::string& text);

ModularityMatrix parse_matrix_json(const std::string& text);
std::string render_matrix_json(const ModularityMatrix& matrix);

/// Collapse history as a stack, most recent level first; each entry holds
/// the expanded view and the collapsed block behind one label.
std::string save_hierarchy(const std::vector<HierarchyNode>& stack);
std::vector<HierarchyNode> load_hierarchy(const std::string& text);

}  // namespace sdlab
