#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace sdlab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Construction-time problems: inconsistent dimensions, bad labels, non-binary cells.
class BuildError : public Error {
 public:
  using Error::Error;
};

/// An operation was asked to analyze input it cannot accept (inadmissible
/// matrix, invalid partition, infeasible generator spec, ...).
class AnalysisError : public Error {
 public:
  using Error::Error;
};

enum class Axis { Functionals, Structors };

/// Labeled binary matrix: rows are functionals, columns are structors.
/// Entry (f, s) == 1 means structor s provides functional f.
class ModularityMatrix {
 public:
  static ModularityMatrix build(std::string name,
                                std::vector<std::string> functional_names,
                                std::vector<std::string> structor_names,
                                const std::vector<std::vector<int>>& entries);

  const std::string& name() const { return name_; }
  int functional_count() const { return static_cast<int>(functional_names_.size()); }
  int structor_count() const { return static_cast<int>(structor_names_.size()); }
  const std::vector<std::string>& functional_names() const { return functional_names_; }
  const std::vector<std::string>& structor_names() const { return structor_names_; }

  int at(int row, int col) const { return grid_[static_cast<std::size_t>(row) * structor_names_.size() + col]; }

  long long ones_count() const;

  /// Matrix with rows/columns rearranged. order[new_position] = old index;
  /// both orders must be permutations of their axis.
  ModularityMatrix permuted(const std::vector<int>& row_order,
                            const std::vector<int>& col_order) const;

  ModularityMatrix transposed() const;

  ModularityMatrix renamed(std::string name) const;

  bool operator==(const ModularityMatrix& other) const;
  bool operator!=(const ModularityMatrix& other) const { return !(*this == other); }

 private:
  ModularityMatrix(std::string name, std::vector<std::string> functional_names,
                   std::vector<std::string> structor_names, std::vector<std::uint8_t> grid);

  std::string name_;
  std::vector<std::string> functional_names_;
  std::vector<std::string> structor_names_;
  std::vector<std::uint8_t> grid_;  // row-major
};

struct Finding {
  enum class Severity { Error, Warning };
  Severity severity;
  std::string code;   // E_EMPTY_ROW, W_DUP_COL, ...
  Axis axis;
  int index;          // 0-based position on the axis
  std::string label;
  std::string message;
};

struct ValidationReport {
  std::vector<Finding> findings;
  bool is_admissible = true;  // true iff no Error-severity finding

  bool has(const std::string& code) const;
};

/// Structural checks. Empty rows/columns are errors; full or duplicated
/// rows/columns are warnings.
ValidationReport validate(const ModularityMatrix& matrix);

}  // namespace sdlab
