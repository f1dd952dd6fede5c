#include "sdlab/matrix.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

namespace sdlab {

namespace {

void check_labels(const std::vector<std::string>& labels, const char* what) {
  std::set<std::string> seen;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i].empty()) {
      throw BuildError(std::string(what) + " label " + std::to_string(i + 1) + " is empty");
    }
    if (!seen.insert(labels[i]).second) {
      throw BuildError(std::string("duplicate ") + what + " label \"" + labels[i] + "\"");
    }
  }
}

void check_permutation(const std::vector<int>& order, int n, const char* what) {
  if (static_cast<int>(order.size()) != n) {
    throw BuildError(std::string(what) + " order has wrong length");
  }
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int v : order) {
    if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)]) {
      throw BuildError(std::string(what) + " order is not a permutation");
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
}

}  // namespace

ModularityMatrix::ModularityMatrix(std::string name, std::vector<std::string> functional_names,
                                   std::vector<std::string> structor_names,
                                   std::vector<std::uint8_t> grid)
    : name_(std::move(name)),
      functional_names_(std::move(functional_names)),
      structor_names_(std::move(structor_names)),
      grid_(std::move(grid)) {}

ModularityMatrix ModularityMatrix::build(std::string name,
                                         std::vector<std::string> functional_names,
                                         std::vector<std::string> structor_names,
                                         const std::vector<std::vector<int>>& entries) {
  if (functional_names.empty()) throw BuildError("matrix needs at least one functional");
  if (structor_names.empty()) throw BuildError("matrix needs at least one structor");
  check_labels(functional_names, "functional");
  check_labels(structor_names, "structor");
  if (entries.size() != functional_names.size()) {
    throw BuildError("entry grid has " + std::to_string(entries.size()) + " rows, expected " +
                     std::to_string(functional_names.size()));
  }
  std::vector<std::uint8_t> grid;
  grid.reserve(functional_names.size() * structor_names.size());
  for (std::size_t r = 0; r < entries.size(); ++r) {
    if (entries[r].size() != structor_names.size()) {
      throw BuildError("row " + std::to_string(r + 1) + " has " + std::to_string(entries[r].size()) +
                       " cells, expected " + std::to_string(structor_names.size()));
    }
    for (int v : entries[r]) {
      if (v != 0 && v != 1) {
        throw BuildError("entries must be 0 or 1, found " + std::to_string(v) + " in row " +
                         std::to_string(r + 1));
      }
      grid.push_back(static_cast<std::uint8_t>(v));
    }
  }
  return ModularityMatrix(std::move(name), std::move(functional_names), std::move(structor_names),
                          std::move(grid));
}

long long ModularityMatrix::ones_count() const {
  long long n = 0;
  for (std::uint8_t v : grid_) n += v;
  return n;
}

ModularityMatrix ModularityMatrix::permuted(const std::vector<int>& row_order,
                                            const std::vector<int>& col_order) const {
  check_permutation(row_order, functional_count(), "row");
  check_permutation(col_order, structor_count(), "column");
  std::vector<std::string> fnames, snames;
  fnames.reserve(row_order.size());
  snames.reserve(col_order.size());
  for (int r : row_order) fnames.push_back(functional_names_[static_cast<std::size_t>(r)]);
  for (int c : col_order) snames.push_back(structor_names_[static_cast<std::size_t>(c)]);
  std::vector<std::uint8_t> grid;
  grid.reserve(grid_.size());
  for (int r : row_order) {
    for (int c : col_order) {
      grid.push_back(static_cast<std::uint8_t>(at(r, c)));
    }
  }
  return ModularityMatrix(name_, std::move(fnames), std::move(snames), std::move(grid));
}

ModularityMatrix ModularityMatrix::transposed() const {
  std::vector<std::uint8_t> grid(grid_.size());
  for (int r = 0; r < functional_count(); ++r) {
    for (int c = 0; c < structor_count(); ++c) {
      grid[static_cast<std::size_t>(c) * functional_names_.size() + r] =
          static_cast<std::uint8_t>(at(r, c));
    }
  }
  return ModularityMatrix(name_, structor_names_, functional_names_, std::move(grid));
}

ModularityMatrix ModularityMatrix::renamed(std::string name) const {
  ModularityMatrix copy = *this;
  copy.name_ = std::move(name);
  return copy;
}

bool ModularityMatrix::operator==(const ModularityMatrix& other) const {
  return name_ == other.name_ && functional_names_ == other.functional_names_ &&
         structor_names_ == other.structor_names_ && grid_ == other.grid_;
}

bool ValidationReport::has(const std::string& code) const {
  return std::any_of(findings.begin(), findings.end(),
                     [&](const Finding& f) { return f.code == code; });
}

namespace {

std::vector<std::uint8_t> row_pattern(const ModularityMatrix& m, int r) {
  std::vector<std::uint8_t> p(static_cast<std::size_t>(m.structor_count()));
  for (int c = 0; c < m.structor_count(); ++c) p[static_cast<std::size_t>(c)] = static_cast<std::uint8_t>(m.at(r, c));
  return p;
}

std::vector<std::uint8_t> col_pattern(const ModularityMatrix& m, int c) {
  std::vector<std::uint8_t> p(static_cast<std::size_t>(m.functional_count()));
  for (int r = 0; r < m.functional_count(); ++r) p[static_cast<std::size_t>(r)] = static_cast<std::uint8_t>(m.at(r, c));
  return p;
}

}  // namespace

ValidationReport validate(const ModularityMatrix& matrix) {
  ValidationReport report;
  const int nf = matrix.functional_count();
  const int ns = matrix.structor_count();

  std::unordered_map<std::string, int> first_row, first_col;

  for (int r = 0; r < nf; ++r) {
    auto pattern = row_pattern(matrix, r);
    const long long ones = std::count(pattern.begin(), pattern.end(), std::uint8_t{1});
    const std::string& label = matrix.functional_names()[static_cast<std::size_t>(r)];
    if (ones == 0) {
      report.findings.push_back({Finding::Severity::Error, "E_EMPTY_ROW", Axis::Functionals, r, label,
                                 "functional \"" + label + "\" (row " + std::to_string(r + 1) +
                                     ") is provided by no structor"});
    } else if (ones == ns) {
      report.findings.push_back({Finding::Severity::Warning, "W_FULL_ROW", Axis::Functionals, r, label,
                                 "functional \"" + label + "\" (row " + std::to_string(r + 1) +
                                     ") is provided by every structor"});
    }
    std::string key(pattern.begin(), pattern.end());
    auto [it, inserted] = first_row.emplace(key, r);
    if (!inserted) {
      const std::string& earlier = matrix.functional_names()[static_cast<std::size_t>(it->second)];
      report.findings.push_back({Finding::Severity::Warning, "W_DUP_ROW", Axis::Functionals, r, label,
                                 "functional \"" + label + "\" (row " + std::to_string(r + 1) +
                                     ") duplicates \"" + earlier + "\" (row " +
                                     std::to_string(it->second + 1) + ")"});
    }
  }

  for (int c = 0; c < ns; ++c) {
    auto pattern = col_pattern(matrix, c);
    const long long ones = std::count(pattern.begin(), pattern.end(), std::uint8_t{1});
    const std::string& label = matrix.structor_names()[static_cast<std::size_t>(c)];
    if (ones == 0) {
      report.findings.push_back({Finding::Severity::Error, "E_EMPTY_COL", Axis::Structors, c, label,
                                 "structor \"" + label + "\" (column " + std::to_string(c + 1) +
                                     ") provides no functional"});
    } else if (ones == nf) {
      report.findings.push_back({Finding::Severity::Warning, "W_FULL_COL", Axis::Structors, c, label,
                                 "structor \"" + label + "\" (column " + std::to_string(c + 1) +
                                     ") provides every functional"});
    }
    std::string key(pattern.begin(), pattern.end());
    auto [it, inserted] = first_col.emplace(key, c);
    if (!inserted) {
      const std::string& earlier = matrix.structor_names()[static_cast<std::size_t>(it->second)];
      report.findings.push_back({Finding::Severity::Warning, "W_DUP_COL", Axis::Structors, c, label,
                                 "structor \"" + label + "\" (column " + std::to_string(c + 1) +
                                     ") duplicates \"" + earlier + "\" (column " +
                                     std::to_string(it->second + 1) + ")"});
    }
  }

  report.is_admissible = std::none_of(report.findings.begin(), report.findings.end(), [](const Finding& f) {
    return f.severity == Finding::Severity::Error;
  });
  return report;
}

}  // namespace sdlab
