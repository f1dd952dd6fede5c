#include "sdlab/io.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace sdlab {

using ordered_json = nlohmann::ordered_json;

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string current;
  for (char ch : text) {
    if (ch == '\n') {
      lines.push_back(current);
      current.clear();
    } else {
      current.push_back(ch);
    }
  }
  if (!current.empty()) lines.push_back(current);
  return lines;
}

std::vector<std::string> split_cells(const std::string& line) {
  std::vector<std::string> cells;
  std::string current;
  for (char ch : line) {
    if (ch == ',') {
      cells.push_back(trim(current));
      current.clear();
    } else {
      current.push_back(ch);
    }
  }
  cells.push_back(trim(current));
  return cells;
}

void check_csv_safe(const std::string& label, const std::string& what) {
  if (label.find(',') != std::string::npos || label.find('\n') != std::string::npos ||
      trim(label) != label) {
    throw AnalysisError(what + " \"" + label +
                        "\" cannot be written to csv (comma, newline, or surrounding whitespace)");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// csv

ModularityMatrix parse_csv(const std::string& text, const std::string& default_name) {
  const std::vector<std::string> raw = split_lines(text);

  int header_line = 0;  // 1-based
  std::vector<std::string> header;
  std::vector<std::string> functional_names;
  std::vector<std::vector<int>> entries;
  std::vector<int> row_lines;

  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (trim(raw[i]).empty()) continue;
    const int line_no = static_cast<int>(i) + 1;
    const std::vector<std::string> cells = split_cells(raw[i]);
    if (header.empty()) {
      header = cells;
      header_line = line_no;
      if (header.size() < 2) {
        throw ParseError("line " + std::to_string(line_no) + ": header needs a corner cell and at least one structor name",
                         line_no, 1);
      }
      for (std::size_t j = 1; j < header.size(); ++j) {
        if (header[j].empty()) {
          throw ParseError("line " + std::to_string(line_no) + ", column " + std::to_string(j + 1) +
                               ": empty structor name",
                           line_no, static_cast<int>(j) + 1);
        }
        if (std::find(header.begin() + 1, header.begin() + static_cast<std::ptrdiff_t>(j), header[j]) !=
            header.begin() + static_cast<std::ptrdiff_t>(j)) {
          throw ParseError("line " + std::to_string(line_no) + ", column " + std::to_string(j + 1) +
                               ": duplicate structor name \"" + header[j] + "\"",
                           line_no, static_cast<int>(j) + 1);
        }
      }
      continue;
    }
    if (cells.size() != header.size()) {
      throw ParseError("line " + std::to_string(line_no) + ": expected " +
                           std::to_string(header.size()) + " cells, got " + std::to_string(cells.size()),
                       line_no, static_cast<int>(std::min(cells.size(), header.size())) + 1);
    }
    if (cells[0].empty()) {
      throw ParseError("line " + std::to_string(line_no) + ", column 1: empty functional name",
                       line_no, 1);
    }
    if (std::find(functional_names.begin(), functional_names.end(), cells[0]) !=
        functional_names.end()) {
      throw ParseError("line " + std::to_string(line_no) + ", column 1: duplicate functional name \"" +
                           cells[0] + "\"",
                       line_no, 1);
    }
    std::vector<int> row;
    for (std::size_t j = 1; j < cells.size(); ++j) {
      if (cells[j] != "0" && cells[j] != "1") {
        throw ParseError("line " + std::to_string(line_no) + ", column " + std::to_string(j + 1) +
                             ": entry must be 0 or 1, got \"" + cells[j] + "\"",
                         line_no, static_cast<int>(j) + 1);
      }
      row.push_back(cells[j] == "1" ? 1 : 0);
    }
    functional_names.push_back(cells[0]);
    entries.push_back(std::move(row));
    row_lines.push_back(line_no);
  }

  if (header.empty()) throw ParseError("empty input", 1, 1);
  if (entries.empty()) {
    throw ParseError("line " + std::to_string(header_line) + ": no functional rows", header_line, 1);
  }

  const std::string name = header[0].empty() ? default_name : header[0];
  std::vector<std::string> structor_names(header.begin() + 1, header.end());
  return ModularityMatrix::build(name, std::move(functional_names), std::move(structor_names),
                                 entries);
}

std::string render_csv(const ModularityMatrix& matrix) {
  check_csv_safe(matrix.name(), "matrix name");
  for (const std::string& label : matrix.functional_names()) check_csv_safe(label, "functional");
  for (const std::string& label : matrix.structor_names()) check_csv_safe(label, "structor");

  std::ostringstream out;
  out << matrix.name();
  for (const std::string& label : matrix.structor_names()) out << ',' << label;
  out << '\n';
  for (int r = 0; r < matrix.functional_count(); ++r) {
    out << matrix.functional_names()[static_cast<std::size_t>(r)];
    for (int c = 0; c < matrix.structor_count(); ++c) out << ',' << matrix.at(r, c);
    out << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// sdl

ModularityMatrix parse_sdl(const std::string& text) {
  const std::vector<std::string> raw = split_lines(text);

  std::string system_name;
  bool have_system = false;
  bool functionals_fixed = false;
  std::vector<std::string> functional_names;
  std::vector<std::string> structor_names;
  std::vector<std::vector<int>> columns;  // per structor: which functionals it provides

  auto functional_index = [&](const std::string& label, int line_no) {
    const auto it = std::find(functional_names.begin(), functional_names.end(), label);
    if (it != functional_names.end()) {
      return static_cast<int>(it - functional_names.begin());
    }
    if (functionals_fixed) {
      throw ParseError("line " + std::to_string(line_no) + ": unknown functional \"" + label + "\"",
                       line_no);
    }
    functional_names.push_back(label);
    return static_cast<int>(functional_names.size()) - 1;
  };

  for (std::size_t i = 0; i < raw.size(); ++i) {
    const int line_no = static_cast<int>(i) + 1;
    std::string line = raw[i];
    if (const auto hash = line.find('#'); hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (!have_system) {
      if (line.rfind("system ", 0) != 0) {
        throw ParseError("line " + std::to_string(line_no) + ": expected `system <name>` first",
                         line_no);
      }
      system_name = trim(line.substr(7));
      if (system_name.empty()) {
        throw ParseError("line " + std::to_string(line_no) + ": system name is empty", line_no);
      }
      have_system = true;
      continue;
    }

    if (line.rfind("functionals:", 0) == 0) {
      if (functionals_fixed || !functional_names.empty()) {
        throw ParseError("line " + std::to_string(line_no) +
                             ": functionals line must come before any structor",
                         line_no);
      }
      for (const std::string& label : split_cells(line.substr(12))) {
        if (label.empty()) {
          throw ParseError("line " + std::to_string(line_no) + ": empty functional name", line_no);
        }
        if (std::find(functional_names.begin(), functional_names.end(), label) !=
            functional_names.end()) {
          throw ParseError("line " + std::to_string(line_no) + ": duplicate functional \"" + label +
                               "\"",
                           line_no);
        }
        functional_names.push_back(label);
      }
      functionals_fixed = true;
      continue;
    }

    if (line.rfind("structor ", 0) == 0) {
      const auto provides = line.find(" provides ");
      if (provides == std::string::npos) {
        throw ParseError("line " + std::to_string(line_no) +
                             ": expected `structor <name> provides <functionals>`",
                         line_no);
      }
      const std::string name = trim(line.substr(9, provides - 9));
      if (name.empty()) {
        throw ParseError("line " + std::to_string(line_no) + ": structor name is empty", line_no);
      }
      if (std::find(structor_names.begin(), structor_names.end(), name) != structor_names.end()) {
        throw ParseError("line " + std::to_string(line_no) + ": duplicate structor \"" + name + "\"",
                         line_no);
      }
      const std::string list = trim(line.substr(provides + 10));
      if (list.empty()) {
        throw ParseError("line " + std::to_string(line_no) + ": empty provides list", line_no);
      }
      std::vector<int> provided;
      for (const std::string& label : split_cells(list)) {
        if (label.empty()) {
          throw ParseError("line " + std::to_string(line_no) + ": empty functional name in provides list",
                           line_no);
        }
        provided.push_back(functional_index(label, line_no));
      }
      structor_names.push_back(name);
      columns.push_back(std::move(provided));
      continue;
    }

    throw ParseError("line " + std::to_string(line_no) + ": syntax error: \"" + line + "\"", line_no);
  }

  if (!have_system) throw ParseError("empty input: expected `system <name>`", 1);
  if (structor_names.empty()) throw ParseError("no structor declared", 1);

  std::vector<std::vector<int>> entries(functional_names.size(),
                                        std::vector<int>(structor_names.size(), 0));
  for (std::size_t c = 0; c < columns.size(); ++c) {
    for (int r : columns[c]) entries[static_cast<std::size_t>(r)][c] = 1;
  }
  return ModularityMatrix::build(system_name, std::move(functional_names), std::move(structor_names),
                                 entries);
}

// ---------------------------------------------------------------------------
// json helpers

namespace {

ordered_json rational_json(const Rational& r) {
  return ordered_json{{"fraction", to_fraction_string(r)}, {"decimal", to_decimal_string(r)}};
}

Rational rational_from_json(const ordered_json& j) {
  return parse_rational(j.at("fraction").get<std::string>());
}

std::string axis_word(Axis axis) { return axis == Axis::Functionals ? "functionals" : "structors"; }

Axis axis_from_word(const std::string& word) {
  if (word == "functionals") return Axis::Functionals;
  if (word == "structors") return Axis::Structors;
  throw ParseError("unknown axis \"" + word + "\"");
}

ordered_json block_json(const Block& block) {
  return ordered_json{{"rows", block.rows}, {"cols", block.cols}};
}

Block block_from_json(const ordered_json& j) {
  return Block{j.at("rows").get<std::vector<int>>(), j.at("cols").get<std::vector<int>>()};
}

ordered_json candidate_json(const PartitionCandidate& candidate) {
  ordered_json blocks = ordered_json::array();
  for (const Block& block : candidate.partition.blocks) blocks.push_back(block_json(block));
  ordered_json outliers = ordered_json::array();
  for (const auto& [r, c] : candidate.partition.outliers) outliers.push_back({r, c});
  return ordered_json{
      {"blocks", blocks}, {"outlier_count", candidate.outlier_count}, {"outliers", outliers}};
}

PartitionCandidate candidate_from_json(const ordered_json& j) {
  PartitionCandidate candidate;
  for (const ordered_json& b : j.at("blocks")) candidate.partition.blocks.push_back(block_from_json(b));
  for (const ordered_json& o : j.at("outliers")) {
    candidate.partition.outliers.emplace_back(o.at(0).get<int>(), o.at(1).get<int>());
  }
  candidate.outlier_count = j.at("outlier_count").get<int>();
  return candidate;
}

ordered_json matrix_json_obj(const ModularityMatrix& m) {
  ordered_json grid = ordered_json::array();
  for (int r = 0; r < m.functional_count(); ++r) {
    ordered_json row = ordered_json::array();
    for (int c = 0; c < m.structor_count(); ++c) row.push_back(m.at(r, c));
    grid.push_back(row);
  }
  return ordered_json{{"name", m.name()},
                      {"functionals", m.functional_names()},
                      {"structors", m.structor_names()},
                      {"grid", grid}};
}

ModularityMatrix matrix_from_json_obj(const ordered_json& j) {
  return ModularityMatrix::build(j.at("name").get<std::string>(),
                                 j.at("functionals").get<std::vector<std::string>>(),
                                 j.at("structors").get<std::vector<std::string>>(),
                                 j.at("grid").get<std::vector<std::vector<int>>>());
}

ordered_json parse_json_text(const std::string& text, const std::string& what) {
  try {
    return ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("invalid " + what + " json: " + e.what());
  }
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

std::string verdict_word(Verdict verdict) { return to_string(verdict); }

Verdict verdict_from_word(const std::string& word) {
  if (word == "standard") return Verdict::Standard;
  if (word == "bordered") return Verdict::Bordered;
  if (word == "non-standard") return Verdict::NonStandard;
  throw ParseError("unknown verdict \"" + word + "\"");
}

// ---------------------------------------------------------------------------
// text building blocks

std::string pad_right(const std::string& s, std::size_t width) {
  return s + std::string(width > s.size() ? width - s.size() : 0, ' ');
}

std::string pad_left(const std::string& s, std::size_t width) {
  return std::string(width > s.size() ? width - s.size() : 0, ' ') + s;
}

std::string rstrip(const std::string& s) {
  const auto end = s.find_last_not_of(' ');
  return end == std::string::npos ? "" : s.substr(0, end + 1);
}

std::string kv_block(const std::vector<std::pair<std::string, std::string>>& rows) {
  std::size_t width = 0;
  for (const auto& [key, value] : rows) width = std::max(width, key.size());
  std::string out;
  for (const auto& [key, value] : rows) out += pad_right(key, width) + "  " + value + "\n";
  return out;
}

std::string md_table(const std::vector<std::string>& header,
                     const std::vector<std::vector<std::string>>& rows) {
  std::string out = "|";
  for (const std::string& h : header) out += " " + h + " |";
  out += "\n|";
  for (std::size_t i = 0; i < header.size(); ++i) out += " --- |";
  out += "\n";
  for (const auto& row : rows) {
    out += "|";
    for (const std::string& cell : row) out += " " + cell + " |";
    out += "\n";
  }
  return out;
}

std::string headline(const ModularityMatrix& m) {
  return m.name() + " (" + std::to_string(m.functional_count()) + "x" +
         std::to_string(m.structor_count()) + ", " + std::to_string(m.ones_count()) + " ones)";
}

std::string yes_no(bool v) { return v ? "yes" : "no"; }

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::vector<std::string> labels_of(const std::vector<std::string>& names, const std::vector<int>& idx) {
  std::vector<std::string> out;
  for (int i : idx) out.push_back(names[static_cast<std::size_t>(i)]);
  return out;
}

std::string rational_text(const Rational& r) {
  return to_fraction_string(r) + " (" + to_decimal_string(r) + ")";
}

struct GridLayout {
  std::vector<std::string> row_ids, col_ids;
  std::vector<bool> row_boundary, col_boundary;  // boundary *before* this index
  std::vector<std::vector<char>> cells;          // '1', '.', '*'
  bool has_legend = false;
};

GridLayout grid_layout(const ModularityMatrix& m, const BlockPartition* partition) {
  const int nf = m.functional_count();
  const int ns = m.structor_count();
  GridLayout g;
  for (int r = 0; r < nf; ++r) g.row_ids.push_back("F" + std::to_string(r + 1));
  for (int c = 0; c < ns; ++c) g.col_ids.push_back("S" + std::to_string(c + 1));
  g.row_boundary.assign(static_cast<std::size_t>(nf), false);
  g.col_boundary.assign(static_cast<std::size_t>(ns), false);

  std::set<std::pair<int, int>> outliers;
  if (partition != nullptr) {
    outliers.insert(partition->outliers.begin(), partition->outliers.end());
    bool contiguous = !partition->blocks.empty();
    for (const Block& block : partition->blocks) {
      const bool rows_ok = !block.rows.empty() &&
                           block.rows.back() - block.rows.front() + 1 == static_cast<int>(block.rows.size());
      const bool cols_ok = !block.cols.empty() &&
                           block.cols.back() - block.cols.front() + 1 == static_cast<int>(block.cols.size());
      contiguous = contiguous && rows_ok && cols_ok;
    }
    if (contiguous) {
      for (const Block& block : partition->blocks) {
        if (block.rows.front() > 0) g.row_boundary[static_cast<std::size_t>(block.rows.front())] = true;
        if (block.cols.front() > 0) g.col_boundary[static_cast<std::size_t>(block.cols.front())] = true;
      }
    }
  }

  g.cells.assign(static_cast<std::size_t>(nf), std::vector<char>(static_cast<std::size_t>(ns), '.'));
  for (int r = 0; r < nf; ++r) {
    for (int c = 0; c < ns; ++c) {
      if (m.at(r, c)) g.cells[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = outliers.count({r, c}) ? '*' : '1';
    }
  }
  for (int r = 0; r < nf; ++r) {
    if (m.functional_names()[static_cast<std::size_t>(r)] != g.row_ids[static_cast<std::size_t>(r)]) g.has_legend = true;
  }
  for (int c = 0; c < ns; ++c) {
    if (m.structor_names()[static_cast<std::size_t>(c)] != g.col_ids[static_cast<std::size_t>(c)]) g.has_legend = true;
  }
  return g;
}

}  // namespace

std::string render_matrix_grid(const ModularityMatrix& m, const BlockPartition* partition) {
  const GridLayout g = grid_layout(m, partition);
  std::size_t rw = 0, cw = 0;
  for (const std::string& id : g.row_ids) rw = std::max(rw, id.size());
  for (const std::string& id : g.col_ids) cw = std::max(cw, id.size());

  auto sep = [&](std::size_t j) { return j > 0 && g.col_boundary[j] ? std::string(" | ") : std::string(" "); };
  auto rule_sep = [&](std::size_t j) { return j > 0 && g.col_boundary[j] ? std::string("-+-") : std::string("-"); };

  std::vector<std::string> lines;
  {
    std::string line(rw, ' ');
    for (std::size_t j = 0; j < g.col_ids.size(); ++j) line += sep(j) + pad_left(g.col_ids[j], cw);
    lines.push_back(line);
  }
  for (std::size_t i = 0; i < g.row_ids.size(); ++i) {
    if (i > 0 && g.row_boundary[i]) {
      std::string rule(rw, '-');
      for (std::size_t j = 0; j < g.col_ids.size(); ++j) rule += rule_sep(j) + std::string(cw, '-');
      lines.push_back(rule);
    }
    std::string line = pad_right(g.row_ids[i], rw);
    for (std::size_t j = 0; j < g.col_ids.size(); ++j) {
      line += sep(j) + pad_left(std::string(1, g.cells[i][j]), cw);
    }
    lines.push_back(line);
  }
  if (g.has_legend) {
    lines.push_back("");
    for (std::size_t i = 0; i < g.row_ids.size(); ++i) {
      lines.push_back(g.row_ids[i] + " = " + m.functional_names()[i]);
    }
    for (std::size_t j = 0; j < g.col_ids.size(); ++j) {
      lines.push_back(g.col_ids[j] + " = " + m.structor_names()[j]);
    }
  }

  std::string out;
  for (const std::string& line : lines) out += rstrip(line) + "\n";
  return out;
}

namespace {

std::string md_matrix_grid(const ModularityMatrix& m, const BlockPartition* partition) {
  const GridLayout g = grid_layout(m, partition);
  std::vector<std::string> header{" "};
  header.insert(header.end(), g.col_ids.begin(), g.col_ids.end());
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < g.row_ids.size(); ++i) {
    std::vector<std::string> row{"**" + g.row_ids[i] + "**"};
    for (std::size_t j = 0; j < g.col_ids.size(); ++j) row.push_back(std::string(1, g.cells[i][j]));
    rows.push_back(std::move(row));
  }
  std::string out = md_table(header, rows);
  if (g.has_legend) {
    out += "\n";
    for (std::size_t i = 0; i < g.row_ids.size(); ++i) {
      out += "- " + g.row_ids[i] + " = " + m.functional_names()[i] + "\n";
    }
    for (std::size_t j = 0; j < g.col_ids.size(); ++j) {
      out += "- " + g.col_ids[j] + " = " + m.structor_names()[j] + "\n";
    }
  }
  return out;
}

ordered_json criteria_json_obj(const CriteriaReport& c) {
  return ordered_json{{"trace", c.trace},
                      {"offdiag", c.offdiag},
                      {"diagonality", c.diagonality},
                      {"sparsity", rational_json(c.sparsity)}};
}

std::vector<std::pair<std::string, std::string>> criteria_kv(const CriteriaReport& c) {
  return {{"trace", std::to_string(c.trace)},
          {"offdiag", std::to_string(c.offdiag)},
          {"diagonality", std::to_string(c.diagonality)},
          {"sparsity", rational_text(c.sparsity)}};
}

}  // namespace

// ---------------------------------------------------------------------------
// format + renderers

ReportFormat parse_format(const std::string& word) {
  if (word == "text") return ReportFormat::Text;
  if (word == "json") return ReportFormat::Json;
  if (word == "markdown") return ReportFormat::Markdown;
  throw ParseError("unknown format \"" + word + "\" (expected text, json, or markdown)");
}

ReportDocument render_validation_report(const ModularityMatrix& matrix,
                                        const ValidationReport& report, ReportFormat format) {
  if (format == ReportFormat::Json) {
    ordered_json findings = ordered_json::array();
    for (const Finding& f : report.findings) {
      findings.push_back(ordered_json{
          {"severity", f.severity == Finding::Severity::Error ? "error" : "warning"},
          {"code", f.code},
          {"axis", axis_word(f.axis)},
          {"index", f.index},
          {"label", f.label},
          {"message", f.message}});
    }
    return {format, dump(ordered_json{{"name", matrix.name()},
                                      {"admissible", report.is_admissible},
                                      {"findings", findings}})};
  }
  if (format == ReportFormat::Markdown) {
    std::string body = "# " + matrix.name() + ": validation\n\n";
    body += std::string(report.is_admissible ? "admissible" : "not admissible") + "\n\n";
    if (report.findings.empty()) {
      body += "No findings.\n";
    } else {
      std::vector<std::vector<std::string>> rows;
      for (const Finding& f : report.findings) {
        rows.push_back({f.severity == Finding::Severity::Error ? "error" : "warning", f.code, f.message});
      }
      body += md_table({"severity", "code", "message"}, rows);
    }
    return {format, body};
  }
  std::string body = headline(matrix) + ": " +
                     (report.is_admissible ? "admissible" : "not admissible") + "\n";
  if (report.findings.empty()) {
    body += "no findings\n";
  } else {
    for (const Finding& f : report.findings) {
      body += std::string(f.severity == Finding::Severity::Error ? "error   " : "warning ") + f.code +
              ": " + f.message + "\n";
    }
  }
  return {format, body};
}

ReportDocument render_criteria_report(const ModularityMatrix& matrix, const CriteriaReport& report,
                                      ReportFormat format) {
  if (format == ReportFormat::Json) {
    return {format, dump(ordered_json{{"name", matrix.name()},
                                      {"rows", report.n_rows},
                                      {"cols", report.n_cols},
                                      {"ones", report.ones_count},
                                      {"criteria", criteria_json_obj(report)}})};
  }
  if (format == ReportFormat::Markdown) {
    std::string body = "# " + matrix.name() + ": criteria\n\n" + md_matrix_grid(matrix, nullptr) + "\n";
    std::vector<std::vector<std::string>> rows;
    for (const auto& [key, value] : criteria_kv(report)) rows.push_back({key, value});
    body += md_table({"criterion", "value"}, rows);
    return {format, body};
  }
  std::string body = headline(matrix) + "\n\n" + render_matrix_grid(matrix, nullptr) + "\n" +
                     kv_block(criteria_kv(report));
  return {format, body};
}

ReportDocument render_blocks_report(const ModularityMatrix& matrix, const DetectedBlocks& blocks,
                                    ReportFormat format) {
  const BlockPartition& partition = blocks.partition;
  if (format == ReportFormat::Json) {
    ordered_json list = ordered_json::array();
    for (std::size_t b = 0; b < partition.blocks.size(); ++b) {
      ordered_json j = block_json(partition.blocks[b]);
      j["square"] = blocks.flags[b].square;
      j["well_composed"] = blocks.flags[b].well_composed;
      list.push_back(j);
    }
    ordered_json outliers = ordered_json::array();
    for (const auto& [r, c] : partition.outliers) outliers.push_back({r, c});
    return {format, dump(ordered_json{{"name", matrix.name()},
                                      {"modular", blocks.is_modular},
                                      {"blocks", list},
                                      {"outliers", outliers}})};
  }

  auto block_lines = [&](bool markdown) {
    std::string out;
    for (std::size_t b = 0; b < partition.blocks.size(); ++b) {
      const Block& block = partition.blocks[b];
      const std::string bullet = markdown ? "- " : "";
      out += bullet + "block " + std::to_string(b + 1) + " (" + std::to_string(block.rows.size()) +
             "x" + std::to_string(block.cols.size()) + "): " +
             (blocks.flags[b].square ? "square" : "not square") + ", " +
             (blocks.flags[b].well_composed ? "well-composed" : "not well-composed") + "\n";
      out += (markdown ? "  - rows: " : "  rows: ") +
             join(labels_of(matrix.functional_names(), block.rows), ", ") + "\n";
      out += (markdown ? "  - cols: " : "  cols: ") +
             join(labels_of(matrix.structor_names(), block.cols), ", ") + "\n";
    }
    return out;
  };

  if (format == ReportFormat::Markdown) {
    std::string body = "# " + matrix.name() + ": blocks\n\n" +
                       std::to_string(partition.blocks.size()) + " block(s), " +
                       (blocks.is_modular ? "modular" : "not modular") + "\n\n" +
                       md_matrix_grid(matrix, &partition) + "\n" + block_lines(true);
    return {format, body};
  }
  std::string body = headline(matrix) + ": " + std::to_string(partition.blocks.size()) +
                     " block(s), " + (blocks.is_modular ? "modular" : "not modular") + "\n\n" +
                     render_matrix_grid(matrix, &partition) + "\n" + block_lines(false);
  return {format, body};
}

ReportDocument render_reorder_report(const Reordering& reordering, ReportFormat format) {
  if (format == ReportFormat::Json) {
    ordered_json blocks = ordered_json::array();
    for (const Block& block : reordering.partition.blocks) blocks.push_back(block_json(block));
    return {format, dump(ordered_json{{"name", reordering.matrix.name()},
                                      {"diagonality", reordering.diagonality},
                                      {"row_order", reordering.row_order},
                                      {"col_order", reordering.col_order},
                                      {"blocks", blocks},
                                      {"matrix", matrix_json_obj(reordering.matrix)}})};
  }
  std::vector<std::string> row_ids, col_ids;
  for (int r : reordering.row_order) row_ids.push_back("F" + std::to_string(r + 1));
  for (int c : reordering.col_order) col_ids.push_back("S" + std::to_string(c + 1));

  if (format == ReportFormat::Markdown) {
    std::string body = "# " + reordering.matrix.name() + ": reordered\n\ndiagonality " +
                       std::to_string(reordering.diagonality) + "\n\n" +
                       md_matrix_grid(reordering.matrix, &reordering.partition) + "\n" +
                       "- row order: " + join(row_ids, ", ") + "\n" +
                       "- col order: " + join(col_ids, ", ") + "\n";
    return {format, body};
  }
  std::string body = headline(reordering.matrix) + ": reordered, diagonality " +
                     std::to_string(reordering.diagonality) + "\n\n" +
                     render_matrix_grid(reordering.matrix, &reordering.partition) + "\n" +
                     "row order (original ids): " + join(row_ids, ", ") + "\n" +
                     "col order (original ids): " + join(col_ids, ", ") + "\n";
  return {format, body};
}

ReportDocument render_diagnosis_report(const ModularityMatrix& matrix,
                                       const DiagnosisReport& report, ReportFormat format) {
  if (format == ReportFormat::Json) {
    ordered_json blocks = ordered_json::array();
    for (const Block& block : report.partition.blocks) blocks.push_back(block_json(block));
    ordered_json outliers = ordered_json::array();
    for (const OutlierDetail& o : report.outliers) {
      outliers.push_back(ordered_json{{"row", o.row},
                                      {"col", o.col},
                                      {"functional", o.functional},
                                      {"structor", o.structor},
                                      {"row_block", o.row_block},
                                      {"col_block", o.col_block},
                                      {"suggestions", o.suggestions}});
    }
    return {format, dump(ordered_json{{"name", matrix.name()}, {"blocks", blocks}, {"outliers", outliers}})};
  }

  auto outlier_lines = [&](bool markdown) {
    std::string out;
    if (report.outliers.empty()) {
      out += markdown ? "No outliers.\n" : "no outliers\n";
      return out;
    }
    for (const OutlierDetail& o : report.outliers) {
      const std::string head = "outlier (F" + std::to_string(o.row + 1) + ", S" +
                               std::to_string(o.col + 1) + "): \"" + o.functional + "\" x \"" +
                               o.structor + "\", block " + std::to_string(o.row_block + 1) +
                               " x block " + std::to_string(o.col_block + 1);
      out += (markdown ? "- " + head : head) + "\n";
      for (const std::string& s : o.suggestions) {
        out += (markdown ? "  - " : "  - ") + s + "\n";
      }
    }
    return out;
  };

  if (format == ReportFormat::Markdown) {
    std::string body = "# " + matrix.name() + ": diagnosis\n\n" +
                       std::to_string(report.partition.blocks.size()) + " block(s), " +
                       std::to_string(report.outliers.size()) + " outlier(s)\n\n" +
                       md_matrix_grid(matrix, &report.partition) + "\n" + outlier_lines(true);
    return {format, body};
  }
  std::string body = headline(matrix) + ": " + std::to_string(report.partition.blocks.size()) +
                     " block(s), " + std::to_string(report.outliers.size()) + " outlier(s)\n\n" +
                     render_matrix_grid(matrix, &report.partition) + "\n" + outlier_lines(false);
  return {format, body};
}

ReportDocument render_suggestions_report(const ModularityMatrix& matrix,
                                         const std::vector<PartitionCandidate>& candidates,
                                         ReportFormat format) {
  if (format == ReportFormat::Json) {
    ordered_json list = ordered_json::array();
    for (const PartitionCandidate& candidate : candidates) list.push_back(candidate_json(candidate));
    return {format, dump(ordered_json{{"name", matrix.name()}, {"candidates", list}})};
  }

  auto candidate_lines = [&](bool markdown) {
    std::string out;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      const PartitionCandidate& candidate = candidates[i];
      const std::string head = "candidate " + std::to_string(i + 1) + ": " +
                               std::to_string(candidate.partition.blocks.size()) + " block(s), " +
                               std::to_string(candidate.outlier_count) + " outlier(s)";
      out += (markdown ? "- " + head : head) + "\n";
      for (std::size_t b = 0; b < candidate.partition.blocks.size(); ++b) {
        const Block& block = candidate.partition.blocks[b];
        out += (markdown ? "  - " : "  ") + ("block " + std::to_string(b + 1)) + ": " +
               join(labels_of(matrix.functional_names(), block.rows), ", ") + " | " +
               join(labels_of(matrix.structor_names(), block.cols), ", ") + "\n";
      }
    }
    return out;
  };

  if (format == ReportFormat::Markdown) {
    return {format, "# " + matrix.name() + ": suggested partitions\n\n" + candidate_lines(true)};
  }
  return {format,
          matrix.name() + ": " + std::to_string(candidates.size()) + " candidate partition(s)\n\n" +
              candidate_lines(false)};
}

namespace {

ordered_json assessment_json_obj(const std::string& name, const StandardAssessment& a) {
  ordered_json front = ordered_json::array();
  for (const PartitionCandidate& candidate : a.front) front.push_back(candidate_json(candidate));
  ordered_json j{{"name", name},
                 {"rows", a.criteria.n_rows},
                 {"cols", a.criteria.n_cols},
                 {"ones", a.criteria.ones_count},
                 {"verdict", verdict_word(a.verdict)},
                 {"admissible", a.is_admissible},
                 {"square", a.is_square},
                 {"full_rank", a.is_full_rank},
                 {"block_diagonal", a.is_block_diagonal},
                 {"modular", a.is_modular},
                 {"rank", a.rank},
                 {"components", a.component_count},
                 {"criteria", criteria_json_obj(a.criteria)},
                 {"bordered_bound", rational_json(a.bordered_bound)}};
  j["canonical_diagonality"] = a.canonical_diagonality ? ordered_json(*a.canonical_diagonality) : ordered_json(nullptr);
  j["refinement_outliers"] = a.refinement_outliers ? ordered_json(*a.refinement_outliers) : ordered_json(nullptr);
  j["minimal_modular_outliers"] =
      a.minimal_modular_outliers ? ordered_json(*a.minimal_modular_outliers) : ordered_json(nullptr);
  j["front"] = front;
  return j;
}

StandardAssessment assessment_from_json_obj(const ordered_json& j) {
  StandardAssessment a;
  a.criteria.n_rows = j.at("rows").get<int>();
  a.criteria.n_cols = j.at("cols").get<int>();
  a.criteria.ones_count = j.at("ones").get<long long>();
  a.verdict = verdict_from_word(j.at("verdict").get<std::string>());
  a.is_admissible = j.at("admissible").get<bool>();
  a.is_square = j.at("square").get<bool>();
  a.is_full_rank = j.at("full_rank").get<bool>();
  a.is_block_diagonal = j.at("block_diagonal").get<bool>();
  a.is_modular = j.at("modular").get<bool>();
  a.rank = j.at("rank").get<int>();
  a.component_count = j.at("components").get<int>();
  a.criteria.trace = j.at("criteria").at("trace").get<long long>();
  a.criteria.offdiag = j.at("criteria").at("offdiag").get<long long>();
  a.criteria.diagonality = j.at("criteria").at("diagonality").get<long long>();
  a.criteria.sparsity = rational_from_json(j.at("criteria").at("sparsity"));
  a.bordered_bound = rational_from_json(j.at("bordered_bound"));
  if (!j.at("canonical_diagonality").is_null()) {
    a.canonical_diagonality = j.at("canonical_diagonality").get<long long>();
  }
  if (!j.at("refinement_outliers").is_null()) {
    a.refinement_outliers = j.at("refinement_outliers").get<int>();
  }
  if (!j.at("minimal_modular_outliers").is_null()) {
    a.minimal_modular_outliers = j.at("minimal_modular_outliers").get<int>();
  }
  for (const ordered_json& c : j.at("front")) a.front.push_back(candidate_from_json(c));
  return a;
}

std::vector<std::pair<std::string, std::string>> assessment_kv(const StandardAssessment& a) {
  auto opt_int = [](const std::optional<int>& v) { return v ? std::to_string(*v) : std::string("none"); };
  std::vector<std::pair<std::string, std::string>> rows{
      {"admissible", yes_no(a.is_admissible)},
      {"square", yes_no(a.is_square)},
      {"full rank", yes_no(a.is_full_rank) + " (rank " + std::to_string(a.rank) + ")"},
      {"modular", yes_no(a.is_modular) + " (" + std::to_string(a.component_count) + " component(s))"},
      {"block diagonal", yes_no(a.is_block_diagonal)},
  };
  for (const auto& row : criteria_kv(a.criteria)) rows.push_back(row);
  rows.push_back({"best diagonality",
                  a.canonical_diagonality ? std::to_string(*a.canonical_diagonality) : "none"});
  rows.push_back({"outlier allowance", rational_text(a.bordered_bound)});
  rows.push_back({"refinement outliers", opt_int(a.refinement_outliers)});
  rows.push_back({"modular outliers", opt_int(a.minimal_modular_outliers)});
  return rows;
}

}  // namespace

ReportDocument render_assessment_report(const ModularityMatrix& matrix,
                                        const StandardAssessment& assessment, ReportFormat format) {
  if (format == ReportFormat::Json) {
    return {format, dump(assessment_json_obj(matrix.name(), assessment))};
  }
  const BlockPartition* partition =
      assessment.front.empty() ? nullptr : &assessment.front.front().partition;
  if (format == ReportFormat::Markdown) {
    std::string body = "# " + matrix.name() + ": assessment\n\nverdict: **" +
                       verdict_word(assessment.verdict) + "**\n\n" +
                       md_matrix_grid(matrix, partition) + "\n";
    std::vector<std::vector<std::string>> rows;
    for (const auto& [key, value] : assessment_kv(assessment)) rows.push_back({key, value});
    body += md_table({"measure", "value"}, rows);
    return {format, body};
  }
  std::string body = headline(matrix) + ": verdict " + verdict_word(assessment.verdict) + "\n\n" +
                     render_matrix_grid(matrix, partition) + "\n" + kv_block(assessment_kv(assessment));
  return {format, body};
}

ReportDocument render_comparison_report(const DesignComparison& comparison, ReportFormat format) {
  if (format == ReportFormat::Json) {
    std::string winner = comparison.outcome == CompareOutcome::Left    ? "left"
                         : comparison.outcome == CompareOutcome::Right ? "right"
                                                                       : "tie";
    return {format, dump(ordered_json{{"left", assessment_json_obj(comparison.left_name, comparison.left)},
                                      {"right", assessment_json_obj(comparison.right_name, comparison.right)},
                                      {"winner", winner},
                                      {"deciding_factor", comparison.deciding_factor}})};
  }

  const std::string outcome_text =
      comparison.outcome == CompareOutcome::Left
          ? "left wins (" + comparison.deciding_factor + ")"
          : comparison.outcome == CompareOutcome::Right
                ? "right wins (" + comparison.deciding_factor + ")"
                : "tie";
  auto opt_int = [](const std::optional<int>& v) { return v ? std::to_string(*v) : std::string("none"); };
  auto opt_ll = [](const std::optional<long long>& v) {
    return v ? std::to_string(*v) : std::string("none");
  };
  const std::vector<std::array<std::string, 3>> rows{
      {"verdict", verdict_word(comparison.left.verdict), verdict_word(comparison.right.verdict)},
      {"square", yes_no(comparison.left.is_square), yes_no(comparison.right.is_square)},
      {"full rank", yes_no(comparison.left.is_full_rank), yes_no(comparison.right.is_full_rank)},
      {"modular outliers", opt_int(comparison.left.minimal_modular_outliers),
       opt_int(comparison.right.minimal_modular_outliers)},
      {"best diagonality", opt_ll(comparison.left.canonical_diagonality),
       opt_ll(comparison.right.canonical_diagonality)},
      {"sparsity", rational_text(comparison.left.criteria.sparsity),
       rational_text(comparison.right.criteria.sparsity)},
  };

  if (format == ReportFormat::Markdown) {
    std::string body = "# " + comparison.left_name + " vs " + comparison.right_name + "\n\n**" +
                       outcome_text + "**\n\n";
    std::vector<std::vector<std::string>> table;
    for (const auto& row : rows) table.push_back({row[0], row[1], row[2]});
    body += md_table({"measure", comparison.left_name, comparison.right_name}, table);
    return {format, body};
  }

  std::size_t kw = 0, lw = comparison.left_name.size();
  for (const auto& row : rows) {
    kw = std::max(kw, row[0].size());
    lw = std::max(lw, row[1].size());
  }
  std::string body = comparison.left_name + " vs " + comparison.right_name + ": " + outcome_text + "\n\n";
  body += pad_right("", kw) + "  " + pad_right(comparison.left_name, lw) + "  " +
          comparison.right_name + "\n";
  for (const auto& row : rows) {
    body += pad_right(row[0], kw) + "  " + pad_right(row[1], lw) + "  " + row[2] + "\n";
  }
  return {format, body};
}

ReportDocument render_count_vector_report(const CountVector& vector, ReportFormat format) {
  if (format == ReportFormat::Json) {
    ordered_json counts = ordered_json::array();
    for (const Rational& r : vector.counts) counts.push_back(rational_json(r));
    return {format, dump(ordered_json{{"axis", axis_word(vector.axis)},
                                      {"labels", vector.labels},
                                      {"counts", counts},
                                      {"negative_coefficient_warning", vector.negative_coefficient_warning}})};
  }
  if (format == ReportFormat::Markdown) {
    std::string body = "# count vector (" + axis_word(vector.axis) + " added)\n\n";
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < vector.labels.size(); ++i) {
      rows.push_back({vector.labels[i], to_fraction_string(vector.counts[i])});
    }
    body += md_table({"label", "count"}, rows);
    if (vector.negative_coefficient_warning) body += "\n**warning**: negative coefficients present\n";
    return {format, body};
  }
  std::string body = "count vector (" + axis_word(vector.axis) + " added)\n";
  std::vector<std::pair<std::string, std::string>> rows;
  for (std::size_t i = 0; i < vector.labels.size(); ++i) {
    rows.push_back({vector.labels[i], to_fraction_string(vector.counts[i])});
  }
  body += kv_block(rows);
  if (vector.negative_coefficient_warning) body += "warning: negative coefficients present\n";
  return {format, body};
}

ReportDocument render_trend_report(const std::vector<TrendPoint>& points, int block_size,
                                   ReportFormat format) {
  if (format == ReportFormat::Json) {
    ordered_json list = ordered_json::array();
    for (const TrendPoint& p : points) {
      list.push_back(ordered_json{{"size", p.size}, {"sparsity", rational_json(p.sparsity)}});
    }
    return {format, dump(ordered_json{{"block_size", block_size}, {"points", list}})};
  }
  if (format == ReportFormat::Markdown) {
    std::string body = "# sparsity trend (block size " + std::to_string(block_size) + ")\n\n";
    std::vector<std::vector<std::string>> rows;
    for (const TrendPoint& p : points) rows.push_back({std::to_string(p.size), rational_text(p.sparsity)});
    body += md_table({"size", "sparsity"}, rows);
    return {format, body};
  }
  std::string body = "sparsity trend (block size " + std::to_string(block_size) + ")\n";
  std::vector<std::pair<std::string, std::string>> rows;
  for (const TrendPoint& p : points) rows.push_back({std::to_string(p.size), rational_text(p.sparsity)});
  body += kv_block(rows);
  return {format, body};
}

ReportDocument render_matrix_report(const ModularityMatrix& matrix, const std::string& headline_text,
                                    ReportFormat format) {
  if (format == ReportFormat::Json) {
    return {format, dump(ordered_json{{"headline", headline_text}, {"matrix", matrix_json_obj(matrix)}})};
  }
  if (format == ReportFormat::Markdown) {
    return {format, "# " + headline_text + "\n\n" + headline(matrix) + "\n\n" + md_matrix_grid(matrix, nullptr)};
  }
  return {format, headline_text + ": " + headline(matrix) + "\n\n" + render_matrix_grid(matrix, nullptr)};
}

// ---------------------------------------------------------------------------
// json parsers

ValidationReport parse_validation_json(const std::string& text) {
  const ordered_json j = parse_json_text(text, "validation");
  try {
    ValidationReport report;
    report.is_admissible = j.at("admissible").get<bool>();
    for (const ordered_json& f : j.at("findings")) {
      report.findings.push_back(
          {f.at("severity").get<std::string>() == "error" ? Finding::Severity::Error
                                                          : Finding::Severity::Warning,
           f.at("code").get<std::string>(), axis_from_word(f.at("axis").get<std::string>()),
           f.at("index").get<int>(), f.at("label").get<std::string>(),
           f.at("message").get<std::string>()});
    }
    return report;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed validation json: ") + e.what());
  }
}

CriteriaReport parse_criteria_json(const std::string& text) {
  const ordered_json j = parse_json_text(text, "criteria");
  try {
    CriteriaReport report;
    report.n_rows = j.at("rows").get<int>();
    report.n_cols = j.at("cols").get<int>();
    report.ones_count = j.at("ones").get<long long>();
    report.trace = j.at("criteria").at("trace").get<long long>();
    report.offdiag = j.at("criteria").at("offdiag").get<long long>();
    report.diagonality = j.at("criteria").at("diagonality").get<long long>();
    report.sparsity = rational_from_json(j.at("criteria").at("sparsity"));
    return report;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed criteria json: ") + e.what());
  }
}

DiagnosisReport parse_diagnosis_json(const std::string& text) {
  const ordered_json j = parse_json_text(text, "diagnosis");
  try {
    DiagnosisReport report;
    for (const ordered_json& b : j.at("blocks")) report.partition.blocks.push_back(block_from_json(b));
    for (const ordered_json& o : j.at("outliers")) {
      OutlierDetail detail;
      detail.row = o.at("row").get<int>();
      detail.col = o.at("col").get<int>();
      detail.functional = o.at("functional").get<std::string>();
      detail.structor = o.at("structor").get<std::string>();
      detail.row_block = o.at("row_block").get<int>();
      detail.col_block = o.at("col_block").get<int>();
      detail.suggestions = o.at("suggestions").get<std::vector<std::string>>();
      report.partition.outliers.emplace_back(detail.row, detail.col);
      report.outliers.push_back(std::move(detail));
    }
    return report;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed diagnosis json: ") + e.what());
  }
}

StandardAssessment parse_assessment_json(const std::string& text) {
  const ordered_json j = parse_json_text(text, "assessment");
  try {
    return assessment_from_json_obj(j);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed assessment json: ") + e.what());
  }
}

DesignComparison parse_comparison_json(const std::string& text) {
  const ordered_json j = parse_json_text(text, "comparison");
  try {
    DesignComparison comparison;
    comparison.left_name = j.at("left").at("name").get<std::string>();
    comparison.right_name = j.at("right").at("name").get<std::string>();
    comparison.left = assessment_from_json_obj(j.at("left"));
    comparison.right = assessment_from_json_obj(j.at("right"));
    const std::string winner = j.at("winner").get<std::string>();
    comparison.outcome = winner == "left"    ? CompareOutcome::Left
                         : winner == "right" ? CompareOutcome::Right
                                             : CompareOutcome::Tie;
    comparison.deciding_factor = j.at("deciding_factor").get<std::string>();
    return comparison;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed comparison json: ") + e.what());
  }
}

ModularityMatrix parse_matrix_json(const std::string& text) {
  const ordered_json j = parse_json_text(text, "matrix");
  try {
    return matrix_from_json_obj(j);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed matrix json: ") + e.what());
  }
}

std::string render_matrix_json(const ModularityMatrix& matrix) {
  return dump(matrix_json_obj(matrix));
}

// ---------------------------------------------------------------------------
// partitions and hierarchy

BlockPartition parse_partition_json(const std::string& text, const ModularityMatrix& matrix) {
  const ordered_json j = parse_json_text(text, "partition");
  std::map<std::string, int> row_index, col_index;
  for (int r = 0; r < matrix.functional_count(); ++r) {
    row_index[matrix.functional_names()[static_cast<std::size_t>(r)]] = r;
  }
  for (int c = 0; c < matrix.structor_count(); ++c) {
    col_index[matrix.structor_names()[static_cast<std::size_t>(c)]] = c;
  }

  std::vector<Block> blocks;
  try {
    for (const ordered_json& b : j.at("blocks")) {
      Block block;
      for (const ordered_json& label : b.at("rows")) {
        const std::string text_label = label.get<std::string>();
        const auto it = row_index.find(text_label);
        if (it == row_index.end()) {
          throw ParseError("unknown functional \"" + text_label + "\" in partition");
        }
        block.rows.push_back(it->second);
      }
      for (const ordered_json& label : b.at("cols")) {
        const std::string text_label = label.get<std::string>();
        const auto it = col_index.find(text_label);
        if (it == col_index.end()) {
          throw ParseError("unknown structor \"" + text_label + "\" in partition");
        }
        block.cols.push_back(it->second);
      }
      blocks.push_back(std::move(block));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed partition json: ") + e.what());
  }
  return make_partition(matrix, std::move(blocks));
}

std::string render_partition_json(const BlockPartition& partition, const ModularityMatrix& matrix) {
  ordered_json blocks = ordered_json::array();
  for (const Block& block : partition.blocks) {
    blocks.push_back(ordered_json{{"rows", labels_of(matrix.functional_names(), block.rows)},
                                  {"cols", labels_of(matrix.structor_names(), block.cols)}});
  }
  return dump(ordered_json{{"blocks", blocks}});
}

namespace {

ordered_json node_json(const HierarchyNode& node) {
  ordered_json children = ordered_json::object();
  for (const auto& [label, child] : node.children) {
    children[label] = ordered_json{{"block", block_json(child.block)}, {"node", node_json(child.node)}};
  }
  return ordered_json{{"matrix", matrix_json_obj(node.matrix)}, {"children", children}};
}

HierarchyNode node_from_json(const ordered_json& j) {
  HierarchyNode node{matrix_from_json_obj(j.at("matrix")), {}};
  for (const auto& [label, cj] : j.at("children").items()) {
    node.children.emplace(label,
                          HierarchyChild{block_from_json(cj.at("block")), node_from_json(cj.at("node"))});
  }
  return node;
}

}  // namespace

std::string save_hierarchy(const std::vector<HierarchyNode>& stack) {
  ordered_json list = ordered_json::array();
  for (const HierarchyNode& node : stack) list.push_back(node_json(node));
  return dump(ordered_json{{"stack", list}});
}

std::vector<HierarchyNode> load_hierarchy(const std::string& text) {
  const ordered_json j = parse_json_text(text, "hierarchy");
  try {
    std::vector<HierarchyNode> stack;
    for (const ordered_json& node : j.at("stack")) stack.push_back(node_from_json(node));
    return stack;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed hierarchy json: ") + e.what());
  }
}

}  // namespace sdlab
