#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sdlab/criteria.hpp"
#include "sdlab/io.hpp"
#include "sdlab/lab.hpp"
#include "sdlab/linalg.hpp"
#include "sdlab/matrix.hpp"
#include "sdlab/structure.hpp"

namespace {

using namespace sdlab;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read file \"" + path + "\"");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write file \"" + path + "\"");
  out << text;
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::string current;
  for (char ch : text) {
    if (ch == ',') {
      items.push_back(trim(current));
      current.clear();
    } else {
      current.push_back(ch);
    }
  }
  items.push_back(trim(current));
  return items;
}

int parse_int(const std::string& token, const std::string& what) {
  try {
    std::size_t used = 0;
    const int value = std::stoi(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return value;
  } catch (const std::exception&) {
    throw ParseError("invalid " + what + " \"" + token + "\"");
  }
}

Rational parse_rational_arg(const std::string& token, const std::string& what) {
  try {
    return parse_rational(token);
  } catch (const std::exception&) {
    throw ParseError("invalid " + what + " \"" + token + "\"");
  }
}

ModularityMatrix load_matrix(const std::string& path) {
  if (path.empty()) throw ParseError("no input file given (use --input)");
  const std::string text = read_file(path);
  const std::filesystem::path p(path);
  const std::string ext = p.extension().string();
  if (ext == ".sdl") return parse_sdl(text);
  if (ext == ".json") return parse_matrix_json(text);
  return parse_csv(text, p.stem().string().empty() ? "design" : p.stem().string());
}

std::vector<int> label_indices(const std::vector<std::string>& names, const std::string& list,
                               const std::string& what) {
  std::vector<int> indices;
  for (const std::string& label : split_list(list)) {
    const auto it = std::find(names.begin(), names.end(), label);
    if (it == names.end()) throw ParseError("unknown " + what + " \"" + label + "\"");
    indices.push_back(static_cast<int>(it - names.begin()));
  }
  return indices;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"software design laboratory: modularity-matrix analysis of software designs"};
  app.require_subcommand(0, 1);

  std::string format_word = "text";
  std::string input_path;
  std::uint64_t seed = 0;
  int max_blocks = 16;
  app.add_option("--format", format_word, "output format")
      ->check(CLI::IsMember({"text", "json", "markdown"}));
  app.add_option("--input", input_path, "input matrix file (.csv, .sdl, or .json)");
  app.add_option("--seed", seed, "random seed for generated systems");
  app.add_option("--max-blocks", max_blocks, "upper bound on blocks per suggested partition");

  std::string partition_path, with_path, output_path, hierarchy_path;
  std::string label_arg, rows_arg, cols_arg, axis_word = "functionals", vectors_arg, coeff_arg;
  std::string blocks_arg, name_arg = "generated", sizes_arg, bound_arg = "1/10";
  int outliers_arg = 0, block_size = 1;

  std::function<int()> action;
  const auto fmt = [&] { return parse_format(format_word); };
  const auto emit = [&](const ReportDocument& doc) { std::cout << doc.body; };
  const auto maybe_save = [&](const ModularityMatrix& m) {
    if (!output_path.empty()) write_file(output_path, render_csv(m));
  };

  auto* cmd_validate = app.add_subcommand("validate", "check a matrix for empty or duplicate rows and columns");
  cmd_validate->fallthrough();
  cmd_validate->callback([&] {
    action = [&] {
      const ModularityMatrix m = load_matrix(input_path);
      const ValidationReport report = validate(m);
      emit(render_validation_report(m, report, fmt()));
      return report.is_admissible ? 0 : 1;
    };
  });

  auto* cmd_criteria = app.add_subcommand("criteria", "trace, offdiag, diagonality, and sparsity");
  cmd_criteria->fallthrough();
  cmd_criteria->callback([&] {
    action = [&] {
      const ModularityMatrix m = load_matrix(input_path);
      emit(render_criteria_report(m, criteria(m), fmt()));
      return 0;
    };
  });

  auto* cmd_blocks = app.add_subcommand("blocks", "detect diagonal blocks from connected components");
  cmd_blocks->fallthrough();
  cmd_blocks->callback([&] {
    action = [&] {
      const ModularityMatrix m = load_matrix(input_path);
      emit(render_blocks_report(m, detect_blocks(m), fmt()));
      return 0;
    };
  });

  auto* cmd_reorder = app.add_subcommand("reorder", "permute rows and columns toward block-diagonal form");
  cmd_reorder->fallthrough();
  cmd_reorder->add_option("--partition", partition_path, "partition file (default: detected blocks)");
  cmd_reorder->add_option("--output", output_path, "write the reordered matrix as csv");
  cmd_reorder->callback([&] {
    action = [&] {
      const ModularityMatrix m = load_matrix(input_path);
      const BlockPartition partition =
          partition_path.empty() ? detect_blocks(m).partition
                                 : parse_partition_json(read_file(partition_path), m);
      const Reordering reordering = reorder(m, partition);
      emit(render_reorder_report(reordering, fmt()));
      maybe_save(reordering.matrix);
      return 0;
    };
  });

  auto* cmd_diagnose = app.add_subcommand("diagnose", "explain outliers and suggest decoupling edits");
  cmd_diagnose->fallthrough();
  cmd_diagnose->add_option("--partition", partition_path, "partition file (default: detected blocks)");
  cmd_diagnose->callback([&] {
    action = [&] {
      const ModularityMatrix m = load_matrix(input_path);
      const BlockPartition partition =
          partition_path.empty() ? detect_blocks(m).partition
                                 : parse_partition_json(read_file(partition_path), m);
      emit(render_diagnosis_report(m, diagnose_outliers(m, partition), fmt()));
      return 0;
    };
  });

  auto* cmd_suggest = app.add_subcommand("suggest", "propose finer partitions with few outliers");
  cmd_suggest->fallthrough();
  cmd_suggest->callback([&] {
    action = [&] {
      const ModularityMatrix m = load_matrix(input_path);
      emit(render_suggestions_report(m, suggest_partitions(m, max_blocks), fmt()));
      return 0;
    };
  });

  auto* cmd_compare = app.add_subcommand("compare", "rank two designs against the standard form");
  cmd_compare->fallthrough();
  cmd_compare->add_option("--with", with_path, "second matrix file")->required();
  cmd_compare->callback([&] {
    action = [&] {
      const ModularityMatrix left = load_matrix(input_path);
      const ModularityMatrix right = load_matrix(with_path);
      emit(render_comparison_report(compare_designs(left, right), fmt()));
      return 0;
    };
  });

  auto* cmd_collapse = app.add_subcommand("collapse", "fold a block into a single row/column pair");
  cmd_collapse->fallthrough();
  cmd_collapse->add_option("--label", label_arg, "name for the collapsed unit")->required();
  cmd_collapse->add_option("--rows", rows_arg, "comma list of functional labels")->required();
  cmd_collapse->add_option("--cols", cols_arg, "comma list of structor labels")->required();
  cmd_collapse->add_option("--hierarchy", hierarchy_path, "side file recording collapse history");
  cmd_collapse->add_option("--output", output_path, "write the collapsed matrix as csv");
  cmd_collapse->callback([&] {
    action = [&] {
      const ModularityMatrix m = load_matrix(input_path);
      Block block{label_indices(m.functional_names(), rows_arg, "functional"),
                  label_indices(m.structor_names(), cols_arg, "structor")};
      std::sort(block.rows.begin(), block.rows.end());
      std::sort(block.cols.begin(), block.cols.end());
      const CollapseResult result = collapse_block(m, block, label_arg);
      if (!hierarchy_path.empty()) {
        std::vector<HierarchyNode> stack;
        if (std::filesystem::exists(hierarchy_path)) {
          stack = load_hierarchy(read_file(hierarchy_path));
        }
        stack.insert(stack.begin(), result.node);
        write_file(hierarchy_path, save_hierarchy(stack));
      }
      emit(render_matrix_report(result.matrix, "collapsed \"" + label_arg + "\"", fmt()));
      maybe_save(result.matrix);
      return 0;
    };
  });

  auto* cmd_expand = app.add_subcommand("expand", "undo the most recent recorded collapse");
  cmd_expand->fallthrough();
  cmd_expand->add_option("--label", label_arg, "collapsed unit to expand")->required();
  cmd_expand->add_option("--hierarchy", hierarchy_path, "side file recording collapse history")
      ->required();
  cmd_expand->add_option("--output", output_path, "write the expanded matrix as csv");
  cmd_expand->callback([&] {
    action = [&] {
      const ModularityMatrix m = load_matrix(input_path);
      std::vector<HierarchyNode> stack = load_hierarchy(read_file(hierarchy_path));
      if (stack.empty()) throw AnalysisError("hierarchy file records no collapse to expand");
      const ModularityMatrix expanded = expand_block(m, stack.front(), label_arg);
      stack.erase(stack.begin());
      write_file(hierarchy_path, save_hierarchy(stack));
      emit(render_matrix_report(expanded, "expanded \"" + label_arg + "\"", fmt()));
      maybe_save(expanded);
      return 0;
    };
  });

  auto* cmd_add = app.add_subcommand("add", "sum selected rows or columns as count vectors");
  cmd_add->fallthrough();
  cmd_add->add_option("--axis", axis_word, "functionals or structors")
      ->check(CLI::IsMember({"functionals", "structors"}));
  cmd_add->add_option("--vectors", vectors_arg, "comma list of labels to add")->required();
  cmd_add->add_option("--coefficients", coeff_arg, "comma list of weights (default all 1)");
  cmd_add->callback([&] {
    action = [&] {
      const ModularityMatrix m = load_matrix(input_path);
      const Axis axis = axis_word == "structors" ? Axis::Structors : Axis::Functionals;
      const std::vector<int> indices = label_indices(
          axis == Axis::Functionals ? m.functional_names() : m.structor_names(), vectors_arg,
          axis == Axis::Functionals ? "functional" : "structor");
      std::optional<std::vector<Rational>> coefficients;
      if (!coeff_arg.empty()) {
        coefficients.emplace();
        for (const std::string& token : split_list(coeff_arg)) {
          coefficients->push_back(parse_rational_arg(token, "coefficient"));
        }
      }
      emit(render_count_vector_report(add_vectors(m, axis, indices, coefficients), fmt()));
      return 0;
    };
  });

  auto* cmd_coalesce = app.add_subcommand("coalesce", "merge duplicate rows and/or columns");
  cmd_coalesce->fallthrough();
  cmd_coalesce->add_option("--axis", axis_word, "functionals, structors, or both")
      ->check(CLI::IsMember({"functionals", "structors", "both"}));
  cmd_coalesce->add_option("--output", output_path, "write the merged matrix as csv");
  cmd_coalesce->callback([&] {
    action = [&] {
      const ModularityMatrix m = load_matrix(input_path);
      const CoalesceAxis axis = axis_word == "structors" ? CoalesceAxis::Structors
                                : axis_word == "both"    ? CoalesceAxis::Both
                                                         : CoalesceAxis::Functionals;
      const ModularityMatrix merged = coalesce_duplicates(m, axis);
      emit(render_matrix_report(merged, "coalesced duplicates", fmt()));
      maybe_save(merged);
      return 0;
    };
  });

  auto* cmd_gen = app.add_subcommand("gen", "generate a random system from a block recipe");
  cmd_gen->fallthrough();
  cmd_gen->add_option("--blocks", blocks_arg, "comma list of RxC:density blocks, e.g. 3x3:0.8,2x2:1")
      ->required();
  cmd_gen->add_option("--outliers", outliers_arg, "number of off-block links to inject");
  cmd_gen->add_option("--name", name_arg, "name of the generated matrix");
  cmd_gen->add_option("--output", output_path, "write the generated matrix as csv");
  cmd_gen->callback([&] {
    action = [&] {
      GeneratorSpec spec;
      spec.name = name_arg;
      spec.seed = seed;
      spec.outlier_count = outliers_arg;
      for (const std::string& token : split_list(blocks_arg)) {
        const auto x = token.find('x');
        if (x == std::string::npos) {
          throw ParseError("invalid block spec \"" + token + "\" (expected RxC:density)");
        }
        const auto colon = token.find(':', x);
        BlockSpec block;
        block.rows = parse_int(token.substr(0, x), "block row count");
        block.cols = parse_int(token.substr(x + 1, colon == std::string::npos ? std::string::npos
                                                                              : colon - x - 1),
                               "block column count");
        block.density = colon == std::string::npos
                            ? Rational(0)
                            : parse_rational_arg(token.substr(colon + 1), "density");
        spec.blocks.push_back(block);
      }
      const ModularityMatrix m = generate_system(spec);
      emit(render_matrix_report(m, "generated system", fmt()));
      maybe_save(m);
      return 0;
    };
  });

  auto* cmd_trend = app.add_subcommand("trend", "sparsity of ideal systems across sizes");
  cmd_trend->fallthrough();
  cmd_trend->add_option("--sizes", sizes_arg, "comma list of ascending matrix sizes")->required();
  cmd_trend->add_option("--block-size", block_size, "size of each dense diagonal block");
  cmd_trend->callback([&] {
    action = [&] {
      std::vector<int> sizes;
      for (const std::string& token : split_list(sizes_arg)) {
        sizes.push_back(parse_int(token, "size"));
      }
      emit(render_trend_report(sparsity_trend(sizes, block_size), block_size, fmt()));
      return 0;
    };
  });

  auto* cmd_assess = app.add_subcommand("assess", "verdict: standard, bordered, or non-standard");
  cmd_assess->fallthrough();
  cmd_assess->add_option("--bound", bound_arg, "outlier allowance as a fraction of the ones count");
  cmd_assess->callback([&] {
    action = [&] {
      const ModularityMatrix m = load_matrix(input_path);
      emit(render_assessment_report(
          m, assess_standard(m, parse_rational_arg(bound_arg, "bound"), max_blocks), fmt()));
      return 0;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (!action) {
    std::cout << app.help();
    return 2;
  }

  try {
    return action();
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const BuildError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const AnalysisError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
