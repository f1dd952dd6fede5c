#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sdlab/criteria.hpp"
#include "sdlab/io.hpp"
#include "sdlab/lab.hpp"
#include "sdlab/linalg.hpp"
#include "sdlab/matrix.hpp"
#include "sdlab/structure.hpp"

namespace py = pybind11;
using namespace sdlab;

namespace {

std::string frac(const Rational& r) { return to_fraction_string(r); }

using BlockList = std::vector<std::pair<std::vector<int>, std::vector<int>>>;

BlockPartition partition_from(const ModularityMatrix& m, const BlockList& blocks) {
  std::vector<Block> list;
  for (const auto& [rows, cols] : blocks) list.push_back(Block{rows, cols});
  return make_partition(m, std::move(list));
}

Axis axis_from(const std::string& word) {
  if (word == "functionals") return Axis::Functionals;
  if (word == "structors") return Axis::Structors;
  throw AnalysisError("axis must be \"functionals\" or \"structors\"");
}

}  // namespace

PYBIND11_MODULE(sdlab, mod) {
  mod.doc() = "software design laboratory: modularity-matrix analysis of software designs";

  auto base = py::register_exception<Error>(mod, "Error");
  py::register_exception<BuildError>(mod, "BuildError", base.ptr());
  py::register_exception<AnalysisError>(mod, "AnalysisError", base.ptr());
  py::register_exception<ParseError>(mod, "ParseError", base.ptr());

  py::class_<ModularityMatrix>(mod, "Matrix")
      .def(py::init(&ModularityMatrix::build), py::arg("name"), py::arg("functionals"),
           py::arg("structors"), py::arg("grid"))
      .def_property_readonly("name", &ModularityMatrix::name)
      .def_property_readonly("functionals", &ModularityMatrix::functional_names)
      .def_property_readonly("structors", &ModularityMatrix::structor_names)
      .def_property_readonly("shape",
                             [](const ModularityMatrix& m) {
                               return std::make_pair(m.functional_count(), m.structor_count());
                             })
      .def_property_readonly("ones", &ModularityMatrix::ones_count)
      .def_property_readonly("grid",
                             [](const ModularityMatrix& m) {
                               std::vector<std::vector<int>> grid;
                               for (int r = 0; r < m.functional_count(); ++r) {
                                 std::vector<int> row;
                                 for (int c = 0; c < m.structor_count(); ++c) row.push_back(m.at(r, c));
                                 grid.push_back(std::move(row));
                               }
                               return grid;
                             })
      .def("at", &ModularityMatrix::at, py::arg("row"), py::arg("col"))
      .def("permuted", &ModularityMatrix::permuted, py::arg("row_order"), py::arg("col_order"))
      .def("transposed", &ModularityMatrix::transposed)
      .def("renamed", &ModularityMatrix::renamed, py::arg("name"))
      .def("__eq__", [](const ModularityMatrix& a, const ModularityMatrix& b) { return a == b; },
           py::is_operator())
      .def("__repr__", [](const ModularityMatrix& m) {
        return "<Matrix " + m.name() + " " + std::to_string(m.functional_count()) + "x" +
               std::to_string(m.structor_count()) + ">";
      });

  py::class_<Finding>(mod, "Finding")
      .def_property_readonly(
          "severity",
          [](const Finding& f) {
            return std::string(f.severity == Finding::Severity::Error ? "error" : "warning");
          })
      .def_readonly("code", &Finding::code)
      .def_readonly("label", &Finding::label)
      .def_readonly("message", &Finding::message);

  py::class_<ValidationReport>(mod, "ValidationReport")
      .def_readonly("findings", &ValidationReport::findings)
      .def_readonly("is_admissible", &ValidationReport::is_admissible);

  py::class_<CriteriaReport>(mod, "Criteria")
      .def_readonly("trace", &CriteriaReport::trace)
      .def_readonly("offdiag", &CriteriaReport::offdiag)
      .def_readonly("diagonality", &CriteriaReport::diagonality)
      .def_property_readonly("sparsity", [](const CriteriaReport& c) { return frac(c.sparsity); });

  py::class_<Block>(mod, "Block")
      .def_readonly("rows", &Block::rows)
      .def_readonly("cols", &Block::cols);

  py::class_<BlockPartition>(mod, "BlockPartition")
      .def_readonly("blocks", &BlockPartition::blocks)
      .def_readonly("outliers", &BlockPartition::outliers);

  py::class_<DetectedBlocks>(mod, "DetectedBlocks")
      .def_readonly("partition", &DetectedBlocks::partition)
      .def_readonly("is_modular", &DetectedBlocks::is_modular);

  py::class_<Reordering>(mod, "Reordering")
      .def_readonly("row_order", &Reordering::row_order)
      .def_readonly("col_order", &Reordering::col_order)
      .def_readonly("matrix", &Reordering::matrix)
      .def_readonly("diagonality", &Reordering::diagonality)
      .def_readonly("partition", &Reordering::partition);

  py::class_<PartitionCandidate>(mod, "PartitionCandidate")
      .def_readonly("partition", &PartitionCandidate::partition)
      .def_readonly("outlier_count", &PartitionCandidate::outlier_count);

  py::class_<OutlierDetail>(mod, "OutlierDetail")
      .def_readonly("row", &OutlierDetail::row)
      .def_readonly("col", &OutlierDetail::col)
      .def_readonly("functional", &OutlierDetail::functional)
      .def_readonly("structor", &OutlierDetail::structor)
      .def_readonly("row_block", &OutlierDetail::row_block)
      .def_readonly("col_block", &OutlierDetail::col_block)
      .def_readonly("suggestions", &OutlierDetail::suggestions);

  py::class_<DiagnosisReport>(mod, "DiagnosisReport")
      .def_readonly("partition", &DiagnosisReport::partition)
      .def_readonly("outliers", &DiagnosisReport::outliers);

  py::class_<StandardAssessment>(mod, "Assessment")
      .def_property_readonly("verdict",
                             [](const StandardAssessment& a) { return to_string(a.verdict); })
      .def_readonly("is_admissible", &StandardAssessment::is_admissible)
      .def_readonly("is_square", &StandardAssessment::is_square)
      .def_readonly("is_full_rank", &StandardAssessment::is_full_rank)
      .def_readonly("is_block_diagonal", &StandardAssessment::is_block_diagonal)
      .def_readonly("is_modular", &StandardAssessment::is_modular)
      .def_readonly("rank", &StandardAssessment::rank)
      .def_readonly("component_count", &StandardAssessment::component_count)
      .def_readonly("criteria", &StandardAssessment::criteria)
      .def_property_readonly("bordered_bound",
                             [](const StandardAssessment& a) { return frac(a.bordered_bound); })
      .def_readonly("canonical_diagonality", &StandardAssessment::canonical_diagonality)
      .def_readonly("refinement_outliers", &StandardAssessment::refinement_outliers)
      .def_readonly("minimal_modular_outliers", &StandardAssessment::minimal_modular_outliers)
      .def_readonly("front", &StandardAssessment::front);

  py::class_<DesignComparison>(mod, "Comparison")
      .def_property_readonly("winner",
                             [](const DesignComparison& c) {
                               return std::string(c.outcome == CompareOutcome::Left    ? "left"
                                                  : c.outcome == CompareOutcome::Right ? "right"
                                                                                       : "tie");
                             })
      .def_readonly("deciding_factor", &DesignComparison::deciding_factor)
      .def_readonly("left", &DesignComparison::left)
      .def_readonly("right", &DesignComparison::right);

  py::class_<CountVector>(mod, "CountVector")
      .def_property_readonly("axis",
                             [](const CountVector& v) {
                               return std::string(v.axis == Axis::Functionals ? "functionals"
                                                                              : "structors");
                             })
      .def_readonly("labels", &CountVector::labels)
      .def_property_readonly("counts",
                             [](const CountVector& v) {
                               std::vector<std::string> out;
                               for (const Rational& r : v.counts) out.push_back(frac(r));
                               return out;
                             })
      .def_readonly("negative_coefficient_warning", &CountVector::negative_coefficient_warning);

  mod.def("validate", &validate, py::arg("matrix"));
  mod.def("criteria", &criteria, py::arg("matrix"));
  mod.def("rank", &rank, py::arg("matrix"));
  mod.def("detect_blocks", &detect_blocks, py::arg("matrix"));
  mod.def(
      "reorder", [](const ModularityMatrix& m) { return reorder(m, detect_blocks(m).partition); },
      py::arg("matrix"));
  mod.def(
      "reorder",
      [](const ModularityMatrix& m, const BlockList& blocks) {
        return reorder(m, partition_from(m, blocks));
      },
      py::arg("matrix"), py::arg("blocks"));
  mod.def(
      "diagnose", [](const ModularityMatrix& m) { return diagnose_outliers(m, detect_blocks(m).partition); },
      py::arg("matrix"));
  mod.def(
      "diagnose",
      [](const ModularityMatrix& m, const BlockList& blocks) {
        return diagnose_outliers(m, partition_from(m, blocks));
      },
      py::arg("matrix"), py::arg("blocks"));
  mod.def("suggest_partitions", &suggest_partitions, py::arg("matrix"), py::arg("max_blocks") = 16);
  mod.def(
      "assess",
      [](const ModularityMatrix& m, const std::string& bound, int max_blocks) {
        return assess_standard(m, parse_rational(bound), max_blocks);
      },
      py::arg("matrix"), py::arg("bound") = "1/10", py::arg("max_blocks") = 16);
  mod.def("compare", &compare_designs, py::arg("left"), py::arg("right"));
  mod.def(
      "add_vectors",
      [](const ModularityMatrix& m, const std::string& axis, const std::vector<int>& indices,
         const std::optional<std::vector<std::string>>& coefficients) {
        std::optional<std::vector<Rational>> weights;
        if (coefficients) {
          weights.emplace();
          for (const std::string& token : *coefficients) weights->push_back(parse_rational(token));
        }
        return add_vectors(m, axis_from(axis), indices, weights);
      },
      py::arg("matrix"), py::arg("axis"), py::arg("indices"), py::arg("coefficients") = py::none());
  mod.def(
      "coalesce_duplicates",
      [](const ModularityMatrix& m, const std::string& axis) {
        const CoalesceAxis a = axis == "structors" ? CoalesceAxis::Structors
                               : axis == "both"    ? CoalesceAxis::Both
                                                   : CoalesceAxis::Functionals;
        return coalesce_duplicates(m, a);
      },
      py::arg("matrix"), py::arg("axis") = "functionals");
  mod.def(
      "generate",
      [](const std::string& name, std::uint64_t seed,
         const std::vector<std::tuple<int, int, std::string>>& blocks, int outliers) {
        GeneratorSpec spec;
        spec.name = name;
        spec.seed = seed;
        spec.outlier_count = outliers;
        for (const auto& [rows, cols, density] : blocks) {
          spec.blocks.push_back(BlockSpec{rows, cols, parse_rational(density)});
        }
        return generate_system(spec);
      },
      py::arg("name"), py::arg("seed"), py::arg("blocks"), py::arg("outliers") = 0);
  mod.def(
      "sparsity_trend",
      [](const std::vector<int>& sizes, int block_size) {
        std::vector<std::pair<int, std::string>> out;
        for (const TrendPoint& p : sparsity_trend(sizes, block_size)) {
          out.emplace_back(p.size, frac(p.sparsity));
        }
        return out;
      },
      py::arg("sizes"), py::arg("block_size") = 1);

  mod.def("parse_csv", &parse_csv, py::arg("text"), py::arg("default_name") = "design");
  mod.def("render_csv", &render_csv, py::arg("matrix"));
  mod.def("parse_sdl", &parse_sdl, py::arg("text"));
  mod.def(
      "matrix_grid", [](const ModularityMatrix& m) { return render_matrix_grid(m, nullptr); },
      py::arg("matrix"));
}
