#include <doctest.h>

#include <set>

#include "testdata.hpp"

#include "sdlab/criteria.hpp"
#include "sdlab/structure.hpp"

using namespace sdlab;

namespace {

ModularityMatrix bidiagonal4() {
  return ModularityMatrix::build(
      "bidiag", {"F1", "F2", "F3", "F4"}, {"S1", "S2", "S3", "S4"},
      {{1, 1, 0, 0}, {0, 1, 1, 0}, {0, 0, 1, 1}, {0, 0, 0, 1}});
}

ModularityMatrix identity3() {
  return ModularityMatrix::build("id3", {"F1", "F2", "F3"}, {"S1", "S2", "S3"},
                                 {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
}

std::vector<std::pair<std::size_t, int>> front_shape(const std::vector<PartitionCandidate>& front) {
  std::vector<std::pair<std::size_t, int>> shape;
  for (const PartitionCandidate& candidate : front) {
    shape.emplace_back(candidate.partition.blocks.size(), candidate.outlier_count);
  }
  return shape;
}

}  // namespace

TEST_CASE("connected components of the worked designs") {
  const std::vector<Component> gs = connected_components(testdata::gs());
  REQUIRE(gs.size() == 2);
  CHECK(gs[0].rows == std::vector<int>{0, 1, 2});
  CHECK(gs[0].cols == std::vector<int>{0, 1, 2});
  CHECK(gs[1].rows == std::vector<int>{3, 4});
  CHECK(gs[1].cols == std::vector<int>{3, 4});
  CHECK_FALSE(gs[0].degenerate);

  const std::vector<Component> ng = connected_components(testdata::ng());
  REQUIRE(ng.size() == 4);
  CHECK(ng[0].rows == std::vector<int>{0, 1, 2, 3, 4, 5, 6});
  CHECK(ng[0].cols == std::vector<int>{0, 1, 2, 3, 4, 5, 6});
  CHECK(ng[1].rows == std::vector<int>{7});

  const std::vector<Component> obs = connected_components(testdata::obs());
  CHECK(obs.size() == 13);  // one linked trio of rows/cols, the rest degenerate
  int degenerate = 0;
  for (const Component& comp : obs) degenerate += comp.degenerate ? 1 : 0;
  CHECK(degenerate == 12);
}

TEST_CASE("make_partition validates coverage and disjointness") {
  const ModularityMatrix g = testdata::gs();
  CHECK_THROWS_AS(make_partition(g, {{{0, 1, 2}, {0, 1, 2}}}), AnalysisError);  // rows 3,4 uncovered
  CHECK_THROWS_AS(
      make_partition(g, {{{0, 1, 2}, {0, 1, 2}}, {{2, 3, 4}, {3, 4}}}), AnalysisError);
  CHECK_THROWS_AS(make_partition(g, {{{0, 1, 2, 3, 4}, {0, 1, 2, 3, 9}}}), AnalysisError);
  CHECK_THROWS_AS(make_partition(g, {{{}, {0, 1, 2, 3, 4}}, {{0, 1, 2, 3, 4}, {}}}),
                  AnalysisError);

  const BlockPartition p = make_partition(g, {{{3, 4}, {3, 4}}, {{0, 1, 2}, {0, 1, 2}}});
  CHECK(p.blocks.size() == 2);
  CHECK(p.outliers.empty());

  const BlockPartition crossed = make_partition(g, {{{0, 1, 2}, {0, 1}}, {{3, 4}, {2, 3, 4}}});
  CHECK(crossed.outliers == std::vector<std::pair<int, int>>{{2, 2}});
}

TEST_CASE("detect_blocks labels the worked designs correctly") {
  const DetectedBlocks gs = detect_blocks(testdata::gs());
  REQUIRE(gs.partition.blocks.size() == 2);
  CHECK(gs.partition.blocks[0].rows == std::vector<int>{0, 1, 2});
  CHECK(gs.partition.blocks[1].rows == std::vector<int>{3, 4});
  CHECK(gs.partition.outliers.empty());
  CHECK(gs.is_modular);
  REQUIRE(gs.flags.size() == 2);
  CHECK(gs.flags[0].square);
  CHECK(gs.flags[0].well_composed);
  CHECK(gs.flags[1].square);
  CHECK(gs.flags[1].well_composed);

  const DetectedBlocks ng = detect_blocks(testdata::ng());
  REQUIRE(ng.partition.blocks.size() == 4);
  CHECK(ng.partition.blocks[0].rows.size() == 7);
  CHECK(ng.is_modular);
  for (const BlockFlags& flags : ng.flags) {
    CHECK(flags.square);
    CHECK(flags.well_composed);
  }

  const ModularityMatrix inadmissible =
      ModularityMatrix::build("m", {"F1", "F2"}, {"S1", "S2"}, {{1, 0}, {0, 0}});
  CHECK_THROWS_AS(detect_blocks(inadmissible), AnalysisError);
}

TEST_CASE("non-square blocks are flagged") {
  const ModularityMatrix m = ModularityMatrix::build(
      "m", {"F1", "F2", "F3"}, {"S1", "S2"}, {{1, 0}, {1, 0}, {0, 1}});
  const DetectedBlocks d = detect_blocks(m);
  REQUIRE(d.flags.size() == 2);
  CHECK_FALSE(d.flags[0].square);
  CHECK_FALSE(d.flags[0].well_composed);
  CHECK(d.flags[1].square);
}

TEST_CASE("reorder finds the best arrangement of gs") {
  const ModularityMatrix g = testdata::gs();
  const Reordering r = reorder(g, detect_blocks(g).partition);
  CHECK(r.diagonality == 2);
  CHECK(r.diagonality == testdata::diagonality_of(testdata::grid_of(r.matrix)));
  // the permuted grid must equal the original grid composed with the orders
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      CHECK(r.matrix.at(i, j) == g.at(r.row_order[static_cast<std::size_t>(i)],
                                      r.col_order[static_cast<std::size_t>(j)]));
    }
  }
  // blocks contiguous, in partition order
  CHECK(r.partition.blocks[0].rows == std::vector<int>{0, 1, 2});
  CHECK(r.partition.blocks[1].rows == std::vector<int>{3, 4});
  CHECK(r.partition.outliers.empty());
}

TEST_CASE("reorder keeps outlier count and reports its own diagonality") {
  const ModularityMatrix n = testdata::ng();
  const BlockPartition paper = make_partition(n, testdata::ng_paper_blocks());
  const Reordering r = reorder(n, paper);
  CHECK(r.partition.outliers.size() == 3);
  CHECK(r.diagonality == testdata::diagonality_of(testdata::grid_of(r.matrix)));
  CHECK(r.diagonality >= criteria(n).diagonality);
  for (std::size_t b = 0; b < r.partition.blocks.size(); ++b) {
    const Block& block = r.partition.blocks[b];
    CHECK(block.rows.back() - block.rows.front() + 1 == static_cast<int>(block.rows.size()));
  }
}

TEST_CASE("scrambles of gs all reorder back to the optimum") {
  for (std::uint32_t seed = 1; seed <= 5; ++seed) {
    const ModularityMatrix s = testdata::scrambled(testdata::gs(), seed);
    const Reordering r = reorder(s, detect_blocks(s).partition);
    CHECK(r.diagonality == 2);
  }
}

TEST_CASE("diagnosis explains the three ng outliers") {
  const ModularityMatrix n = testdata::ng();
  const DiagnosisReport report = diagnose_outliers(n, make_partition(n, testdata::ng_paper_blocks()));
  REQUIRE(report.outliers.size() == 3);

  const OutlierDetail& first = report.outliers[0];
  CHECK(first.row == 0);
  CHECK(first.col == 3);
  CHECK(first.functional == "CollData");
  CHECK(first.structor == "Data Ac");
  CHECK(first.row_block == 0);
  CHECK(first.col_block == 1);
  REQUIRE(first.suggestions.size() == 4);
  CHECK(first.suggestions[0] == "delete the link from \"CollData\" to \"Data Ac\"");
  CHECK(first.suggestions[1] == "add a structor to block 1 and move the link to it");
  CHECK(first.suggestions[2] == "add a functional to block 2 and move the link to it");
  CHECK(first.suggestions[3] == "merge block 1 and block 2");

  CHECK(report.outliers[1].row == 3);
  CHECK(report.outliers[1].col == 2);
  CHECK(report.outliers[2].row == 3);
  CHECK(report.outliers[2].col == 6);
  CHECK(report.outliers[2].suggestions[2] == "add a functional to singleton 3 and move the link to it");

  const DiagnosisReport clean = diagnose_outliers(testdata::gs(), detect_blocks(testdata::gs()).partition);
  CHECK(clean.outliers.empty());
}

TEST_CASE("suggest_partitions fronts for the worked designs") {
  using Shape = std::vector<std::pair<std::size_t, int>>;
  CHECK(front_shape(suggest_partitions(testdata::gs())) == Shape{{2, 0}});
  CHECK(front_shape(suggest_partitions(identity3())) == Shape{{3, 0}});

  const std::vector<PartitionCandidate> ng = suggest_partitions(testdata::ng());
  CHECK(front_shape(ng) == Shape{{4, 0}, {5, 1}, {6, 3}});
  CHECK(ng[1].partition.outliers == std::vector<std::pair<int, int>>{{3, 5}});
  // the five-block refinement shaves the synchronous/asynchronous pair off
  bool found = false;
  for (const Block& block : ng[1].partition.blocks) {
    if (block.rows == std::vector<int>{4, 5}) {
      found = true;
      CHECK(block.cols == std::vector<int>{4, 5});
    }
  }
  CHECK(found);
  // six blocks: (F1,F2)x(S1,S2,S4), (F3,F4,F7)x(S3,S7), the sync/async pair,
  // and the three singletons; the ones left uncovered are exactly these
  CHECK(ng[2].partition.outliers ==
        std::vector<std::pair<int, int>>{{1, 2}, {3, 3}, {3, 5}});

  CHECK(front_shape(suggest_partitions(testdata::ng(), 4)) == Shape{{4, 0}});
  CHECK(front_shape(suggest_partitions(testdata::ng(), 5)) == Shape{{4, 0}, {5, 1}});
}

TEST_CASE("a connected chain block is split only while dimensions allow") {
  using Shape = std::vector<std::pair<std::size_t, int>>;
  CHECK(front_shape(suggest_partitions(bidiagonal4())) == Shape{{1, 0}, {2, 1}});

  const ModularityMatrix tiny = ModularityMatrix::build(
      "m", {"F1", "F2", "F3"}, {"S1", "S2", "S3"}, {{1, 1, 0}, {0, 1, 1}, {0, 0, 1}});
  CHECK(front_shape(suggest_partitions(tiny)) == Shape{{1, 0}});  // below the 4x4 floor
}

TEST_CASE("responsibility violations name every unit crossing blocks") {
  const ModularityMatrix n = testdata::ng();
  const BlockPartition paper = make_partition(n, testdata::ng_paper_blocks());
  const std::vector<ResponsibilityViolation> violations = single_responsibility_check(n, paper);
  REQUIRE(violations.size() == 5);

  CHECK(violations[0].axis == Axis::Functionals);
  CHECK(violations[0].label == "CollData");
  CHECK(violations[0].blocks == std::vector<int>{0, 1});
  CHECK(violations[1].label == "OtherCol");
  CHECK(violations[1].blocks == std::vector<int>{0, 1, 2});
  CHECK(violations[2].axis == Axis::Structors);
  CHECK(violations[2].label == "Data Vu");
  CHECK(violations[3].label == "Data Ac");
  CHECK(violations[4].label == "Grif Infr");
  CHECK(violations[4].blocks == std::vector<int>{1, 2});

  CHECK(single_responsibility_check(testdata::gs(), detect_blocks(testdata::gs()).partition).empty());
}

TEST_CASE("shared functionals are flagged as inheritance candidates") {
  const std::vector<SharedFunctional> shared = shared_functional_flags(testdata::gs());
  REQUIRE(shared.size() == 2);
  CHECK(shared[0].label == "Translate-Shape");
  CHECK(shared[0].functional == 2);
  CHECK(shared[0].structors == std::vector<int>{0, 1, 2});  // Circle, Triangle, Shape
  CHECK(shared[0].note == "inheritance-or-composite");
  CHECK(shared[1].label == "Refresh");
  CHECK(shared[1].structors == std::vector<int>{3, 4});  // GUI, Refresh Aspect
}

TEST_CASE("cross-block coupling reports dot-product witnesses") {
  const ModularityMatrix n = testdata::ng();
  const BlockPartition paper = make_partition(n, testdata::ng_paper_blocks());
  const std::vector<BlockCoupling> couplings = cross_block_coupling(n, paper);
  CHECK(couplings.size() == 15);  // all pairs of six blocks

  const BlockCoupling& head = couplings.front();
  CHECK(head.block_a == 0);
  CHECK(head.block_b == 1);
  CHECK(head.coupled);
  CHECK(head.max_column_product == 1);
  CHECK(head.column_witness == std::pair<int, int>{0, 3});  // Data Str x Data Ac share CollData
  CHECK(head.max_row_product == 1);
  CHECK(head.row_witness == std::pair<int, int>{0, 3});

  for (const BlockCoupling& c : couplings) {
    if (c.block_a == 0 && c.block_b == 3) {
      CHECK_FALSE(c.coupled);
      CHECK(c.max_column_product == 0);
    }
  }

  for (const BlockCoupling& c : cross_block_coupling(testdata::gs(), detect_blocks(testdata::gs()).partition)) {
    CHECK_FALSE(c.coupled);
  }
}

TEST_CASE("collapse folds a block and expand undoes it exactly") {
  const ModularityMatrix g = testdata::gs();
  const Block block{{0, 1, 2}, {0, 1, 2}};
  const CollapseResult collapsed = collapse_block(g, block, "Graphics");

  CHECK(collapsed.matrix.functional_count() == 3);
  CHECK(collapsed.matrix.functional_names() ==
        std::vector<std::string>{"Graphics", "Display", "Refresh"});
  CHECK(collapsed.matrix.structor_names() ==
        std::vector<std::string>{"Graphics", "GUI", "Refresh Aspect"});
  CHECK(collapsed.matrix.at(0, 0) == 1);
  CHECK(collapsed.matrix.at(0, 1) == 0);
  CHECK(collapsed.matrix.at(2, 1) == 1);

  const ModularityMatrix expanded = expand_block(collapsed.matrix, collapsed.node, "Graphics");
  CHECK(expanded == g);

  CHECK_THROWS_AS(expand_block(collapsed.matrix, collapsed.node, "nope"), AnalysisError);
  const ModularityMatrix tampered = collapsed.matrix.permuted({1, 0, 2}, {0, 1, 2});
  CHECK_THROWS_AS(expand_block(tampered, collapsed.node, "Graphics"), AnalysisError);
}

TEST_CASE("collapse keeps outside links by or-aggregation") {
  const ModularityMatrix n = testdata::ng();
  const CollapseResult c = collapse_block(n, {{0, 1, 2}, {0, 1, 2}}, "data-core");
  CHECK(c.matrix.functional_count() == 8);
  CHECK(c.matrix.at(0, 0) == 1);              // collapsed diagonal cell
  CHECK(c.matrix.at(0, 1) == 1);              // CollData's stray link to Data Ac survives
  CHECK(c.matrix.at(1, 0) == 1);              // OtherCol still reaches Data Vu
  CHECK(expand_block(c.matrix, c.node, "data-core") == n);
}

TEST_CASE("collapse rejects label collisions and bad blocks") {
  const ModularityMatrix g = testdata::gs();
  CHECK_THROWS_AS(collapse_block(g, {{0, 1, 2}, {0, 1, 2}}, "GUI"), AnalysisError);
  CHECK_THROWS_AS(collapse_block(g, {{0, 1, 2}, {0, 1, 2}}, ""), AnalysisError);
  CHECK_THROWS_AS(collapse_block(g, {{0, 0}, {0, 1}}, "x"), AnalysisError);
  CHECK_THROWS_AS(collapse_block(g, {{0, 9}, {0, 1}}, "x"), AnalysisError);
  CHECK_THROWS_AS(collapse_block(g, {{}, {0}}, "x"), AnalysisError);
  // a label that disappears with the block may be reused
  const CollapseResult ok = collapse_block(g, {{0, 1, 2}, {0, 1, 2}}, "Translate-Shape");
  CHECK(ok.matrix.functional_names().front() == "Translate-Shape");
}

TEST_CASE("every block of gs and ng collapses and expands to identity") {
  for (const ModularityMatrix& m : {testdata::gs(), testdata::ng()}) {
    const DetectedBlocks detected = detect_blocks(m);
    for (const Block& block : detected.partition.blocks) {
      const CollapseResult c = collapse_block(m, block, "unit-under-test");
      CHECK(expand_block(c.matrix, c.node, "unit-under-test") == m);
    }
  }
}
