#include <doctest.h>

#include "testdata.hpp"

#include "sdlab/matrix.hpp"

using namespace sdlab;

TEST_CASE("build checks labels and grid shape") {
  CHECK_THROWS_WITH_AS(ModularityMatrix::build("m", {}, {"S1"}, {}),
                       "matrix needs at least one functional", BuildError);
  CHECK_THROWS_WITH_AS(ModularityMatrix::build("m", {"F1"}, {}, {{}}),
                       "matrix needs at least one structor", BuildError);
  CHECK_THROWS_AS(ModularityMatrix::build("m", {"F1", "F1"}, {"S1"}, {{1}, {1}}), BuildError);
  CHECK_THROWS_AS(ModularityMatrix::build("m", {"F1"}, {"S1", "S2"}, {{1}}), BuildError);
  CHECK_THROWS_AS(ModularityMatrix::build("m", {"F1"}, {"S1"}, {{2}}), BuildError);
  CHECK_THROWS_AS(ModularityMatrix::build("m", {""}, {"S1"}, {{1}}), BuildError);
}

TEST_CASE("accessors report the grid faithfully") {
  const ModularityMatrix m = testdata::gs();
  CHECK(m.name() == "gs");
  CHECK(m.functional_count() == 5);
  CHECK(m.structor_count() == 5);
  CHECK(m.ones_count() == 8);
  CHECK(m.at(2, 0) == 1);
  CHECK(m.at(0, 2) == 0);
  CHECK(m.renamed("other").name() == "other");
  CHECK(m.renamed("other").at(2, 0) == 1);
}

TEST_CASE("permuted uses order[new] = old on both axes") {
  const ModularityMatrix m = testdata::gs();
  const ModularityMatrix p = m.permuted({4, 3, 2, 1, 0}, {0, 1, 2, 3, 4});
  CHECK(p.functional_names().front() == "Refresh");
  CHECK(p.at(0, 3) == 1);  // old (4,3)
  CHECK(p.at(4, 0) == 1);  // old (0,0)
  const ModularityMatrix back = p.permuted({4, 3, 2, 1, 0}, {0, 1, 2, 3, 4});
  CHECK(back == m);
}

TEST_CASE("transpose swaps axes and labels") {
  const ModularityMatrix t = testdata::gs().transposed();
  CHECK(t.functional_count() == 5);
  CHECK(t.functional_names().front() == "Circle");
  CHECK(t.at(0, 2) == 1);  // Circle provides Translate-Shape
}

TEST_CASE("equality covers name, labels, and grid") {
  CHECK(testdata::gs() == testdata::gs());
  CHECK_FALSE(testdata::gs() == testdata::gs().renamed("gs2"));
  CHECK_FALSE(testdata::gs() == testdata::gs().permuted({1, 0, 2, 3, 4}, {0, 1, 2, 3, 4}));
}

TEST_CASE("validation finds empty, full, and duplicate lines") {
  const ModularityMatrix m = ModularityMatrix::build(
      "m", {"F1", "F2", "F3", "F4"}, {"S1", "S2", "S3"},
      {{1, 1, 1}, {0, 0, 0}, {1, 0, 1}, {1, 0, 1}});
  const ValidationReport report = validate(m);
  CHECK_FALSE(report.is_admissible);
  CHECK(report.has("W_FULL_ROW"));
  CHECK(report.has("E_EMPTY_ROW"));
  CHECK(report.has("W_DUP_ROW"));
  CHECK(report.has("W_DUP_COL"));  // S1 and S3 both read (1,0,1,1)
  CHECK_FALSE(report.has("E_EMPTY_COL"));

  const ModularityMatrix cols = ModularityMatrix::build(
      "m", {"F1", "F2"}, {"S1", "S2", "S3", "S4"}, {{1, 0, 1, 1}, {1, 0, 1, 1}});
  const ValidationReport colreport = validate(cols);
  CHECK(colreport.has("E_EMPTY_COL"));
  CHECK(colreport.has("W_DUP_COL"));
  CHECK(colreport.has("W_FULL_COL"));
  CHECK(colreport.has("W_DUP_ROW"));
  CHECK_FALSE(colreport.is_admissible);
}

TEST_CASE("finding messages carry label and one-based position") {
  const ModularityMatrix m =
      ModularityMatrix::build("m", {"alpha", "beta"}, {"S1", "S2"}, {{1, 1}, {0, 0}});
  const ValidationReport report = validate(m);
  bool saw = false;
  for (const Finding& f : report.findings) {
    if (f.code == "E_EMPTY_ROW") {
      saw = true;
      CHECK(f.index == 1);
      CHECK(f.label == "beta");
      CHECK(f.message == "functional \"beta\" (row 2) is provided by no structor");
    }
  }
  CHECK(saw);
  CHECK(validate(testdata::gs()).is_admissible);
  CHECK(validate(testdata::gs()).findings.empty());
}
