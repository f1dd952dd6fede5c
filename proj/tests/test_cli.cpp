#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "testdata.hpp"

#include "sdlab/io.hpp"

using namespace sdlab;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr interleaved
};

const char* cli_path() {
  const char* path = std::getenv("SDLAB_CLI");
  REQUIRE_MESSAGE(path != nullptr, "SDLAB_CLI must point at the command-line binary");
  return path;
}

std::string data_file(const std::string& name) {
  const char* dir = std::getenv("SDLAB_DATA");
  REQUIRE_MESSAGE(dir != nullptr, "SDLAB_DATA must point at the sample data directory");
  return std::string(dir) + "/" + name;
}

RunResult run_cli(const std::string& args) {
  const std::string command = std::string("\"") + cli_path() + "\" " + args + " 2>&1";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE_MESSAGE(pipe != nullptr, "popen failed for: " << command);
  RunResult result;
  char buffer[4096];
  while (std::size_t got = std::fread(buffer, 1, sizeof(buffer), pipe)) {
    result.output.append(buffer, got);
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "cannot read " << path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::filesystem::path scratch_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "sdlab-cli-tests";
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("cli criteria emits exact json") {
  const RunResult r = run_cli("criteria --input \"" + data_file("gs.csv") + "\" --format json");
  CHECK(r.exit_code == 0);
  const CriteriaReport report = parse_criteria_json(r.output);
  CHECK(report.trace == 5);
  CHECK(report.offdiag == 4);
  CHECK(report.diagonality == 1);
  CHECK(report.sparsity == Rational(17, 25));
  CHECK(report.n_rows == 5);
  CHECK(report.ones_count == 8);
}

TEST_CASE("cli reads the same design from csv and sdl") {
  const RunResult csv = run_cli("criteria --input \"" + data_file("gs.csv") + "\" --format json");
  const RunResult sdl = run_cli("criteria --input \"" + data_file("gs.sdl") + "\" --format json");
  CHECK(csv.exit_code == 0);
  CHECK(sdl.exit_code == 0);
  CHECK(csv.output == sdl.output);
}

TEST_CASE("cli assess reports the verdict") {
  const RunResult r = run_cli("assess --input \"" + data_file("gs.csv") + "\" --format json");
  CHECK(r.exit_code == 0);
  const StandardAssessment a = parse_assessment_json(r.output);
  CHECK(a.verdict == Verdict::Standard);
  CHECK(a.rank == 5);

  const RunResult n = run_cli("assess --input \"" + data_file("ng.csv") + "\" --format json");
  CHECK(n.exit_code == 0);
  CHECK(parse_assessment_json(n.output).verdict == Verdict::Bordered);
}

TEST_CASE("cli validate exit code follows admissibility") {
  const RunResult good = run_cli("validate --input \"" + data_file("gs.csv") + "\"");
  CHECK(good.exit_code == 0);
  CHECK(good.output.find("admissible") != std::string::npos);

  const RunResult bad = run_cli("validate --input \"" + data_file("obs.csv") + "\"");
  CHECK(bad.exit_code == 1);
  CHECK(bad.output.find("E_EMPTY_ROW") != std::string::npos);
}

TEST_CASE("cli usage problems exit with 2") {
  CHECK(run_cli("criteria --input missing.csv").exit_code == 2);
  CHECK(run_cli("criteria").exit_code == 2);  // no input at all
  CHECK(run_cli("frobnicate").exit_code == 2);
  CHECK(run_cli("criteria --no-such-flag").exit_code == 2);
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("assess --input \"" + data_file("gs.csv") + "\" --bound nonsense").exit_code == 2);
  CHECK(run_cli("gen --blocks nonsense").exit_code == 2);
  CHECK(run_cli("trend --sizes x,4").exit_code == 2);
}

TEST_CASE("cli analysis failures exit with 1") {
  // sizes out of order is a legitimate request the analysis refuses
  const RunResult r = run_cli("trend --sizes 2,4 --block-size 10");
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("sparsity failed to increase") != std::string::npos);

  const RunResult g = run_cli("gen --blocks 2x2:1 --outliers 1");
  CHECK(g.exit_code == 1);
  CHECK(g.output.find("infeasible") != std::string::npos);
}

TEST_CASE("cli blocks and suggest summarize structure") {
  const RunResult b = run_cli("blocks --input \"" + data_file("gs.csv") + "\"");
  CHECK(b.exit_code == 0);
  CHECK(b.output.find("2 block(s), modular") != std::string::npos);
  CHECK(b.output.find("block 1 (3x3): square, well-composed") != std::string::npos);

  const RunResult s = run_cli("suggest --input \"" + data_file("ng.csv") + "\"");
  CHECK(s.exit_code == 0);
  CHECK(s.output.find("candidate 1: 4 block(s), 0 outlier(s)") != std::string::npos);
  CHECK(s.output.find("candidate 2: 5 block(s), 1 outlier(s)") != std::string::npos);
  CHECK(s.output.find("candidate 3: 6 block(s), 3 outlier(s)") != std::string::npos);

  const RunResult capped =
      run_cli("suggest --input \"" + data_file("ng.csv") + "\" --max-blocks 4");
  CHECK(capped.output.find("1 candidate partition(s)") != std::string::npos);
}

TEST_CASE("cli reorder reports canonical diagonality") {
  const RunResult r = run_cli("reorder --input \"" + data_file("ng.csv") + "\" --format json");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("\"diagonality\": -1") != std::string::npos);
}

TEST_CASE("cli diagnose uses a partition file") {
  const RunResult r = run_cli("diagnose --input \"" + data_file("ng.csv") + "\" --partition \"" +
                              data_file("ng_partition.json") + "\"");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("6 block(s), 3 outlier(s)") != std::string::npos);
  CHECK(r.output.find("outlier (F1, S4)") != std::string::npos);
}

TEST_CASE("cli compare explains the ranking") {
  const RunResult r = run_cli("compare --input \"" + data_file("gs.csv") + "\" --with \"" +
                              data_file("ng.csv") + "\"");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("gs vs ng: left wins (higher diagonality)") != std::string::npos);
}

TEST_CASE("cli add sums structor columns") {
  const RunResult r = run_cli("add --input \"" + data_file("obs.csv") +
                              "\" --axis structors --vectors 'Concrete observer,Observer'");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("Update observers") != std::string::npos);
  CHECK(r.output.find("2") != std::string::npos);
}

TEST_CASE("cli gen is deterministic per seed") {
  const std::string args = "gen --blocks 4x4:1/2,3x3:1/3 --outliers 2 --seed 11 --format json";
  const RunResult first = run_cli(args);
  const RunResult second = run_cli(args);
  CHECK(first.exit_code == 0);
  CHECK(first.output == second.output);
  CHECK(first.output.find("generated system") != std::string::npos);

  const RunResult other = run_cli("gen --blocks 4x4:1/2,3x3:1/3 --outliers 2 --seed 12 --format json");
  CHECK(other.output != first.output);
}

TEST_CASE("cli collapse and expand round-trip through files") {
  const auto dir = scratch_dir();
  const std::string hierarchy = (dir / "hierarchy.json").string();
  const std::string collapsed_csv = (dir / "collapsed.csv").string();
  const std::string expanded_csv = (dir / "expanded.csv").string();
  std::filesystem::remove(hierarchy);

  const RunResult collapse = run_cli(
      "collapse --input \"" + data_file("gs.csv") +
      "\" --label Graphics"
      " --rows 'Calculate-Circle-Functions,Calculate-Triangle-Functions,Translate-Shape'"
      " --cols 'Circle,Triangle,Shape'"
      " --hierarchy \"" + hierarchy + "\" --output \"" + collapsed_csv + "\"");
  CHECK(collapse.exit_code == 0);
  CHECK(collapse.output.find("collapsed \"Graphics\"") != std::string::npos);

  const ModularityMatrix collapsed = parse_csv(slurp(collapsed_csv));
  CHECK(collapsed.functional_count() == 3);
  CHECK(collapsed.functional_names().front() == "Graphics");

  const RunResult expand = run_cli("expand --input \"" + collapsed_csv +
                                   "\" --label Graphics --hierarchy \"" + hierarchy +
                                   "\" --output \"" + expanded_csv + "\"");
  CHECK(expand.exit_code == 0);
  CHECK(parse_csv(slurp(expanded_csv)) == testdata::gs());

  // the stack is spent: a second expansion has nothing to undo
  const RunResult spent = run_cli("expand --input \"" + collapsed_csv +
                                  "\" --label Graphics --hierarchy \"" + hierarchy + "\"");
  CHECK(spent.exit_code == 1);

  const RunResult unknown = run_cli(
      "collapse --input \"" + data_file("gs.csv") +
      "\" --label X --rows 'No-Such-Functional' --cols 'Circle'");
  CHECK(unknown.exit_code == 2);
  CHECK(unknown.output.find("unknown functional") != std::string::npos);
}

TEST_CASE("cli coalesce merges duplicate rows") {
  const auto dir = scratch_dir();
  const std::string dup_csv = (dir / "dup.csv").string();
  const std::string merged_csv = (dir / "merged.csv").string();
  {
    std::ofstream out(dup_csv, std::ios::binary);
    out << "pair,S1,S2\nattach,1,0\ndetach,1,0\nother,0,1\n";
  }
  const RunResult r = run_cli("coalesce --input \"" + dup_csv +
                              "\" --axis functionals --output \"" + merged_csv + "\"");
  CHECK(r.exit_code == 0);
  const ModularityMatrix merged = parse_csv(slurp(merged_csv));
  CHECK(merged.functional_count() == 2);
  CHECK(merged.functional_names().front() == "attach+detach");
}
