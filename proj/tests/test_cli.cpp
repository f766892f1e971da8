#include <gtest/gtest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "lscc/io.hpp"

namespace fs = std::filesystem;
using lscc::Json;

namespace {

struct Result {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("lscc_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  Result run(const std::string& args, const std::string& env = "unset LSCC_SEED;") {
    const std::string cmd = "cd '" + dir_.string() + "' && " + env + " '" + LSCC_BIN + "' " + args +
                            " > stdout.txt 2> stderr.txt";
    const int status = std::system(cmd.c_str());
    Result r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(dir_ / "stdout.txt");
    r.err = slurp(dir_ / "stderr.txt");
    return r;
  }

  fs::path path(const std::string& name) const { return dir_ / name; }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, AnalyzeConnectedToySignal) {
  const Result r = run("analyze --scheme toy --signal 1,2,3,4 --trials 200 --out report.json");
  EXPECT_EQ(r.code, 0) << r.err;
  const Json j = lscc::readJsonFile(path("report.json").string());
  EXPECT_EQ(j["verdict"], "retrievable-by-connectivity");
  EXPECT_TRUE(j["bound"].is_number());
  EXPECT_TRUE(j["boundSatisfied"].get<bool>());
  EXPECT_TRUE(j.contains("provenance"));
  EXPECT_TRUE(fs::exists(path("report.json.manifest.json")));
}

TEST_F(Cli, AnalyzeDisconnectedWarns) {
  const Result r = run("analyze --scheme toy --signal 1,2,0,1 --trials 200 --out report.json");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.err.find("warning"), std::string::npos) << r.err;
  const Json j = lscc::readJsonFile(path("report.json").string());
  EXPECT_EQ(j["verdict"], "inconclusive");
  EXPECT_EQ(j["bound"], "inf");
}

TEST_F(Cli, InputErrorsExitOne) {
  EXPECT_EQ(run("analyze --scheme missing.json").code, 1);
  EXPECT_EQ(run("analyze --scheme toy --signal 1,2,3").code, 1);
  EXPECT_EQ(run("analyze --scheme toy --signal 1,x,3,4").code, 1);
  EXPECT_EQ(run("analyze --no-such-flag").code, 1);
  EXPECT_EQ(run("").code, 1);
  {
    std::ofstream bad(path("bad.json"));
    bad << "{\"format\": \"lscc-scheme\", ";
  }
  EXPECT_EQ(run("validate --scheme bad.json").code, 1);
  EXPECT_EQ(run("report --in bad.json").code, 1);
  EXPECT_EQ(run("--help").code, 0);
}

TEST_F(Cli, ValidateBuiltins) {
  EXPECT_EQ(run("validate --scheme toy --trials 200").code, 0);
  EXPECT_EQ(run("validate --scheme windowed --a 2 --L 8 --trials 200").code, 0);
  EXPECT_EQ(run("validate --scheme shiftinv --N 3 --R 8 --trials 100").code, 0);
}

TEST_F(Cli, CorruptedEdgeConstantFailsWithWitness) {
  ASSERT_EQ(run("validate --scheme toy --trials 50 --save-scheme toy.json").code, 0);
  Json s = lscc::readJsonFile(path("toy.json").string());
  s["constants"]["C1"] = s["constants"]["C1"].get<double>() * 0.01;
  lscc::writeJsonFile(path("corrupt.json").string(), s);
  const Result r = run("validate --scheme corrupt.json --trials 200 --out v.json");
  EXPECT_EQ(r.code, 2);
  const Json v = lscc::readJsonFile(path("v.json").string());
  bool found = false;
  for (const auto& a : v["axioms"])
    if (a["axiom"] == "edge-domination") {
      found = true;
      EXPECT_FALSE(a["passed"].get<bool>());
      EXPECT_TRUE(a.contains("witness"));
      EXPECT_FALSE(a["witness"]["f"].empty());
    }
  EXPECT_TRUE(found);
}

TEST_F(Cli, WindowedSweepReportsSlope) {
  const Result r = run("sweep windowed --a 1 --Lmin 8 --Lmax 64 --field complex --trials 20 --out w.csv");
  ASSERT_EQ(r.code, 0) << r.err;
  const Json m = lscc::readJsonFile(path("w.csv.manifest.json").string());
  EXPECT_NEAR(m["summary"]["boundSlope"].get<double>(), 1.0, 0.1);
  EXPECT_TRUE(m["summary"]["pass"].get<bool>());
  const std::string csv = slurp(path("w.csv"));
  EXPECT_EQ(csv.rfind("L,d,bound,empirical_ratio,adversarial_ratio,", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
}

TEST_F(Cli, ShiftInvSweep) {
  const Result r = run("sweep shiftinv --kind exp --beta 1 --Rmin 8 --Rmax 64 --out d.csv");
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string csv = slurp(path("d.csv"));
  EXPECT_EQ(csv.rfind("R,vertices,cheeger,reference,pass\n", 0), 0u);
  EXPECT_EQ(csv.find(",0\n"), std::string::npos);
  EXPECT_EQ(run("sweep shiftinv --kind poly --beta 0.5 --out d.csv").code, 1);
}

TEST_F(Cli, EmptyRangeExitsOne) {
  EXPECT_EQ(run("sweep windowed --Lmin 64 --Lmax 8 --out w.csv").code, 1);
  EXPECT_EQ(run("sweep shiftinv --Rmin 64 --Rmax 8 --out d.csv").code, 1);
}

TEST_F(Cli, GraphDump) {
  ASSERT_EQ(run("graph --scheme toy --signal 1,2,0,1 --out g.json").code, 0);
  const Json g = lscc::readJsonFile(path("g.json").string());
  EXPECT_FALSE(g["connected"].get<bool>());
  EXPECT_EQ(g["cheeger"]["lower"], 0.0);
}

TEST_F(Cli, ReportRendersSavedAnalysis) {
  ASSERT_EQ(run("analyze --scheme toy --signal 1,2,3,4 --trials 100 --out r.json").code, 0);
  const Result text = run("report --in r.json");
  EXPECT_EQ(text.code, 0);
  EXPECT_NE(text.out.find("retrievable-by-connectivity"), std::string::npos);
  const Result json = run("report --in r.json --format json");
  EXPECT_EQ(json.code, 0);
  EXPECT_EQ(Json::parse(json.out)["verdict"], "retrievable-by-connectivity");

  Json r = lscc::readJsonFile(path("r.json").string());
  r["boundSatisfied"] = false;
  lscc::writeJsonFile(path("violated.json").string(), r);
  EXPECT_EQ(run("report --in violated.json").code, 2);
}

TEST_F(Cli, SeedResolution) {
  ASSERT_EQ(run("analyze --scheme toy --signal random --trials 50 --out a.json", "LSCC_SEED=42").code, 0);
  ASSERT_EQ(run("--seed 42 analyze --scheme toy --signal random --trials 50 --out b.json").code, 0);
  ASSERT_EQ(run("analyze --scheme toy --signal random --trials 50 --out c.json").code, 0);
  EXPECT_EQ(slurp(path("a.json")), slurp(path("b.json")));
  EXPECT_NE(slurp(path("a.json")), slurp(path("c.json")));
  const Json m = lscc::readJsonFile(path("a.json.manifest.json").string());
  EXPECT_EQ(m["config"]["seed"], 42);
  EXPECT_EQ(m["config"]["seedSource"], "env");
  EXPECT_EQ(run("analyze --scheme toy", "LSCC_SEED=abc").code, 1);
}

TEST_F(Cli, ByteReproducible) {
  for (int i = 0; i < 2; ++i) {
    const std::string n = std::to_string(i);
    ASSERT_EQ(run("--seed 9 sweep windowed --a 1 --Lmin 8 --Lmax 16 --trials 20 --out w" + n + ".csv").code, 0);
    ASSERT_EQ(run("--seed 9 analyze --scheme windowed --a 1 --L 6 --field complex --signal random --trials 50 --eta 0.01 "
                  "--eta-trials 2 --noise-out n" + n + ".csv --out a" + n + ".json").code, 0);
  }
  for (const char* stem : {"w%.csv", "n%.csv", "a%.json"}) {
    std::string a = stem, b = stem;
    a.replace(a.find('%'), 1, "0");
    b.replace(b.find('%'), 1, "1");
    EXPECT_EQ(lscc::fileHash(path(a).string()), lscc::fileHash(path(b).string())) << stem;
  }
}

TEST_F(Cli, GoldenOutputs) {
  const fs::path golden = LSCC_GOLDEN_DIR;
  ASSERT_EQ(run("--seed 3 analyze --scheme toy --signal 1,2,3,4 --trials 100 --out analyze_toy.json").code, 0);
  ASSERT_EQ(run("--seed 3 sweep windowed --a 1 --Lmin 8 --Lmax 32 --trials 20 --out sweep_windowed.csv").code, 0);
  ASSERT_EQ(run("sweep shiftinv --kind poly --beta 2 --Rmin 16 --Rmax 128 --out sweep_shiftinv.csv").code, 0);
  ASSERT_EQ(run("graph --scheme toy --signal 1,2,3,4 --out graph_toy.json").code, 0);
  for (const char* name : {"analyze_toy.json", "sweep_windowed.csv", "sweep_shiftinv.csv", "graph_toy.json"})
    EXPECT_EQ(slurp(path(name)), slurp(golden / name)) << name;
}
