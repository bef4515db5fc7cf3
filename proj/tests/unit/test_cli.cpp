#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "cli.hpp"
#include "splab/experiments.hpp"
#include "splab/matrix_io.hpp"

using namespace splab;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "splab");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("splab_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                         "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
    unsetenv("SPLAB_SEED");
  }
  void TearDown() override {
    fs::remove_all(dir_);
    unsetenv("SPLAB_SEED");
  }

  std::string write(const std::string& name, const std::string& content) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << content;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, EigDiagonalGivesIdentityX) {
  const std::string in = write("d.csv", "3,0,0\n0,2,0\n0,0,1\n");
  const Result r = run({"eig", "--input", in});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  const ComplexMatrix X = parse_matrix_json(j["X"].dump());
  EXPECT_EQ(X, ComplexMatrix::Identity(3, 3));
}

TEST_F(Cli, EigExample11Eigenvalues) {
  const std::string in = write("a.json", matrix_to_json(gen_example(Example11{1e-4}).A));
  const Result r = run({"eig", "--input", in});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  const double expect[] = {1.01, 0.99, 0.5};
  for (int k = 0; k < 3; ++k) {
    EXPECT_NEAR(std::stod(j["lambda"][k][0].get<std::string>()), expect[k], 1e-13);
  }
}

TEST_F(Cli, EigRoundTrip) {
  const ComplexMatrix A = gen_gaussian_perturbation(6, 1.0, 3) + ComplexMatrix::Identity(6, 6) * cd(0, 0.5);
  const std::string in = write("g.json", matrix_to_json(A));
  const Result r = run({"eig", "--input", in});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  const ComplexMatrix X = parse_matrix_json(j["X"].dump());
  const EigenDecomposition ed = eig(A);
  EXPECT_LE((X - ed.X).cwiseAbs().maxCoeff(), 1e-15);
}

TEST_F(Cli, MalformedCsvIsParseError) {
  const std::string in = write("bad.csv", "1,2\n3,x\n");
  const Result r = run({"eig", "--input", in});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("row 2"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("col 2"), std::string::npos) << r.err;
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"frobnicate"}).code, 1);
  EXPECT_EQ(run({"verify", "nonsense"}).code, 1);
  EXPECT_EQ(run({"report", "--input", "x.json"}).code, 1);
  EXPECT_EQ(run({"eig", "--input", path("missing.json")}).code, 1);
  EXPECT_EQ(run({"example", "example11", "--eps", "2"}).code, 1);
}

TEST_F(Cli, ReportZeroPerturbation) {
  const std::string in = write("a.json", matrix_to_json(gen_example(Example11{1e-4}).A));
  const std::string zero = write("z.csv", "0,0,0\n0,0,0\n0,0,0\n");
  const Result r = run({"report", "--input", in, "--perturb", "file:" + zero, "--select", "topk:2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(std::stod(j["measured_sin"].get<std::string>()), 0.0);
}

TEST_F(Cli, ReportTable1Row) {
  const std::string in = write("a.json", matrix_to_json(gen_example(Example11{1e-6}).A));
  const Result r = run({"report", "--input", in, "--perturb", "gaussian:1e-6", "--select", "topk:2", "--seed", "42"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(std::stod(j["classical_value"].get<std::string>()), 4.0e-3, 0.02 * 4.0e-3);
  const double s = std::stod(j["measured_sin"].get<std::string>());
  EXPECT_GE(s, 1e-7);
  EXPECT_LE(s, 1e-5);
}

TEST_F(Cli, VanishingGapExitsTwoAndWritesReport) {
  const std::string in = write("d.csv", "2,0\n0,1\n");
  const std::string dA = write("p.csv", "-1,0\n0,-0.5\n");
  const std::string out = path("rep.json");
  const Result r = run({"report", "--input", in, "--perturb", "file:" + dA, "--select", "topk:1", "--out", out});
  EXPECT_EQ(r.code, 2);
  ASSERT_TRUE(fs::exists(out));
  const auto j = nlohmann::json::parse(read_text_file(out));
  EXPECT_EQ(j["gap_ok"], false);
}

TEST_F(Cli, SeedFromEnvironment) {
  const std::string in = write("a.json", matrix_to_json(gen_example(Example11{1e-4}).A));
  const std::vector<std::string> base{"report", "--input", in, "--perturb", "gaussian:1e-6", "--select", "topk:2"};
  const Result def = run(base);
  auto with_seed = base;
  with_seed.insert(with_seed.end(), {"--seed", "42"});
  EXPECT_EQ(def.out, run(with_seed).out);

  setenv("SPLAB_SEED", "7", 1);
  const Result env = run(base);
  auto seven = base;
  seven.insert(seven.end(), {"--seed", "7"});
  EXPECT_EQ(env.out, run(seven).out);
  EXPECT_NE(env.out, def.out);
  // An explicit seed wins over the environment.
  EXPECT_EQ(run(with_seed).out, def.out);

  setenv("SPLAB_SEED", "abc", 1);
  EXPECT_EQ(run(base).code, 1);
}

TEST_F(Cli, ByteIdenticalOutputs) {
  const std::vector<std::string> args{"sweep", "table1", "--eps-list", "1e-2,1e-4,1e-6,1e-8,1e-10", "--norm", "1e-6",
                                      "--seed", "42", "--format", "csv"};
  const Result a = run(args);
  auto threaded = args;
  threaded.insert(threaded.end(), {"--jobs", "4"});
  const Result b = run(threaded);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  // Header plus five rows.
  EXPECT_EQ(std::count(a.out.begin(), a.out.end(), '\n'), 6);
  EXPECT_NE(a.err.find("note:"), std::string::npos);
}

TEST_F(Cli, ExampleWritesMatrix) {
  const std::string out = path("e.json");
  const Result r = run({"example", "example11", "--eps", "1e-6", "--out", out});
  ASSERT_EQ(r.code, 0) << r.err;
  const ComplexMatrix A = read_matrix_file(out);
  EXPECT_EQ(A, gen_example(Example11{1e-6}).A);
}

TEST_F(Cli, VerifySuiteAndTolerances) {
  const Result r = run({"verify", "lemma32", "--cases", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j.size(), 5u);
  for (const auto& c : j) EXPECT_EQ(c["pass"], true);
  EXPECT_EQ(run({"verify", "lemma32", "--cases", "2", "--tol", "nonsense=1"}).code, 1);
}

TEST_F(Cli, SweepTightnessReportsSlope) {
  const Result r = run({"sweep", "tightness", "--r", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("slope"), std::string::npos);
}
