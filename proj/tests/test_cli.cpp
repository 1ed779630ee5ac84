#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "absnorm/commands.hpp"
#include "absnorm/matrix_file.hpp"
#include "absnorm/random.hpp"

using namespace absnorm;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "absnorm");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

// Value of the first "key: value" line.
std::string field(const std::string& text, const std::string& key) {
  std::istringstream in(text);
  std::string line;
  const std::string prefix = key + ": ";
  while (std::getline(in, line)) {
    if (line.rfind(prefix, 0) == 0) return line.substr(prefix.size());
  }
  return {};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("absnorm_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const auto path = (dir_ / name).string();
    std::ofstream(path) << text;
    return path;
  }
  std::string write(const std::string& name, const MatrixFile& file) {
    return write(name, to_text(file));
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

MatrixFile pair_file(ComplexMatrix a, ComplexMatrix b) {
  MatrixFile f;
  f.n = a.order();
  f.matrices.emplace("A", std::move(a));
  f.matrices.emplace("B", std::move(b));
  return f;
}

}  // namespace

TEST_F(CliTest, CheckTheoremOnEqualPair) {
  const auto a = ComplexMatrix::diagonal({1.0, 0.0});
  const auto r = run_cli({"check", write("ab.json", pair_file(a, a)), "--ineq", "theorem"});
  EXPECT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_NEAR(std::stod(field(r.out, "ratio")), 1.0, 1e-12);
  EXPECT_EQ(field(r.out, "verdict"), "satisfied");
}

TEST_F(CliTest, CheckTheoremOnCanonicalPair) {
  const auto [a, b] = canonical_pair(std::acos(std::numbers::sqrt2 - 1.0));
  const auto r = run_cli({"check", write("ab.json", pair_file(a, b)), "--ineq", "theorem"});
  EXPECT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_NEAR(std::stod(field(r.out, "ratio")), 1.0986841, 1e-7);
}

TEST_F(CliTest, CheckChainPrintsStages) {
  const auto r = run_cli({"check", write("ab.json", pair_file(random_ginibre(3, 1), random_ginibre(3, 2))),
                          "--ineq", "chain"});
  EXPECT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_FALSE(field(r.out, "q3").empty());
  EXPECT_NE(r.out.find("chain q3 = "), std::string::npos);
}

TEST_F(CliTest, CheckLemma1UsesFileWeight) {
  MatrixFile f;
  f.n = 2;
  f.t = 2.0;
  f.matrices.emplace("S", random_ginibre(2, 3));
  f.matrices.emplace("T", random_ginibre(2, 4));
  const auto r = run_cli({"check", write("st.json", f), "--ineq", "lemma1"});
  EXPECT_EQ(r.code, cli::kExitOk) << r.err;
  const auto report = lemma1_certify(f.at("S"), f.at("T"), 2.0);
  EXPECT_EQ(field(r.out, "rhs"), cli::format_double(report.rhs));
  const auto r2 = run_cli({"check", path("st.json"), "--ineq", "lemma1", "--t", "0.5"});
  EXPECT_EQ(field(r2.out, "rhs"), cli::format_double(lemma1_certify(f.at("S"), f.at("T"), 0.5).rhs));
}

TEST_F(CliTest, NonSquareFileIsInputError) {
  const auto p = write("bad.json", R"({"n": 2, "matrices": {"A": [[[1,0],[0,0]]], "B": [[[1,0],[0,0]],[[0,0],[0,0]]]}})");
  const auto r = run_cli({"check", p, "--ineq", "theorem"});
  EXPECT_EQ(r.code, cli::kExitInputError);
  EXPECT_FALSE(r.err.empty());
}

TEST_F(CliTest, MalformedFileIsInputError) {
  EXPECT_EQ(run_cli({"check", write("bad.json", "{not json"), "--ineq", "theorem"}).code,
            cli::kExitInputError);
  EXPECT_EQ(run_cli({"check", path("missing.json"), "--ineq", "theorem"}).code, cli::kExitInputError);
  const auto nonfinite = write("nan.json", R"({"n": 1, "matrices": {"A": [[["nan",0]]], "B": [[[1,0]]]}})");
  EXPECT_EQ(run_cli({"check", nonfinite, "--ineq", "theorem"}).code, cli::kExitInputError);
}

TEST_F(CliTest, MissingMatrixIsInputError) {
  MatrixFile f;
  f.n = 2;
  f.matrices.emplace("A", ComplexMatrix::identity(2));
  const auto r = run_cli({"check", write("a.json", f), "--ineq", "theorem"});
  EXPECT_EQ(r.code, cli::kExitInputError);
  EXPECT_NE(r.err.find("B"), std::string::npos);
}

TEST_F(CliTest, NonPsdPreconditionNamed) {
  MatrixFile f;
  f.n = 2;
  f.matrices.emplace("Q", ComplexMatrix::identity(2));
  f.matrices.emplace("X", ComplexMatrix::diagonal({1.0, -1.0}));
  f.matrices.emplace("Y", ComplexMatrix::identity(2));
  const auto r = run_cli({"check", write("qxy.json", f), "--ineq", "lemma2"});
  EXPECT_EQ(r.code, cli::kExitInputError);
  EXPECT_NE(r.err.find("X is not positive semidefinite"), std::string::npos);
  EXPECT_EQ(r.err.find("Y is not"), std::string::npos);
}

TEST_F(CliTest, NonPositiveWeightIsInputError) {
  const auto a = ComplexMatrix::identity(2);
  EXPECT_EQ(run_cli({"check", write("ab.json", pair_file(a, a)), "--ineq", "chain", "--t", "0"}).code,
            cli::kExitInputError);
}

TEST_F(CliTest, UnknownInequalityAndUsage) {
  const auto a = ComplexMatrix::identity(2);
  EXPECT_EQ(run_cli({"check", write("ab.json", pair_file(a, a)), "--ineq", "nope"}).code,
            cli::kExitInputError);
  EXPECT_EQ(run_cli({}).code, cli::kExitInputError);
  EXPECT_EQ(run_cli({"frobnicate"}).code, cli::kExitInputError);
  EXPECT_EQ(run_cli({"--help"}).code, cli::kExitOk);
}

TEST_F(CliTest, FuzzRejectsBadCounts) {
  EXPECT_EQ(run_cli({"fuzz", "--ineq", "theorem", "--trials", "0", "--n-max", "3", "--seed", "1"}).code,
            cli::kExitInputError);
  EXPECT_EQ(run_cli({"fuzz", "--ineq", "theorem", "--trials", "5", "--n-max", "0", "--seed", "1"}).code,
            cli::kExitInputError);
}

TEST_F(CliTest, FuzzIsReproducible) {
  for (const char* ineq : {"lemma1", "lemma2", "theorem", "chain"}) {
    const std::vector<std::string> args{"fuzz", "--ineq", ineq, "--trials", "200", "--n-max", "4", "--seed", "99"};
    const auto a = run_cli(args);
    const auto b = run_cli(args);
    EXPECT_EQ(a.code, cli::kExitOk) << ineq << a.out;
    EXPECT_EQ(a.out, b.out) << ineq;
    EXPECT_EQ(field(a.out, "violations"), "0");
    EXPECT_GT(std::stod(field(a.out, "min_relative_slack")), -1e-9);
  }
  const auto t = run_cli({"fuzz", "--ineq", "theorem", "--trials", "200", "--n-max", "4", "--seed", "99"});
  EXPECT_LE(std::stod(field(t.out, "max_ratio")), 1.0986841135 + 1e-9);
}

TEST_F(CliTest, SearchRejectsBadP) {
  EXPECT_EQ(run_cli({"search", "--p", "0.5"}).code, cli::kExitInputError);
  EXPECT_EQ(run_cli({"search", "--p", "abc"}).code, cli::kExitInputError);
  EXPECT_EQ(run_cli({"search", "--family", "weird"}).code, cli::kExitInputError);
}

TEST_F(CliTest, CanonicalSearchWritesCsv) {
  const auto csv = path("starts.csv");
  const auto r = run_cli({"search", "--family", "canonical", "--starts", "4", "--seed", "3", "--out", csv});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_LE(std::abs(std::stod(field(r.out, "gap"))), 1e-6);
  std::ifstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "start_index,best_ratio,evaluations");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 4);
}

TEST_F(CliTest, SearchAtInfinityIsLabeledEmpirical) {
  const auto r = run_cli({"search", "--p", "inf", "--starts", "2", "--seed", "1"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_EQ(field(r.out, "p"), "inf");
  EXPECT_NE(field(r.out, "note").find("empirical"), std::string::npos);
  EXPECT_TRUE(field(r.out, "proven_bound").empty());
}

TEST_F(CliTest, SweepCsvMatchesClosedForm) {
  const auto csv = path("sweep.csv");
  const auto r = run_cli({"sweep", "--grid-points", "1001", "--out", csv});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  std::ifstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "alpha,ratio,closed_form_ratio,abs_difference");
  int rows = 0;
  while (std::getline(in, line)) {
    double alpha, ratio, closed, diff;
    char c;
    std::istringstream row(line);
    row >> alpha >> c >> ratio >> c >> closed >> c >> diff;
    if (rows == 0) {
      EXPECT_EQ(alpha, 0.0);
      EXPECT_NEAR(ratio, 1.0, 1e-12);
    }
    EXPECT_LE(diff, 1e-10);
    ++rows;
  }
  EXPECT_EQ(rows, 1001);
}

TEST_F(CliTest, SweepUnwritablePath) {
  const auto r = run_cli({"sweep", "--grid-points", "10", "--out", path("no/such/dir/x.csv")});
  EXPECT_EQ(r.code, cli::kExitInputError);
  EXPECT_EQ(run_cli({"sweep", "--grid-points", "1", "--out", path("x.csv")}).code, cli::kExitInputError);
}

TEST_F(CliTest, ReplayRoundTripIsBitIdentical) {
  MatrixFile f;
  f.n = 3;
  f.t = 0.1 + 0.2;
  f.matrices.emplace("S", random_ginibre(3, 5));
  f.matrices.emplace("T", random_ginibre(3, 6));
  const auto p = write("replay.json", f);
  const MatrixFile g = load_matrix_file(p);
  EXPECT_EQ(g.n, f.n);
  EXPECT_EQ(g.t, f.t);
  EXPECT_EQ(g.at("S"), f.at("S"));
  EXPECT_EQ(g.at("T"), f.at("T"));
  EXPECT_EQ(to_text(g), to_text(f));
}

TEST(CliHelpers, ExitCodeForViolation) {
  auto ok = make_inequality_report("x", 1.0, 2.0);
  EXPECT_EQ(cli::exit_code_for(ok), cli::kExitOk);
  auto bad = make_inequality_report("x", 2.0, 1.0);
  EXPECT_EQ(cli::exit_code_for(bad), cli::kExitViolation);
  ok.steps.push_back(bad);
  EXPECT_EQ(cli::exit_code_for(ok), cli::kExitViolation);
}

TEST(CliHelpers, PrintReportFields) {
  std::ostringstream out;
  cli::print_report(out, make_inequality_report("demo", 1.0, 2.0));
  EXPECT_EQ(field(out.str(), "label"), "demo");
  EXPECT_EQ(field(out.str(), "slack"), "1");
  EXPECT_EQ(field(out.str(), "verdict"), "satisfied");
}

TEST(CliHelpers, ParseP) {
  EXPECT_EQ(cli::parse_p("2"), 2.0);
  EXPECT_EQ(cli::parse_p("inf"), std::numeric_limits<double>::infinity());
  EXPECT_EQ(cli::parse_p("Infinity"), std::numeric_limits<double>::infinity());
  EXPECT_FALSE(cli::parse_p("2x").has_value());
  EXPECT_FALSE(cli::parse_p("").has_value());
  EXPECT_FALSE(cli::parse_p("nan").has_value());
  EXPECT_EQ(cli::format_double(0.1), "0.10000000000000001");
}
