#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "seba/cli.hpp"

namespace {

namespace fs = std::filesystem;

struct Result {
  int status = -1;
  std::string out;
};

// Runs the built binary through the shell; stderr is discarded.
Result lab(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + std::string(SEBA_LAB_PATH) + " " + args + " 2>/dev/null";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int st = pclose(pipe);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("seba_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

TEST_F(CliTest, SieveListsRepresentableSet) {
  const auto r = lab("sieve --x-max 1000");
  ASSERT_EQ(r.status, 0);
  std::istringstream is(r.out);
  std::string line;
  std::vector<std::string> body;
  while (std::getline(is, line))
    if (!line.empty() && line[0] != '#') body.push_back(line);
  ASSERT_GT(body.size(), 6u);
  EXPECT_EQ(body[0], "n,r2,omega1");
  EXPECT_EQ(body[1], "0,1,0");
  EXPECT_EQ(body[2], "1,4,0");
  EXPECT_EQ(body[3], "2,4,0");
  EXPECT_EQ(body[4], "4,4,0");
  EXPECT_EQ(body[5], "5,8,1");
  // 1000 = 2^3·5^3 has r2 = 4·4 = 16.
  EXPECT_EQ(body.back(), "1000,16,1");
}

TEST_F(CliTest, EpsteinAtSquareFormMatchesZetaTimesBeta) {
  const auto r = lab("epstein --a 1 --s 2");
  ASSERT_EQ(r.status, 0);
  const auto doc = seba::json::parse(r.out);
  const double catalan = 0.915965594177219015054603514932;
  const double oracle = 4.0 * (M_PI * M_PI / 6.0) * catalan;
  EXPECT_NEAR(doc.at("result").at("value").get<double>(), oracle, 1e-12);
  EXPECT_LT(doc.at("result").at("certified_error").get<double>(), 1e-10);
  EXPECT_EQ(doc.at("config").at("command"), "epstein");
  EXPECT_EQ(doc.at("config").at("version"), seba::kVersion);
}

TEST_F(CliTest, UnknownFlagIsValidationErrorWithoutOutput) {
  const auto out = dir_ / "x.csv";
  const auto r = lab("sieve --x-max 10 --bogus -o " + out.string());
  EXPECT_EQ(r.status, 2);
  EXPECT_FALSE(fs::exists(out));
  EXPECT_TRUE(fs::is_empty(dir_));
}

TEST_F(CliTest, BadRangesAreValidationErrors) {
  const auto out = dir_ / "y.json";
  for (const std::string args :
       {"tail --T 100 --q 0.5", "tail --T 100 --g-exponent 0.95", "spectrum --x-min 50 --x-max 10",
        "spectrum --mode medium", "epstein --s 1", "epstein --a -1", "epstein --method direct --s 0.5",
        "exponents --normalization bogus", "moments --q 2,1.5", "symmetry --q 0.5", "spectrum --x-max 100 --table-max 10"}) {
    const auto r = lab(args + " -o " + out.string());
    EXPECT_EQ(r.status, 2) << args;
    EXPECT_FALSE(fs::exists(out)) << args;
  }
  EXPECT_EQ(lab("sieve -o " + (dir_ / "no" / "such" / "dir.csv").string()).status, 2);
  EXPECT_EQ(lab("").status, 2);
}

TEST_F(CliTest, ComputationErrorExitsOneWithoutOutput) {
  // Gaps shrink under weak coupling, so the fitted alpha is negative.
  const auto out = dir_ / "e.json";
  const auto r = lab("exponents --x-max 3000 --normalization asymptotic -o " + out.string());
  EXPECT_EQ(r.status, 1);
  EXPECT_FALSE(fs::exists(out));
  EXPECT_TRUE(fs::is_empty(dir_));
}

TEST_F(CliTest, ReplayReproducesEveryReportBitExactly) {
  for (const std::string args :
       {"sieve --x-max 300", "spectrum --x-max 400 --mode strong --beta-c 0.5", "moments --x-max 120 --q 1.25,2",
        "moments --x-max 60 --format json", "tail --T 300 --q 1,1.5", "epstein --a 1.2 --s 0.25 --format csv",
        "symmetry --a 1,1.2 --q 0.15,0.35", "exponents --x-max 3000 --normalization weak --reduce-units --min-block 8"}) {
    const auto first = dir_ / "first.txt";
    const auto second = dir_ / "second.txt";
    ASSERT_EQ(lab(args + " -o " + first.string()).status, 0) << args;
    ASSERT_EQ(lab("--replay " + first.string() + " -o " + second.string()).status, 0) << args;
    EXPECT_EQ(slurp(first), slurp(second)) << args;
  }
}

TEST_F(CliTest, ThreadCountDoesNotChangeReports) {
  const std::string args = "exponents --x-max 3000 --normalization weak --min-block 8";
  const auto one = lab(args, "SEBA_THREADS=1");
  const auto four = lab(args, "SEBA_THREADS=4");
  ASSERT_EQ(one.status, 0);
  EXPECT_EQ(one.out, four.out);
}

TEST_F(CliTest, ExponentReportEchoesResolvedConfig) {
  const auto r = lab("exponents --x-max 3000 --normalization weak --min-block 8");
  ASSERT_EQ(r.status, 0);
  const auto doc = seba::json::parse(r.out);
  const auto& cfg = doc.at("config");
  EXPECT_EQ(cfg.at("normalization"), "weak");
  EXPECT_EQ(cfg.at("x_hi"), "inf");
  EXPECT_GE(cfg.at("table_max").get<std::int64_t>(), 1'000'000);
  EXPECT_EQ(cfg.at("q").size(), 4u);
  EXPECT_TRUE(doc.at("result").contains("d_hat"));
}

TEST(CliConfig, JsonRoundTripPreservesEveryEchoedField) {
  using seba::cli::Command;
  for (auto cmd : {Command::sieve, Command::spectrum, Command::moments, Command::exponents, Command::tail,
                   Command::epstein, Command::symmetry}) {
    seba::cli::RunConfig c;
    c.command = cmd;
    c.q_grid = cmd == Command::symmetry ? std::vector<double>{0.1, 0.3} : std::vector<double>{0.7, 1.1};
    c.theta = 0.1 + 0.2;
    c.x_hi = 12345.678;
    c.a_list = {1.3};
    c.s = 2.5;
    seba::cli::resolve(c);
    const auto j = seba::cli::to_json(c);
    EXPECT_EQ(seba::cli::to_json(seba::cli::from_json(seba::json::parse(j.dump()))), j) << to_string(cmd);
  }
}

TEST(CliConfig, ValidationCatchesMalformedConfig) {
  EXPECT_THROW(seba::cli::from_json(seba::json{{"command", "dance"}}), seba::cli::ValidationError);
  EXPECT_THROW(seba::cli::from_json(seba::json{{"command", "sieve"}, {"x_max", "big"}}), seba::cli::ValidationError);
  seba::cli::RunConfig c;
  c.command = seba::cli::Command::epstein;
  c.format = "xml";
  seba::cli::resolve(c);
  EXPECT_THROW(seba::cli::validate(c), seba::cli::ValidationError);
}

}  // namespace
