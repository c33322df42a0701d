#include <gtest/gtest.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kCli = CONC_CLI_PATH;
const std::string kData = CONC_TEST_DATA;

class Cli : public ::testing::Test {
protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / ("conc_cli_" + std::string(info->name()) + "_" + std::to_string(::getpid()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int run(const std::string& args) {
    const std::string cmd = kCli + " " + args + " >" + (dir_ / "stdout.txt").string() + " 2>" +
                            (dir_ / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  std::string read(const fs::path& p) const {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  std::string out() const { return (dir_ / "out").string(); }
  fs::path dir_;
};

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_F(Cli, RankPajekWritesLeaderReport) {
  ASSERT_EQ(run("rank --format pajek --in " + kData + "/web.net --out " + out()), 0);
  const auto report = read(fs::path(out()) / "leader_report.tsv");
  EXPECT_EQ(count_lines(report), 6u);  // header + 5 species
  for (const auto* name : {"scores_con.tsv", "scores_pagerank.tsv", "scores_jaccard.tsv", "scores_closeness-strict.tsv"})
    EXPECT_TRUE(fs::exists(fs::path(out()) / name)) << name;
  EXPECT_NE(read(dir_ / "stderr.txt").find("warning"), std::string::npos);
}

TEST_F(Cli, RankClosenessModeFlag) {
  ASSERT_EQ(run("rank --format votes --in " + kData + "/votes_four.csv --closeness wf --metric closeness --out " + out()), 0);
  EXPECT_TRUE(fs::exists(fs::path(out()) / "scores_closeness-wf.tsv"));
  const auto report = read(fs::path(out()) / "leader_report.tsv");
  // p2 only reaches p4 and p3: strict 0, wf (2/3)*(2/3).
  EXPECT_NE(report.find("p2\t0\t1\t0.444444444444444"), std::string::npos) << report;
}

TEST_F(Cli, MalformedInputExitsTwoWithoutOutputs) {
  EXPECT_EQ(run("rank --format pajek --in " + kData + "/web_bad.net --out " + out()), 2);
  EXPECT_FALSE(fs::exists(out()));
  EXPECT_NE(read(dir_ / "stderr.txt").find("line 7"), std::string::npos);
}

TEST_F(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run("rank --format csv --in " + kData + "/web.net"), 2);
  EXPECT_EQ(run("rank --format pajek"), 2);
  EXPECT_EQ(run(""), 2);
  EXPECT_EQ(run("compare --format events --in " + kData + "/conflict.csv --metric con --out " + out()), 2);
  EXPECT_EQ(run("eval --format pajek --in " + kData + "/web.net --out " + out()), 2);
}

TEST_F(Cli, CompareWritesSpearmanInRange) {
  ASSERT_EQ(run("compare --format events --in " + kData + "/conflict.csv --metric con --metric pagerank --svg --out " +
                out()),
            0);
  const auto j = nlohmann::json::parse(read(fs::path(out()) / "slope_graph.json"));
  const double rho = j["spearman"];
  EXPECT_GE(rho, -1.0);
  EXPECT_LE(rho, 1.0);
  EXPECT_EQ(j["rows"].size(), 7u);  // top-15 clamps to the 7 actors
  EXPECT_TRUE(fs::exists(fs::path(out()) / "slope_graph.svg"));
  EXPECT_TRUE(fs::exists(fs::path(out()) / "slope_graph.tsv"));
}

TEST_F(Cli, CompareMetricWithItself) {
  ASSERT_EQ(run("compare --format pajek --in " + kData + "/web.net --metric con --metric con --out " + out()), 0);
  const auto j = nlohmann::json::parse(read(fs::path(out()) / "slope_graph.json"));
  EXPECT_EQ(j["spearman"], 1.0);
  for (const auto& row : j["rows"]) EXPECT_EQ(row["class"], "black");
}

TEST_F(Cli, EvalTable) {
  std::string ins;
  for (int i = 1; i <= 6; ++i) ins += " --in " + kData + "/corpus/season" + std::to_string(i) + ".csv";
  ASSERT_EQ(run("eval --format votes" + ins + " --k 3 --k 5 --out " + out()), 0);
  const auto tsv = read(fs::path(out()) / "hit_rates.tsv");
  EXPECT_EQ(tsv.substr(0, tsv.find('\n')), "k\tcon\tpagerank\tjaccard\trandom_set");
  EXPECT_EQ(count_lines(tsv), 3u);
  const auto j = nlohmann::json::parse(read(fs::path(out()) / "evaluation.json"));
  EXPECT_EQ(j["seasons_evaluated"], 6);
}

TEST_F(Cli, EvalSingleSeasonRatesAreAllOrNothing) {
  ASSERT_EQ(run("eval --format votes --in " + kData + "/votes_four.csv --k 1 --k 3 --out " + out()), 0);
  const auto j = nlohmann::json::parse(read(fs::path(out()) / "evaluation.json"));
  for (const auto& [metric, per_k] : j["hit_rates"].items())
    for (const auto& [k, rate] : per_k.items()) EXPECT_TRUE(rate == 0.0 || rate == 100.0) << metric << " " << k;
}

TEST_F(Cli, EvalRejectsSeasonSmallerThanK) {
  EXPECT_EQ(run("eval --format votes --in " + kData + "/votes_four.csv --k 5 --out " + out()), 2);
  EXPECT_NE(read(dir_ / "stderr.txt").find("Fixture Four"), std::string::npos);
  EXPECT_FALSE(fs::exists(out()));
}

TEST_F(Cli, NonConvergenceExitsOne) {
  EXPECT_EQ(run("rank --format events --in " + kData + "/conflict.csv --metric pagerank --max-iter 1 --tol 1e-15 --out " +
                out()),
            1);
  EXPECT_FALSE(fs::exists(fs::path(out()) / "leader_report.tsv"));
}

TEST_F(Cli, Validate) {
  EXPECT_EQ(run("validate --format pajek --in " + kData + "/web.net"), 0);
  EXPECT_NE(read(dir_ / "stdout.txt").find("ok, 5 nodes"), std::string::npos);
  EXPECT_EQ(run("validate --format pajek --in " + kData + "/web.net --in " + kData + "/web_bad.net"), 2);
}

TEST_F(Cli, RepeatedRunsAreByteIdentical) {
  std::string ins;
  for (int i = 1; i <= 6; ++i) ins += " --in " + kData + "/corpus/season" + std::to_string(i) + ".csv";
  ASSERT_EQ(run("eval --format votes" + ins + " --out " + out() + "/one"), 0);
  ASSERT_EQ(run("eval --format votes" + ins + " --out " + out() + "/two"), 0);
  for (const auto* name : {"hit_rates.tsv", "evaluation.json"})
    EXPECT_EQ(read(fs::path(out()) / "one" / name), read(fs::path(out()) / "two" / name));
}
