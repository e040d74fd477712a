#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "montmort/cli.hpp"

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = montmort::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST(Cli, Derange) {
  EXPECT_EQ(run({"derange", "4"}).out, "9\n");
  EXPECT_EQ(run({"derange", "1"}).out, "0\n");
  EXPECT_EQ(run({"derange", "0"}).out, "1\n");
}

TEST(Cli, RankDerangeCountAndProbability) {
  EXPECT_EQ(run({"rankderange", "--ranks", "13", "--suits", "4"}).out,
            "1309302175551177162931045000259922525308763433362019257020678406144\n");
  EXPECT_EQ(run({"rankderange", "--ranks", "13", "--suits", "4", "--prob", "--truncate"}).out,
            "0.01623272746719463674\n");
  const CliResult exact =
      run({"rankderange", "--ranks", "2", "--suits", "2", "--prob", "--exact", "--digits", "4"});
  EXPECT_EQ(exact.out, "0.1667\n1/6\n");
  EXPECT_NE(run({"rankderange", "--ranks", "2", "--suits", "2", "--prob", "--count"}).code, 0);
}

TEST(Cli, PrefixProbability) {
  EXPECT_EQ(run({"prefix-prob", "--ranks", "13", "--suits", "4", "--digits", "6"}).out,
            "0.356935\n");
  EXPECT_EQ(run({"prefix-prob", "--ranks", "13", "--suits", "4", "--digits", "6",
                 "--complement"})
                .out,
            "0.643065\n");
}

TEST(Cli, LimitAndTable) {
  EXPECT_EQ(run({"limit", "--suits", "4"}).out, "0.01831563888873418029\n");
  const CliResult table = run({"table", "--max", "3", "--suits", "4", "--digits", "5"});
  EXPECT_EQ(table.code, 0);
  std::istringstream lines(table.out);
  std::string header;
  std::getline(lines, header);
  EXPECT_EQ(header, "n,p_n,abs_err_vs_limit");
  std::string line;
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  EXPECT_EQ(rows, 3);
  EXPECT_NE(table.out.find("\n1,0,0.01832\n"), std::string::npos) << table.out;
}

TEST(Cli, TreizeExact) {
  const CliResult r = run({"treize", "--ranks", "2", "--suits", "1", "--exact", "--digits", "5"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "0.33333\n1/3\n");
}

TEST(Cli, TreizeApproxNotesReliablePlaces) {
  const CliResult r = run({"treize", "--ranks", "3", "--suits", "2", "--approx", "--digits", "10"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "1.0781389691\n");  // 501671/465312
  EXPECT_NE(r.err.find("approximate"), std::string::npos);
}

TEST(Cli, TreizeDump) {
  const std::string path = temp_path("montmort_cli_dump.tsv");
  std::remove(path.c_str());
  const CliResult r = run({"treize", "--ranks", "2", "--suits", "1", "--dump", path});
  EXPECT_EQ(r.code, 0);
  std::ifstream f(path);
  std::stringstream text;
  text << f.rdbuf();
  EXPECT_NE(text.str().find("1,1\t1\t1/3\n"), std::string::npos);
  std::remove(path.c_str());
}

TEST(Cli, ErrorsGoToStderrWithEmptyStdout) {
  const std::vector<std::pair<std::vector<std::string>, int>> cases{
      {{"frobnicate"}, montmort::cli::kUsage},
      {{}, montmort::cli::kUsage},
      {{"derange"}, montmort::cli::kUsage},
      {{"derange", "-3"}, montmort::cli::kUsage},
      {{"derange-prob", "0"}, montmort::cli::kUsage},
      {{"rankderange", "--ranks", "2", "--suits", "0"}, montmort::cli::kConfig},
      {{"treize", "--ranks", "1", "--suits", "4"}, montmort::cli::kConfig},
      {{"treize", "--ranks", "2", "--suits", "0"}, montmort::cli::kConfig},
      {{"treize", "--ranks", "13", "--suits", "4", "--max-states", "1000"},
       montmort::cli::kBudget},
      {{"simulate", "--game", "treize", "--ranks", "2", "--suits", "4", "--trials", "100",
        "--seed", "1", "--round-cap", "1"},
       montmort::cli::kRoundCap},
      {{"simulate", "--game", "poker", "--ranks", "2", "--suits", "4", "--trials", "10",
        "--seed", "1"},
       montmort::cli::kUsage},
      {{"treize", "--ranks", "2", "--suits", "1", "--dump", "/nonexistent/dir/x.tsv"},
       montmort::cli::kIo},
      {{"limit", "--suits", "4", "--format", "xml"}, montmort::cli::kUsage},
  };
  for (const auto& [args, code] : cases) {
    const CliResult r = run(args);
    std::string joined;
    for (const auto& a : args) joined += a + " ";
    EXPECT_EQ(r.code, code) << joined << "\n" << r.err;
    EXPECT_TRUE(r.out.empty()) << joined;
    EXPECT_FALSE(r.err.empty()) << joined;
  }
}

TEST(Cli, ConfigErrorsAreDistinct) {
  const CliResult one_rank = run({"treize", "--ranks", "1", "--suits", "4"});
  const CliResult no_suits = run({"treize", "--ranks", "2", "--suits", "0"});
  EXPECT_NE(one_rank.err, no_suits.err);
}

TEST(Cli, UnknownCommandMessage) {
  EXPECT_EQ(run({"frobnicate"}).err, "error: unknown command 'frobnicate'\n");
}

TEST(Cli, JsonSchema) {
  const CliResult r = run({"--format", "json", "rankderange", "--ranks", "13", "--suits", "4",
                     "--prob", "--exact"});
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["command"], "rankderange");
  EXPECT_EQ(j["inputs"]["ranks"], 13);
  EXPECT_EQ(j["inputs"]["suits"], 4);
  EXPECT_EQ(j["digits"], 20);
  EXPECT_EQ(j["decimal"], "0.01623272746719463675");
  EXPECT_EQ(j["exact"],
            "4610507544750288132457667562311567997623087869/"
            "284025438982318025793544200005777916187500000000");
  EXPECT_TRUE(j["metadata"].contains("runtime_ms"));

  const auto lim = nlohmann::json::parse(run({"limit", "--suits", "4", "--format", "json"}).out);
  EXPECT_TRUE(lim["exact"].is_null());
  EXPECT_EQ(lim["decimal"], "0.01831563888873418029");
}

TEST(Cli, JsonSimulate) {
  const CliResult r = run({"--format", "json", "simulate", "--game", "frustration", "--ranks", "13",
                     "--suits", "4", "--trials", "1000", "--seed", "5"});
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["command"], "simulate");
  EXPECT_EQ(j["inputs"]["game"], "frustration");
  EXPECT_EQ(j["metadata"]["seed"], 5);
  EXPECT_EQ(j["metadata"]["trials"], 1000);
}

TEST(Cli, SimulateDeterministicAcrossThreads) {
  std::vector<std::string> base{"simulate", "--game", "treize", "--ranks", "13", "--suits",
                                "4", "--trials", "3000", "--seed", "12345"};
  const CliResult a = run(base);
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out.rfind("game=treize ranks=13 suits=4 trials=3000 seed=12345 mean=", 0), 0u)
      << a.out;
  for (const char* t : {"1", "2", "4"}) {
    auto args = base;
    args.insert(args.end(), {"--threads", t});
    EXPECT_EQ(run(args).out, a.out) << t;
  }
}

TEST(Cli, TrialsCsv) {
  const std::string path = temp_path("montmort_cli_trials.csv");
  const CliResult r = run({"simulate", "--game", "frustration-matches", "--ranks", "4", "--suits",
                     "2", "--trials", "5", "--seed", "3", "--trials-csv", path});
  ASSERT_EQ(r.code, 0);
  std::ifstream f(path);
  std::string line;
  std::getline(f, line);
  EXPECT_EQ(line, "trial,outcome");
  int rows = 0;
  while (std::getline(f, line)) ++rows;
  EXPECT_EQ(rows, 5);
  std::remove(path.c_str());
}

TEST(Cli, HelpExitsZero) {
  const CliResult r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("rankderange"), std::string::npos);
}
