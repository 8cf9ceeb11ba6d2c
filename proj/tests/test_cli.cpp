#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "phc/cli.hpp"

using namespace phc;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "phc");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

Json json_of(const Outcome& r) { return Json::parse(r.out); }

}  // namespace

TEST(Cli, CompleteMappingsJson) {
  const Outcome r = invoke({"cm", "--group", "z5", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = json_of(r);
  EXPECT_EQ(j["cm"], "15");
  EXPECT_EQ(j["s_value"], "1800");
}

TEST(Cli, GlobalFlagsBeforeSubcommand) {
  const Outcome r = invoke({"--json", "--threads", "2", "cm", "--group", "gf4"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json_of(r)["cm"], "8");
}

TEST(Cli, EstimateIsMarkedHeuristic) {
  const Outcome r = invoke({"cm", "--group", "z7", "--estimate", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(json_of(r)["heuristic"].get<bool>());
}

TEST(Cli, OrderCapIsInfeasible) {
  const Outcome r = invoke({"cm", "--group", "z17"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("estimated work"), std::string::npos) << r.err;
}

TEST(Cli, CountMethods) {
  const Outcome brute = invoke({"count", "--code", "sum:z3", "--method", "brute", "--json"});
  const Outcome closed = invoke({"count", "--code", "sum:z3", "--method", "closed", "--json"});
  ASSERT_EQ(brute.code, 0) << brute.err;
  ASSERT_EQ(closed.code, 0) << closed.err;
  EXPECT_EQ(json_of(brute)["s_count"], "66");
  EXPECT_EQ(json_of(closed)["s_count"], "66");
}

TEST(Cli, CountAtCoordinates) {
  const Outcome r = invoke({"count", "--code", "sum:z5", "--at", "1,2,3", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json_of(r)["a_t"], "15");
  EXPECT_EQ(json_of(r)["T"], "{1,2,3}");
}

TEST(Cli, BruteForceOverCapIsInfeasible) {
  const Outcome r = invoke({"count", "--code", "sum:z9", "--method", "brute"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("infeasible"), std::string::npos);
}

TEST(Cli, BadInputs) {
  EXPECT_EQ(invoke({"cm", "--group", "z5", "--bogus"}).code, 1);
  EXPECT_EQ(invoke({"cm"}).code, 1);
  EXPECT_EQ(invoke({"cm", "--group", "z0"}).code, 1);
  EXPECT_EQ(invoke({"count", "--code", "sum:z5", "--method", "fast"}).code, 1);
  EXPECT_EQ(invoke({"--precision-bits", "8", "table2"}).code, 1);
  EXPECT_EQ(invoke({"--help"}).code, 0);
}

TEST(Cli, RateFromSuppliedCount) {
  const Outcome r = invoke({"rate", "--code", "mds52f4", "--s", "1100", "--digits", "5", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = json_of(r);
  EXPECT_EQ(j["rate_digits"], "4.9586e-2");
  EXPECT_TRUE(j["stable"].get<bool>());
}

TEST(Cli, RateProbabilistic) {
  const Outcome r = invoke({"rate", "--probabilistic", "-q", "11", "--digits", "9", "--rounding", "truncate", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json_of(r)["rate_digits"], "2.01855739e-5");
}

TEST(Cli, RateAsymptotic) {
  EXPECT_EQ(invoke({"rate", "--asymptotic", "four-col", "-q", "13"}).code, 0);
  EXPECT_EQ(invoke({"rate", "--asymptotic", "three-col", "-q", "6"}).code, 1);
}

TEST(Cli, Beats) {
  const Outcome yes = invoke({"beats", "--code", "sum:z5", "--json"});
  const Outcome no = invoke({"beats", "--code", "sum:z4", "--json"});
  ASSERT_EQ(yes.code, 0) << yes.err;
  ASSERT_EQ(no.code, 0) << no.err;
  EXPECT_TRUE(json_of(yes)["beats"].get<bool>());
  EXPECT_FALSE(json_of(no)["beats"].get<bool>());
}

TEST(Cli, Table2Json) {
  const Outcome r = invoke({"table2", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = json_of(r);
  ASSERT_EQ(j["rows"].size(), 6u);
  EXPECT_EQ(j["rows"][1]["r_new"], "1.452e-2");
}

TEST(Cli, JsonIsByteIdenticalAcrossRunsAndThreads) {
  const Outcome a = invoke({"table2", "--json"});
  const Outcome b = invoke({"table2", "--json"});
  const Outcome c = invoke({"--threads", "3", "table2", "--json"});
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, c.out);
  const Outcome m1 = invoke({"mc", "--m", "3", "-q", "3", "--N", "10", "--M", "12", "--trials", "50", "--json"});
  const Outcome m2 = invoke({"--threads", "2", "mc", "--m", "3", "-q", "3", "--N", "10", "--M", "12", "--trials", "50", "--json"});
  ASSERT_EQ(m1.code, 0) << m1.err;
  EXPECT_EQ(m1.out, m2.out);
}

TEST(Cli, MonteCarloCodeFamily) {
  const Outcome r = invoke({"mc", "--m", "9", "-q", "3", "--N", "6", "--M", "20", "--trials", "40", "--family", "code:sum:z3",
                     "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json_of(r)["family_size"], 66);
}

TEST(Cli, ExportRoundTrip) {
  const auto path = (std::filesystem::temp_directory_path() / "phc_cli_export_test.code").string();
  const Outcome w = invoke({"export", "--code", "shift:5", "--out", path});
  ASSERT_EQ(w.code, 0) << w.err;
  const Outcome direct = invoke({"count", "--code", "shift:5", "--method", "brute", "--json"});
  const Outcome loaded = invoke({"count", "--code", "file:" + path, "--json"});
  ASSERT_EQ(loaded.code, 0) << loaded.err;
  EXPECT_EQ(json_of(direct)["s_count"], json_of(loaded)["s_count"]);
  std::filesystem::remove(path);
}

TEST(Cli, ConfigFile) {
  const auto path = (std::filesystem::temp_directory_path() / "phc_cli_config_test.toml").string();
  {
    std::ofstream f(path);
    f << "json = true\n[cm]\ngroup = \"z7\"\n";
  }
  const Outcome r = invoke({"--config", path, "cm"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json_of(r)["cm"], "133");
  std::filesystem::remove(path);
  EXPECT_EQ(invoke({"--config", path + ".missing", "cm", "--group", "z5"}).code, 1);
}
