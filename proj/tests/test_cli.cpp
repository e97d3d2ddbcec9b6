#include "cli_app.hpp"

#include <gtest/gtest.h>

#include <sstream>
#include <string>
#include <vector>

using lightbulb::cli::run_cli;
using nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

json invoke_json(std::vector<std::string> args, int expected_code = 0) {
  const auto r = invoke(std::move(args));
  EXPECT_EQ(r.code, expected_code) << r.err;
  return json::parse(r.out);
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::stringstream ss(s);
  for (std::string l; std::getline(ss, l);) v.push_back(l);
  return v;
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> v;
  std::stringstream ss(s);
  for (std::string f; std::getline(ss, f, ',');) v.push_back(f);
  if (!s.empty() && s.back() == ',') v.emplace_back();
  return v;
}

std::string cell_text(const json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

}  // namespace

TEST(Cli, ExactCsv) {
  const auto r = invoke({"exact", "--n", "3", "--format", "csv", "--float-digits", "4"});
  EXPECT_EQ(r.code, 0);
  const auto l = lines(r.out);
  ASSERT_GE(l.size(), 3u);
  EXPECT_EQ(l[0], "w,prob,prob_decimal");
  EXPECT_EQ(l[1], "0,1/3,0.3333");
  EXPECT_EQ(l[2], "2,2/3,0.6667");
}

TEST(Cli, ExactSingleBulb) {
  const auto r = invoke({"exact", "--n", "1", "--format", "csv", "--float-digits", "1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(lines(r.out)[1], "1,1/1,1.0");
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(invoke({"exact", "--n", "0"}).code, 2);
  EXPECT_EQ(invoke({"stein", "norm", "--n", "1"}).code, 2);
  EXPECT_EQ(invoke({"collision", "--n", "1"}).code, 2);
  EXPECT_EQ(invoke({"stein", "verify", "--n", "3", "--m", "0", "--set", "1"}).code, 2);
  EXPECT_EQ(invoke({"stein", "verify", "--n", "3", "--m", "0", "--set", "x"}).code, 2);
  EXPECT_EQ(invoke({"clubbed", "--n", "3", "--m", "2"}).code, 2);
  EXPECT_EQ(invoke({"exact", "--n", "3", "--format", "xml"}).code, 2);
  EXPECT_EQ(invoke({"frobnicate"}).code, 2);
  EXPECT_EQ(invoke({}).code, 2);
  EXPECT_EQ(invoke({"simulate", "--n", "3", "--reps", "2", "--batches", "3"}).code, 2);
  EXPECT_EQ(invoke({"--help"}).code, 0);
}

TEST(Cli, Tv) {
  const auto j = invoke_json({"tv", "--n", "3"});
  EXPECT_EQ(j["rows"][0]["tv_exact"], "1/12");
  EXPECT_NEAR(std::stod(j["rows"][0]["bound"].get<std::string>()), 1.247, 1e-3);
  EXPECT_EQ(j["status"]["tv_bound"], "pass");
  EXPECT_TRUE(j["passed"].get<bool>());

  const auto j1 = invoke_json({"tv", "--n", "1"});
  EXPECT_EQ(j1["rows"][0]["tv_exact"], "0/1");
  EXPECT_TRUE(j1["rows"][0]["collision_prob"].is_null());
}

TEST(Cli, Report) {
  const auto j = invoke_json({"report", "--n-max", "30"});
  ASSERT_EQ(j["rows"].size(), 30u);
  for (const auto& row : j["rows"]) {
    const int n = row["n"];
    const double tv = std::stod(row["tv_float"].get<std::string>());
    if (n >= 21) {
      EXPECT_LT(tv, 0.01);
    }
    if (n >= 28) {
      EXPECT_LT(tv, 0.001);
    }
    EXPECT_EQ(row["failures"], "");
  }
  // Diagnostic only: tv(20) > tv(16).
  EXPECT_EQ(j["summary"]["decay_violations"], 1);
  EXPECT_EQ(j["summary"]["decay_violations_at"], "16");
  EXPECT_TRUE(j["passed"].get<bool>());
}

TEST(Cli, SteinVerify) {
  const auto j = invoke_json({"stein", "verify", "--n", "3", "--m", "0", "--set", "0"});
  EXPECT_EQ(j["summary"]["max_abs_residual"], "0/1");
  EXPECT_EQ(j["rows"][0]["sup_norm"], "1/8");
  EXPECT_EQ(j["status"]["residual_zero"], "pass");

  const auto k = invoke_json({"stein", "verify", "--n", "20", "--set", "random:10:3"});
  EXPECT_EQ(k["rows"].size(), 10u);
  EXPECT_EQ(k["summary"]["max_abs_residual"], "0/1");

  const auto s = invoke_json({"stein", "verify", "--n", "9", "--m", "1"});
  EXPECT_EQ(s["rows"].size(), 5u);
}

TEST(Cli, SteinNorm) {
  const auto j = invoke_json({"stein", "norm", "--n", "4", "--m", "0"});
  EXPECT_EQ(j["rows"][0]["sharp"], "7/96");
  EXPECT_NEAR(std::stod(j["rows"][0]["lemma_bound"].get<std::string>()), 0.45523, 1e-5);
  EXPECT_EQ(j["status"]["sharp_le_lemma_bound"], "pass");
}

TEST(Cli, Collision) {
  const auto j = invoke_json({"collision", "--n", "3"});
  EXPECT_EQ(j["rows"][0]["collision_prob"], "1/9");
  EXPECT_NEAR(std::stod(j["rows"][0]["collision_bound"].get<std::string>()), 0.2636, 1e-4);
  const auto k = invoke_json({"collision", "--n", "2"});
  EXPECT_EQ(k["rows"][0]["collision_prob"], "0/1");
  EXPECT_NEAR(std::stod(k["rows"][0]["collision_bound"].get<std::string>()), 0.3679, 1e-4);
  EXPECT_TRUE(k["passed"].get<bool>());
}

TEST(Cli, Simulate) {
  const auto j = invoke_json({"simulate", "--n", "2", "--reps", "100", "--seed", "7"});
  ASSERT_EQ(j["rows"].size(), 1u);
  EXPECT_EQ(j["rows"][0]["w"], 1);
  EXPECT_EQ(j["rows"][0]["count"], 100);
  EXPECT_EQ(j["summary"]["parity_violations"], 0);
}

TEST(Cli, ClubbedBalance) {
  const auto j = invoke_json({"clubbed", "--n", "5"});
  EXPECT_EQ(j["parameters"]["m"], 1);
  EXPECT_EQ(j["rows"][1]["prob"], "5/8");
  EXPECT_EQ(j["status"]["balance"], "pass");
}

TEST(Cli, RepeatedRunsAreByteIdentical) {
  const std::vector<std::vector<std::string>> cmds = {
      {"report", "--n-max", "12"},
      {"simulate", "--n", "7", "--reps", "5000", "--seed", "3", "--batches", "4", "--format", "csv"},
      {"stein", "verify", "--n", "11", "--set", "random:5:9"}};
  for (const auto& c : cmds) EXPECT_EQ(invoke(c).out, invoke(c).out);
}

TEST(Cli, CsvAndJsonCarrySameContent) {
  const std::vector<std::vector<std::string>> cmds = {
      {"report", "--n-max", "8"},
      {"exact", "--n", "9"},
      {"simulate", "--n", "6", "--reps", "3000", "--seed", "5", "--batches", "2"},
      {"stein", "norm", "--n", "10"}};
  for (auto c : cmds) {
    const auto j = json::parse(invoke(c).out);
    c.insert(c.end(), {"--format", "csv"});
    const auto l = lines(invoke(c).out);
    const auto header = split(l[0]);
    ASSERT_EQ(j["rows"].size() + 3 <= l.size(), true);
    for (std::size_t r = 0; r < j["rows"].size(); ++r) {
      const auto fields = split(l[r + 1]);
      ASSERT_EQ(fields.size(), header.size());
      for (std::size_t k = 0; k < header.size(); ++k)
        EXPECT_EQ(fields[k], cell_text(j["rows"][r][header[k]])) << header[k];
    }
  }
}

TEST(Cli, AssertionFailureExitCode) {
  lightbulb::cli::Envelope e;
  e.status = {{"a", true}, {"b", false}};
  EXPECT_FALSE(e.passed());
}
