// Copyright 2026 The orgmatch Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "cli.h"
#include "fixtures.h"
#include "json.hpp"
#include "orgmatch/dataset.h"

namespace orgmatch {
namespace {

using nlohmann::json;
using testing::FixturePath;
using testing::ScratchDir;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome RunCli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::Run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string Registry() { return FixturePath("registry_v2.jsonl").string(); }

std::string Slurp(const std::filesystem::path &p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

void Spit(const std::filesystem::path &p, const std::string &s) { std::ofstream(p, std::ios::binary) << s; }

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = ScratchDir("cli");
    index = (dir / "index.json").string();
    ASSERT_EQ(RunCli({"--registry", Registry(), "build-index", "--out", index, "--version-tag", "t1"}).code, 0);
  }
  std::filesystem::path dir;
  std::string index;
};

TEST_F(CliTest, BuildIndexReportsCountsAndIsReproducible) {
  std::string again = (dir / "again.json").string();
  Outcome o = RunCli({"--registry", Registry(), "build-index", "--out", again, "--version-tag", "t1"});
  ASSERT_EQ(o.code, 0) << o.err;
  json j = json::parse(o.out);
  EXPECT_EQ(j["rejected_missing_country"], 1);
  EXPECT_EQ(j["version_tag"], "t1");
  EXPECT_GT(j["records"].get<int>(), 40);
  EXPECT_EQ(Slurp(index), Slurp(again));
}

TEST_F(CliTest, BuildIndexFailsOnCorruptRegistry) {
  auto bad = dir / "bad.json";
  Spit(bad, "[{\"id\": ");
  Outcome o = RunCli({"--registry", bad.string(), "build-index", "--out", (dir / "x.json").string()});
  EXPECT_EQ(o.code, cli::kExitUsage);
  EXPECT_FALSE(o.err.empty());
}

TEST_F(CliTest, MatchPrintsResponse) {
  Outcome o = RunCli({"--index", index, "match", "Google"});
  ASSERT_EQ(o.code, 0) << o.err;
  json j = json::parse(o.out);
  EXPECT_EQ(j["matches"][0]["id"], "00njsd438");
  EXPECT_EQ(j["registry_version"], "t1");
  EXPECT_FALSE(j.contains("trace"));
  o = RunCli({"--index", index, "match", "--trace", "Google"});
  EXPECT_TRUE(json::parse(o.out).contains("trace"));
}

TEST_F(CliTest, MatchFromRegistryDirectly) {
  Outcome o = RunCli({"--registry", Registry(), "match", "Google"});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(json::parse(o.out)["matches"][0]["id"], "00njsd438");
}

TEST_F(CliTest, EmptyAffiliationIsNotAnError) {
  Outcome o = RunCli({"--index", index, "match", ""});
  EXPECT_EQ(o.code, 0);
  EXPECT_TRUE(json::parse(o.out)["matches"].empty());
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(RunCli({"--index", index, "match", "--window", "11", "Google"}).code, cli::kExitUsage);
  EXPECT_EQ(RunCli({"--index", index, "match", "--sim-o", "0", "Google"}).code, cli::kExitUsage);
  EXPECT_EQ(RunCli({"match", "Google"}).code, cli::kExitUsage);
  EXPECT_EQ(RunCli({"--index", (dir / "missing.json").string(), "match", "Google"}).code, cli::kExitUsage);
  EXPECT_EQ(RunCli({"nonsense"}).code, cli::kExitUsage);
  EXPECT_EQ(RunCli({}).code, cli::kExitUsage);
}

TEST_F(CliTest, BatchOneLinePerInput) {
  auto in = dir / "in.jsonl";
  Spit(in,
       "{\"raw_affiliation_string\": \"Google\"}\n"
       "{\"affiliation\": \"Harvard University, Cambridge, MA\"}\n"
       "{\"raw_affiliation_string\": \"Karolinska Institutet, Stockholm, Sweden\"}\n");
  Outcome o = RunCli({"--index", index, "batch", "--input", in.string(), "--output", "-"});
  ASSERT_EQ(o.code, 0) << o.err;
  std::istringstream lines(o.out);
  std::string line;
  int n = 0;
  while (std::getline(lines, line)) {
    json j = json::parse(line);
    EXPECT_EQ(j["line"], n + 1);
    EXPECT_TRUE(j.contains("matches"));
    ++n;
  }
  EXPECT_EQ(n, 3);
}

TEST_F(CliTest, BatchReportsBadLines) {
  auto in = dir / "in.jsonl";
  Spit(in, "{\"raw_affiliation_string\": \"Google\"}\n\n{oops\n");
  Outcome o = RunCli({"--index", index, "batch", "--input", in.string()});
  EXPECT_EQ(o.code, cli::kExitFindings);
  std::istringstream lines(o.out);
  std::string line;
  std::vector<json> rows;
  while (std::getline(lines, line)) rows.push_back(json::parse(line));
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_FALSE(rows[0].contains("error"));
  EXPECT_EQ(rows[1]["line"], 2);
  EXPECT_TRUE(rows[1].contains("error"));
  EXPECT_TRUE(rows[2].contains("error"));
}

TEST_F(CliTest, BatchCsvInput) {
  Outcome o = RunCli({"--index", index, "batch", "--input", FixturePath("single_id.csv").string()});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(std::count(o.out.begin(), o.out.end(), '\n'), 11);
}

TEST_F(CliTest, BatchIsIndependentOfWorkers) {
  auto out1 = dir / "w1.jsonl";
  auto out8 = dir / "w8.jsonl";
  std::string in = FixturePath("dataset.jsonl").string();
  ASSERT_EQ(RunCli({"--index", index, "batch", "--input", in, "--output", out1.string(), "--workers", "1"}).code, 0);
  ASSERT_EQ(RunCli({"--index", index, "batch", "--input", in, "--output", out8.string(), "--workers", "8"}).code, 0);
  EXPECT_FALSE(Slurp(out1).empty());
  EXPECT_EQ(Slurp(out1), Slurp(out8));
}

TEST_F(CliTest, EvalPerfectWhenTruthIsThePrediction) {
  // Build a dataset whose truth is whatever the matcher predicts.
  std::vector<std::string> strings = {"Google", "Harvard University, Cambridge, MA",
                                      "Department of Physics, Massachusetts Institute of Technology, USA"};
  std::string jsonl;
  for (size_t i = 0; i < strings.size(); ++i) {
    json resp = json::parse(RunCli({"--index", index, "match", strings[i]}).out);
    ASSERT_FALSE(resp["matches"].empty());
    json ids = json::array();
    for (const auto &m : resp["matches"]) ids.push_back(m["id"]);
    json judgement = {{"exact", ids}, {"ancestor", json::array()}};
    json rec = {{"raw_affiliation_string", strings[i]},
                {"extracted_dois", {"10.1000/cli." + std::to_string(i)}},
                {"expert_judgements", {{{"expert_id", 1}, {"matches", judgement}}, {{"expert_id", 2}, {"matches", judgement}}}},
                {"final_judgement", judgement}};
    jsonl += rec.dump() + "\n";
  }
  auto path = dir / "self.jsonl";
  Spit(path, jsonl);
  Outcome o = RunCli({"--index", index, "eval", "--dataset", path.string()});
  ASSERT_EQ(o.code, 0) << o.err;
  json j = json::parse(o.out);
  EXPECT_DOUBLE_EQ(j["f1"].get<double>(), 1.0);
  EXPECT_EQ(j["registry_version"], "t1");
  o = RunCli({"--index", index, "eval", "--dataset", path.string(), "--format", "table"});
  EXPECT_NE(o.out.find("1.000"), std::string::npos) << o.out;
}

TEST_F(CliTest, EvalSingleId) {
  Outcome o = RunCli({"--index", index, "eval", "--single-id", "--dataset", FixturePath("single_id.csv").string()});
  ASSERT_EQ(o.code, 0) << o.err;
  json j = json::parse(o.out);
  EXPECT_TRUE(j.contains("accuracy"));
  EXPECT_GT(j["accuracy"].get<double>(), 0.5);
}

TEST_F(CliTest, TuneSinglePointGrid) {
  auto csv = dir / "tune.csv";
  Outcome o = RunCli({"--index", index, "tune", "--dataset", FixturePath("dataset.jsonl").string(), "--grid",
                      "window=3;sim_u=0.426;sim_o=0.827;specific=true", "--out", csv.string()});
  ASSERT_EQ(o.code, 0) << o.err;
  std::string text = Slurp(csv);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 2);
  EXPECT_EQ(text.rfind("window,sim_o,sim_u,specific,P,R,F1", 0), 0u);
  json j = json::parse(o.out);
  EXPECT_EQ(j["points"], 1);
  EXPECT_EQ(j["best"]["f1"]["params"]["window"], 3);
}

TEST_F(CliTest, TuneRejectsBadGrid) {
  EXPECT_EQ(RunCli({"--index", index, "tune", "--dataset", FixturePath("dataset.jsonl").string(), "--grid",
                    "window=0:3", "--out", (dir / "t.csv").string()})
                .code,
            cli::kExitUsage);
}

TEST_F(CliTest, DatasetValidateAndStats) {
  Outcome o = RunCli({"dataset", "validate", FixturePath("dataset.jsonl").string()});
  EXPECT_EQ(o.code, 0) << o.out << o.err;
  auto bad = dir / "bad.jsonl";
  Spit(bad, Slurp(FixturePath("dataset.jsonl")) + "{\"raw_affiliation_string\": 3}\n");
  o = RunCli({"dataset", "validate", bad.string()});
  EXPECT_EQ(o.code, cli::kExitFindings);
  EXPECT_NE(o.out.find("line 13: "), std::string::npos) << o.out;

  o = RunCli({"dataset", "stats", FixturePath("dataset.jsonl").string()});
  ASSERT_EQ(o.code, 0) << o.err;
  json j = json::parse(o.out);
  EXPECT_EQ(j["strings"], 12);
  EXPECT_EQ(j["links"], 17);
  EXPECT_EQ(j["exact"], 14);
  EXPECT_EQ(j["ancestor"], 3);
  EXPECT_EQ(j["distinct_dois"], 12);
}

TEST_F(CliTest, DatasetRefresh) {
  auto out = dir / "refreshed.jsonl";
  auto log = dir / "refresh_log.jsonl";
  Outcome o = RunCli({"--index", index, "dataset", "refresh", FixturePath("dataset.jsonl").string(), "--out",
                      out.string(), "--log", log.string()});
  ASSERT_EQ(o.code, 0) << o.err;
  json j = json::parse(o.out);
  EXPECT_EQ(j["records"], 12);
  EXPECT_GE(j["replaced"].get<int>(), 1);
  std::string refreshed = Slurp(out);
  EXPECT_EQ(refreshed.find("03g5ew477"), std::string::npos);
  EXPECT_NE(refreshed.find("01zy2cs03"), std::string::npos);
  EXPECT_FALSE(Slurp(log).empty());
}

}  // namespace
}  // namespace orgmatch
