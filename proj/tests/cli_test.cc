// Copyright 2026 The Authors.
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

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "lab/experiment.h"
#include "lab/io.h"
#include "ocrs/instances.h"

namespace ocrs::lab {
namespace {

bool HasDiagnostic(const std::vector<std::string>& d, const std::string& part) {
  for (const auto& s : d) {
    if (s.find(part) != std::string::npos) return true;
  }
  return false;
}

json SmallSelectability() {
  return json::parse(R"({
    "kind": "selectability",
    "matroid": {"family": "uniform", "n": 6, "rank": 1},
    "x": {"uniform": 0.16666666666666666},
    "scheme": {"kind": "even_mixture"},
    "order": {"kind": "random"},
    "trials": 20000,
    "seed": 9
  })");
}

TEST(IoTest, MatroidRoundTrip) {
  const std::vector<std::string> specs = {
      R"({"family": "uniform", "n": 4, "rank": 2})",
      R"({"family": "laminar", "n": 4, "sets": [[0, 1], [0, 1, 2, 3]], "capacities": [1, 2]})",
      R"({"family": "graphic", "vertices": 3, "edges": [[0, 1], [1, 2], [0, 2]]})",
      R"({"family": "transversal", "left": 3, "right": 2, "edges": [[0, 0], [1, 0], [2, 1]]})",
      R"({"family": "explicit", "n": 3, "bases": [[0, 1], [0, 2], [1, 2]]})",
  };
  for (const auto& s : specs) {
    const auto m = MatroidFromJson(json::parse(s));
    const auto again = MatroidFromJson(MatroidToJson(*m));
    ASSERT_EQ(m->size(), again->size()) << s;
    for (std::uint32_t mask = 0; mask < (1u << m->size()); ++mask) {
      ElementSet set;
      for (int e = 0; e < m->size(); ++e) {
        if (mask >> e & 1) set.push_back(e);
      }
      EXPECT_EQ(m->IsIndependent(set), again->IsIndependent(set)) << s;
    }
  }
}

TEST(IoTest, DistributionRoundTrip) {
  const auto d = DistributionFromJson(json::parse(
      R"({"kind": "discrete", "support": [0, 2], "masses": [0.25, 0.75]})"));
  EXPECT_TRUE(d.jitter());
  const auto again = DistributionFromJson(DistributionToJson(d));
  EXPECT_DOUBLE_EQ(again.Mean(), 1.5);
  EXPECT_THROW(DistributionsFromJson(json::array({DistributionToJson(d)}), 2),
               std::invalid_argument);
  EXPECT_EQ(DistributionsFromJson(DistributionToJson(d), 3).size(), 3u);
}

TEST(IoTest, UnknownFieldsRejected) {
  EXPECT_THROW(MatroidFromJson(json::parse(R"({"family": "cycle"})")),
               std::invalid_argument);
  EXPECT_THROW(SchemeFromJson(json::parse(R"({"kind": "oracle"})")),
               std::invalid_argument);
  EXPECT_THROW(OrderFromJson(json::parse(R"({"kind": "sideways"})")),
               std::invalid_argument);
}

TEST(ValidateTest, ValidConfigHasNoDiagnostics) {
  EXPECT_TRUE(Validate(SmallSelectability()).empty());
  EXPECT_TRUE(Validate(json::parse(R"({"kind": "minimize_fn", "n": 4})")).empty());
}

TEST(ValidateTest, UnknownKind) {
  const auto d = Validate(json::parse(R"({"kind": "tournament"})"));
  ASSERT_EQ(d.size(), 1u);
  EXPECT_TRUE(HasDiagnostic(d, "unknown"));
}

TEST(ValidateTest, ZeroTrialsRejectedBeforeWork) {
  auto c = SmallSelectability();
  c["trials"] = 0;
  EXPECT_TRUE(HasDiagnostic(Validate(c), "trials"));
  EXPECT_THROW(RunExperiment(c), ValidationError);
}

TEST(ValidateTest, EpsilonOutOfRange) {
  const auto c = json::parse(R"({
    "kind": "thresholds",
    "matroid": {"family": "uniform", "n": 4, "rank": 2},
    "distributions": {"kind": "uniform", "low": 0, "high": 1},
    "epsilon": 1.5, "seed": 1})");
  EXPECT_TRUE(HasDiagnostic(Validate(c), "epsilon out of (0,1)"));
}

TEST(ValidateTest, LaminarViolationCitesSet) {
  const auto c = json::parse(R"({
    "kind": "selectability",
    "matroid": {"family": "laminar", "n": 4, "sets": [[1, 2]], "capacities": [1]},
    "x": [0.1, 0.6, 0.6, 0.1],
    "scheme": {"kind": "greedy"}, "trials": 10, "seed": 1})");
  const auto d = Validate(c);
  ASSERT_EQ(d.size(), 1u);
  EXPECT_TRUE(HasDiagnostic(d, "L = {1,2}")) << d[0];
}

TEST(ValidateTest, OrderStatisticIndexRange) {
  const auto c = json::parse(R"({
    "kind": "thresholds",
    "matroid": {"family": "uniform", "n": 4, "rank": 2},
    "distributions": {"kind": "uniform", "low": 0, "high": 1},
    "epsilon": 0.25, "samples": 2, "seed": 1})");
  EXPECT_TRUE(HasDiagnostic(Validate(c), "order statistic"));
}

TEST(ValidateTest, CollectsEveryProblem) {
  const auto c = json::parse(R"({
    "kind": "selectability",
    "matroid": {"family": "uniform", "n": 3, "rank": 1},
    "x": [0.2, 0.2],
    "scheme": {"kind": "nope"}, "trials": -1})");
  EXPECT_GE(Validate(c).size(), 4u);
}

TEST(ValidateTest, MinimizeFnRange) {
  EXPECT_FALSE(Validate(json::parse(R"({"kind": "minimize_fn", "n": 7})")).empty());
  EXPECT_FALSE(Validate(json::parse(R"({"kind": "minimize_fn", "n": 0})")).empty());
}

TEST(ValidateTest, HardInstanceBlocks) {
  const auto c = json::parse(R"({
    "kind": "hard_instance", "family": "graphic", "N": 4, "M": 2,
    "trials": 10, "seed": 1, "stress": {"blocks": [4]}})");
  EXPECT_TRUE(HasDiagnostic(Validate(c), "out of range"));
}

TEST(RunTest, MinimizeFnExample) {
  const auto out = RunExperiment(json::parse(R"({"kind": "minimize_fn", "n": 3})"));
  const auto& r = out.report.at("result");
  EXPECT_NEAR(r.at("min").get<double>(), 20.0 / 27, 1e-6);
  for (double a : r.at("argmin").get<std::vector<double>>()) {
    EXPECT_NEAR(a, 1.0 / 3, 1e-3);
  }
}

TEST(RunTest, HardInstanceBound) {
  const auto out = RunExperiment(json::parse(R"({
    "kind": "hard_instance", "family": "graphic", "N": 64, "M": 2,
    "trials": 200, "seed": 1})"));
  EXPECT_DOUBLE_EQ(out.report.at("result").at("bound").get<double>(), 0.53125);
}

TEST(RunTest, ReportEmbedsHashAndSeed) {
  const auto c = SmallSelectability();
  const auto out = RunExperiment(c);
  EXPECT_EQ(out.report.at("config_hash").get<std::string>(), ConfigHash(c));
  EXPECT_EQ(out.report.at("seed").get<std::uint64_t>(), 9u);
  ASSERT_TRUE(out.csv.has_value());
  EXPECT_EQ(out.csv->substr(0, out.csv->find('\n')),
            "element,active,accepted,estimate,ci_lo,ci_hi");
}

TEST(RunTest, OutputSectionDoesNotChangeHash) {
  auto c = SmallSelectability();
  const auto h = ConfigHash(c);
  c["output"] = {{"dir", "/tmp/elsewhere"}};
  EXPECT_EQ(ConfigHash(c), h);
  c["seed"] = 10;
  EXPECT_NE(ConfigHash(c), h);
}

TEST(RunTest, OverridesApply) {
  const auto c = ApplyOverrides(SmallSelectability(), {17u, 50});
  EXPECT_EQ(c.at("seed").get<int>(), 17);
  EXPECT_EQ(c.at("trials").get<int>(), 50);
}

TEST(RunTest, CompatibilityWarningIsReportedNotRejected) {
  auto c = SmallSelectability();
  c["matroid"] = {{"family", "uniform"}, {"n", 6}, {"rank", 2}};
  EXPECT_TRUE(Validate(c).empty());
  const auto out = RunExperiment(c);
  EXPECT_FALSE(out.report.at("result").at("warnings").empty());
}

TEST(RunTest, IdenticalAcrossRunsAndWorkers) {
  const std::vector<json> configs = {
      SmallSelectability(),
      json::parse(R"({
        "kind": "prophet",
        "matroid": {"family": "uniform", "n": 3, "rank": 1},
        "distributions": {"kind": "exponential", "rate": 1},
        "epsilon": 0.5, "scheme": {"kind": "even_mixture"},
        "trials": 5000, "verify_trials": 5000, "seed": 4})"),
      json::parse(R"({
        "kind": "hard_instance", "family": "transversal", "N": 8, "M": 2,
        "trials": 5000, "seed": 2,
        "conditional": {"block": 1, "condition_block": 1, "trials": 3000},
        "stress": {"scheme": {"kind": "greedy"}, "blocks": [0, 3]}})"),
  };
  for (const auto& c : configs) {
    const auto a = RunExperiment(c, 1);
    const auto b = RunExperiment(c, 1);
    const auto d = RunExperiment(c, 3);
    EXPECT_EQ(a.report.dump(), b.report.dump());
    EXPECT_EQ(a.report.dump(), d.report.dump()) << c.at("kind");
    EXPECT_EQ(a.csv, d.csv);
  }
}

#ifdef OCRS_LAB_BINARY
int Shell(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(BinaryTest, ExitCodesAndFiles) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "ocrs_lab_cli_test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const auto write = [&](const std::string& name, const json& j) {
    std::ofstream(dir / name) << j.dump();
    return (dir / name).string();
  };
  const std::string bin = OCRS_LAB_BINARY;
  auto bad = SmallSelectability();
  bad["trials"] = 0;
  EXPECT_EQ(Shell(bin + " validate " + write("bad.json", bad) + " 2>/dev/null"), 2);
  EXPECT_EQ(Shell(bin + " run " + write("bad2.json", bad) + " 2>/dev/null"), 2);
  const auto good = write("good.json", SmallSelectability());
  EXPECT_EQ(Shell(bin + " validate " + good + " >/dev/null"), 0);
  EXPECT_EQ(Shell("OCRS_LAB_OUT=" + (dir / "env").string() + " " + bin +
                  " run --quiet " + good + " 2>/dev/null"),
            0);
  const std::string stem = "selectability-" + ConfigHash(SmallSelectability()).substr(0, 8);
  EXPECT_TRUE(fs::exists(dir / "env" / (stem + ".json")));
  EXPECT_TRUE(fs::exists(dir / "env" / (stem + ".csv")));
  EXPECT_EQ(Shell(bin + " run --quiet --workers 2 --out " + (dir / "flag").string() +
                  " " + good + " 2>/dev/null"),
            0);
  std::ifstream a(dir / "env" / (stem + ".json")), b(dir / "flag" / (stem + ".json"));
  std::stringstream sa, sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  EXPECT_EQ(sa.str(), sb.str());
  EXPECT_EQ(Shell(bin + " list-schemes >/dev/null"), 0);
  EXPECT_EQ(Shell(bin + " list-matroids >/dev/null"), 0);
  fs::remove_all(dir);
}
#endif

}  // namespace
}  // namespace ocrs::lab
