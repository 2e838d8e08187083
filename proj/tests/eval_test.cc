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

#include "ocrs/eval.h"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "ocrs/distributions.h"
#include "ocrs/errors.h"
#include "ocrs/instances.h"

namespace ocrs {
namespace {

TEST(WilsonTest, KnownValues) {
  const auto ci = WilsonInterval(50, 100);
  EXPECT_NEAR(ci.lo, 0.4038, 1e-4);
  EXPECT_NEAR(ci.hi, 0.5962, 1e-4);
  const auto zero = WilsonInterval(0, 100);
  EXPECT_EQ(zero.lo, 0.0);
  EXPECT_GT(zero.hi, 0.0);
  const auto empty = WilsonInterval(0, 0);
  EXPECT_EQ(empty.lo, 0.0);
  EXPECT_EQ(empty.hi, 1.0);
}

TEST(WilsonTest, CoverageOnBernoulliStreams) {
  const SeedStream stream(5, StreamLabel::kTest);
  for (double p : {0.0715, 0.37, 0.9}) {
    int covered = 0;
    const int reps = 10000;
    for (int r = 0; r < reps; ++r) {
      Rng rng = stream.ForTrial(r);
      int hits = 0;
      for (int k = 0; k < 400; ++k) hits += rng.Bernoulli(p);
      const auto ci = WilsonInterval(hits, 400);
      covered += ci.lo <= p && p <= ci.hi;
    }
    EXPECT_NEAR(covered / double(reps), 0.95, 0.01) << p;
  }
}

TEST(EstimateSelectabilityTest, AgreesWithExact) {
  Rng rng = SeedStream(6, StreamLabel::kTest).ForTrial(0);
  for (int rep = 0; rep < 6; ++rep) {
    const auto spec = RandomLaminarSpec(6, rng);
    LaminarMatroid m(spec);
    const auto x = LaminarPointAtCapacity(spec);
    BGreedy scheme(0.4);
    const auto exact = ExactSelectability(scheme, m, x, IdentityOrder(6));
    const auto report = EstimateSelectability(scheme, m, x, OrderGenerator{},
                                              40000, 100 + rep);
    for (const auto& s : report.elements) {
      ASSERT_TRUE(s.sufficient);
      const double p = exact[s.element];
      EXPECT_NEAR(s.estimate, p, 4 * std::sqrt(p * (1 - p) / s.active) + 1e-9);
      EXPECT_NEAR(s.probe_estimate, p,
                  4 * std::sqrt(p * (1 - p) / s.probes) + 1e-9);
      EXPECT_LE(s.accepted, s.active);
    }
  }
}

TEST(EstimateSelectabilityTest, ZeroPointIsInsufficient) {
  UniformMatroid m(4, 1);
  std::vector<double> x(4, 0.0);
  const auto r = EstimateSelectability(*MakeEvenMixture(), m, x,
                                       OrderGenerator{}, 1000, 1);
  for (const auto& s : r.elements) EXPECT_FALSE(s.sufficient);
  EXPECT_FALSE(r.min_estimate.has_value());
  std::ostringstream csv;
  WriteSelectabilityCsv(r, csv);
  EXPECT_NE(csv.str().find("0,0,0,insufficient,,"), std::string::npos);
}

TEST(EstimateSelectabilityTest, RejectsPointOutsidePolytope) {
  UniformMatroid m(2, 1);
  std::vector<double> x = {0.7, 0.7};
  EXPECT_THROW(EstimateSelectability(*MakeEvenMixture(), m, x,
                                     OrderGenerator{}, 100, 1),
               std::invalid_argument);
  std::vector<double> ok = {0.5, 0.5};
  EXPECT_THROW(EstimateSelectability(*MakeEvenMixture(), m, ok,
                                     OrderGenerator{}, 0, 1),
               std::invalid_argument);
}

TEST(EstimateSelectabilityTest, WorkerCountDoesNotChangeResults) {
  Rng rng = SeedStream(8, StreamLabel::kTest).ForTrial(0);
  const auto spec = RandomLaminarSpec(9, rng);
  LaminarMatroid m(spec);
  const auto x = LaminarPointAtCapacity(spec);
  OrderGenerator random{OrderKind::kRandom, 0};
  const auto a = EstimateSelectability(BGreedy(0.3), m, x, random, 20000, 7, 1);
  const auto b = EstimateSelectability(BGreedy(0.3), m, x, random, 20000, 7, 4);
  std::ostringstream ca, cb;
  WriteSelectabilityCsv(a, ca);
  WriteSelectabilityCsv(b, cb);
  EXPECT_EQ(ca.str(), cb.str());
  for (size_t e = 0; e < a.elements.size(); ++e) {
    EXPECT_EQ(a.elements[e].probe_accepts, b.elements[e].probe_accepts);
  }
}

TEST(ExactSelectabilityTest, RejectsLargeInstances) {
  UniformMatroid m(17, 1);
  std::vector<double> x(17, 0.01);
  EXPECT_THROW(
      ExactSelectability(*MakeGreedySingle(), m, x, IdentityOrder(17)),
      UnsupportedSize);
}

TEST(CompetitiveRatioTest, TrivialSchemes) {
  const auto none = EstimateCompetitiveRatio(
      [](std::int64_t t) { return std::make_pair(0.0, 1.0 + t % 3); }, 5000,
      1);
  EXPECT_EQ(none.ratio, 0.0);
  EXPECT_EQ(none.ci.hi, 0.0);
  const auto all = EstimateCompetitiveRatio(
      [](std::int64_t t) {
        const double v = 1.0 + t % 7;
        return std::make_pair(v, v);
      },
      5000, 1);
  EXPECT_EQ(all.ratio, 1.0);
  EXPECT_NEAR(all.ci.lo, 1.0, 1e-12);
}

TEST(CompetitiveRatioTest, BootstrapCoversKnownRatio) {
  const SeedStream stream(3, StreamLabel::kTest);
  auto trial = [&](std::int64_t t) {
    Rng rng = stream.ForTrial(t);
    const double opt = 1.0 + rng.Uniform01();
    return std::make_pair(rng.Bernoulli(0.4) ? opt : 0.0, opt);
  };
  const auto r1 = EstimateCompetitiveRatio(trial, 20000, 9, 1);
  const auto r3 = EstimateCompetitiveRatio(trial, 20000, 9, 3);
  EXPECT_LT(r1.ci.lo, 0.4);
  EXPECT_GT(r1.ci.hi, 0.4);
  EXPECT_EQ(r1.ratio, r3.ratio);
  EXPECT_EQ(r1.ci.lo, r3.ci.lo);
  EXPECT_EQ(r1.ci.hi, r3.ci.hi);
}

TEST(RatioSumsTest, DeltaMethod) {
  RatioSums s;
  Rng rng = SeedStream(4, StreamLabel::kTest).ForTrial(0);
  for (int k = 0; k < 50000; ++k) {
    const double b = 1 + rng.Uniform01();
    s.Add(0.25 * b + 0.1 * (rng.Uniform01() - 0.5), b);
  }
  const auto ci = s.Ci();
  EXPECT_LT(ci.lo, 0.25);
  EXPECT_GT(ci.hi, 0.25);
  EXPECT_LT(ci.hi - ci.lo, 0.01);
}

}  // namespace
}  // namespace ocrs
