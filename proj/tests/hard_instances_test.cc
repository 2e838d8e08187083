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

#include "ocrs/hard_instances.h"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "oracles.h"

namespace ocrs {
namespace {

TEST(BuildTest, SingleEdge) {
  for (auto inst : {HardInstance::Graphic(1, 1), HardInstance::Transversal(1, 1)}) {
    EXPECT_EQ(inst.matroid().size(), 1);
    EXPECT_EQ(inst.Point(0), std::vector<double>{1.0});
    EXPECT_EQ(inst.AveragePoint(), std::vector<double>{1.0});
    EXPECT_TRUE(inst.matroid().IsIndependent(ElementSet{0}));
  }
}

TEST(BuildTest, GraphicRank) {
  const auto inst = HardInstance::Graphic(3, 2);
  EXPECT_EQ(inst.matroid().size(), 6);
  EXPECT_EQ(inst.matroid().Rank(), 4);
  EXPECT_THROW(HardInstance::Graphic(0, 2), std::invalid_argument);
}

TEST(BuildTest, TransversalRankOfTwoFullBlocks) {
  const auto inst = HardInstance::Transversal(3, 3);
  ElementSet two = inst.Block(0);
  for (Element e : inst.Block(2)) two.push_back(e);
  EXPECT_EQ(inst.matroid().Rank(two), 4);
}

TEST(CertificateTest, PartsAreIndependentAndAverageToPoint) {
  for (int n : {1, 2, 5, 9}) {
    for (int m : {1, 2, 3, 4}) {
      for (auto inst :
           {HardInstance::Graphic(n, m), HardInstance::Transversal(n, m)}) {
        for (int i = 0; i < n; ++i) {
          EXPECT_EQ(VerifyCertificate(inst, i), "")
              << inst.KindName() << " N=" << n << " M=" << m << " i=" << i;
          const auto cert = inst.Certificate(i);
          for (const auto& part : cert.parts) {
            // Spanning trees of K_{N,M} and maximum matchings alike.
            EXPECT_EQ(static_cast<int>(part.size()), n + m - 1);
          }
          EXPECT_TRUE(
              InMatroidPolytope(inst.matroid(), inst.Point(i), &cert));
          EXPECT_TRUE(
              InMatroidPolytope(inst.matroid(), inst.AveragePoint(), &cert));
        }
      }
    }
  }
}

TEST(CertificateTest, AgreesWithEnumerationOnSmallInstances) {
  for (auto inst : {HardInstance::Graphic(3, 2), HardInstance::Transversal(2, 3),
                    HardInstance::Graphic(2, 4)}) {
    for (int i = 0; i < inst.N(); ++i) {
      const auto check = CheckPolytopeMembership(inst.matroid(), inst.Point(i));
      EXPECT_EQ(check.method, "enumeration");
      EXPECT_TRUE(check.member);
    }
  }
}

TEST(UStarTest, ExactLawIsBinomial) {
  for (auto inst : {HardInstance::Graphic(3, 2), HardInstance::Transversal(3, 2)}) {
    const auto law = UStarExactDistribution(inst);
    const double p = 0.25;
    for (int k = 0; k <= 3; ++k) {
      EXPECT_NEAR(law[k],
                  oracle::Binomial(3, k) * std::pow(p, k) * std::pow(1 - p, 3 - k),
                  1e-14);
    }
  }
}

TEST(UStarTest, MeanAndRankIdentity) {
  for (auto inst :
       {HardInstance::Graphic(64, 2), HardInstance::Transversal(64, 2)}) {
    const auto s = UStarExperiment(inst, 20000, 5);
    EXPECT_NEAR(s.expected, 16.0, 1e-12);
    EXPECT_NEAR(s.mean, 16.0, 4 * s.sd_of_mean);
    EXPECT_EQ(s.rank_failures, 0);
    EXPECT_GT(s.nonempty_trials, 0);
  }
}

TEST(UStarTest, EmptyTrialsAreHandled) {
  // With N = 1, M = 3 the block is full with probability 1/27.
  const auto s = UStarExperiment(HardInstance::Graphic(1, 3), 5000, 2);
  EXPECT_GT(s.histogram.at(0), 0);
  EXPECT_EQ(s.rank_failures, 0);
}

TEST(UStarTest, WorkerCountDoesNotMatter) {
  const auto inst = HardInstance::Transversal(20, 3);
  const auto a = UStarExperiment(inst, 10000, 8, 1);
  const auto b = UStarExperiment(inst, 10000, 8, 3);
  EXPECT_EQ(a.histogram, b.histogram);
  EXPECT_EQ(a.mean, b.mean);
}

TEST(ConditionalTest, ExactIdentity) {
  const auto inst = HardInstance::Graphic(2, 2);
  for (int i = 0; i < 2; ++i) {
    const auto r = ConditionalIdentityCheck(inst, i, i, 0, 0);
    EXPECT_EQ(r.method, "exact");
    EXPECT_NEAR(r.total_variation, 0.0, 1e-15);
    EXPECT_TRUE(r.identical);
  }
  const auto wrong = ConditionalIdentityCheck(inst, 0, 1, 0, 0);
  EXPECT_GT(wrong.total_variation, 0.1);
  EXPECT_FALSE(wrong.identical);
}

TEST(ConditionalTest, ChiSquareOnLargerInstance) {
  const auto inst = HardInstance::Transversal(10, 2);
  const auto same = ConditionalIdentityCheck(inst, 3, 3, 40000, 1);
  EXPECT_EQ(same.method, "chi_square");
  EXPECT_GT(same.conditioned_samples, 5000);
  EXPECT_TRUE(same.identical) << same.p_value;
  const auto wrong = ConditionalIdentityCheck(inst, 3, 4, 40000, 1);
  EXPECT_FALSE(wrong.identical);
}

TEST(BoundTest, Values) {
  EXPECT_DOUBLE_EQ(BalancednessUpperBound(100, 2, 0), 0.52);
  EXPECT_NEAR(BalancednessUpperBound(1e4, 3, 0), 0.3351, 1e-4);
  EXPECT_EQ(BalancednessUpperBound(64, 2, 0), 0.53125);
  EXPECT_NEAR(BalancednessUpperBound(1e15, 4, 0), 0.25, 1e-9);
  EXPECT_NEAR(BalancednessUpperBound(1e6, 2, 1), 0.5 + 8.0 / 1e6, 1e-15);
  double previous = std::numeric_limits<double>::infinity();
  for (double n = 1; n < 1e6; n *= 3) {
    const double b = BalancednessUpperBound(n, 3, 0);
    EXPECT_LT(b, previous);
    previous = b;
  }
}

TEST(StressTest, ObliviousSchemesStayBelowBound) {
  const auto inst = HardInstance::Graphic(729, 3);
  const auto r = StressObliviousScheme(BGreedy(0.13), inst, 400, 3,
                                       {0, 364, 728});
  EXPECT_EQ(r.blocks.size(), 3u);
  EXPECT_NEAR(r.bound, 1.0 / 3 + 18.0 / 729, 1e-12);
  EXPECT_TRUE(r.within_bound);
  EXPECT_FALSE(r.warnings.empty());
  const auto none = StressObliviousScheme(*MakeAcceptNothing(), inst, 50, 3, {5});
  EXPECT_EQ(none.balancedness, 0.0);
  EXPECT_TRUE(none.within_bound);
}

TEST(StressTest, ClairvoyantControlKeepsEveryProbedElement) {
  for (auto inst :
       {HardInstance::Graphic(30, 3), HardInstance::Transversal(30, 3)}) {
    const auto r = StressClairvoyantControl(inst, 200, 4, {0, 17, 29});
    EXPECT_EQ(r.balancedness, 1.0);
    EXPECT_GE(r.balancedness, 1.0 / inst.M());
  }
}

}  // namespace
}  // namespace ocrs
