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

#ifndef OCRS_PROPHET_H_
#define OCRS_PROPHET_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ocrs/distributions.h"
#include "ocrs/eval.h"
#include "ocrs/matroid.h"
#include "ocrs/schemes.h"

namespace ocrs {

struct OptResult {
  ElementSet set;
  double value = 0.0;
};

// Maximum-value independent set by the greedy algorithm on the
// lexicographic (value, tiebreak) order; equal pairs go to the lower index.
OptResult OptValue(const Matroid& m, std::span<const Value> v);

// tau_i(v_{-i}) = min{ v_j : OPT_i - j + i independent }, where OPT_i is
// the greedy optimum on U \ {i}, implicitly padded with zero-value dummies.
// Returns kDummyValue when a dummy is exchangeable (OPT_i + i independent)
// and kInfiniteValue when i is a loop. v[i] is ignored.
Value ComputeTau(const Matroid& m, std::span<const Value> v, Element i);
std::vector<Value> ComputeAllTaus(const Matroid& m, std::span<const Value> v);

class ThresholdTable {
 public:
  // thresholds[i] holds T_0^i <= ... <= T_{m-1}^i; T_m^i = infinity is
  // implicit. Throws std::invalid_argument on a wrong bucket count or
  // decreasing thresholds.
  ThresholdTable(double epsilon, std::vector<std::vector<Value>> thresholds);

  // m = floor(log_{1+eps}(1/eps)). Throws std::invalid_argument unless
  // 0 < eps < 1 and m >= 1.
  static int BucketCount(double epsilon);
  // p_k = eps (1+eps)^k - eps^2.
  static double BucketProbability(double epsilon, int k);

  double epsilon() const { return epsilon_; }
  int buckets() const { return buckets_; }
  int size() const { return static_cast<int>(thresholds_.size()); }
  const std::vector<Value>& thresholds(Element i) const {
    return thresholds_[i];
  }
  double probability(int k) const { return probabilities_[k]; }

  // -1 below T_0^i, otherwise the k with T_k^i <= v < T_{k+1}^i.
  int Bucket(Element i, const Value& v) const;
  // 0 below T_0^i, p_k in bucket k.
  double ActivationProbability(Element i, const Value& v) const;

 private:
  double epsilon_;
  int buckets_;
  std::vector<double> probabilities_;
  std::vector<std::vector<Value>> thresholds_;
};

// 1-based rank ceil(eps (1+eps)^k N) of the k-th threshold among N samples.
std::int64_t OrderStatisticIndex(double epsilon, int k, std::int64_t samples);

// ceil(C log(2 n m / eps) eps^-4).
std::int64_t DefaultSampleCount(int n, double epsilon, double c = 1.0);

// Draws `samples` value vectors from `stream` and sets T_k^i to the
// OrderStatisticIndex-th smallest tau_i. The stream must carry
// StreamLabel::kThresholdLearning so that evaluation never reuses these
// draws. Throws std::invalid_argument if the sample count is too small for
// the order statistics.
ThresholdTable LearnThresholds(const Matroid& m,
                               std::span<const ValueDistribution> dists,
                               double epsilon, std::int64_t samples,
                               const SeedStream& stream, int workers = 1);

// T_k^i = quantile(i, eps (1+eps)^k): the table obtained from exact tau
// quantiles.
ThresholdTable TableFromTauQuantiles(
    double epsilon, int n, const std::function<Value(Element, double)>& quantile);

struct BucketCheck {
  Element element = 0;
  int k = 0;
  std::int64_t hits = 0;  // samples with T_k^i > tau_i
  double estimate = 0.0;
  Interval ci;
  double lower = 0.0;  // p_k
  double upper = 0.0;  // p_k + 2 eps^2
  bool pass = false;
};

struct GoodnessReport {
  std::vector<BucketCheck> buckets;
  bool all_pass = true;
  std::int64_t trials = 0;
  double z = 0.0;
};

// Estimates Pr[T_k^i > tau_i] on fresh samples. A bucket passes when its
// Wilson interval at `z` meets [p_k, p_k + 2 eps^2]. The stream must carry
// StreamLabel::kThresholdEvaluation.
GoodnessReport VerifyGoodThresholds(const ThresholdTable& table,
                                    const Matroid& m,
                                    std::span<const ValueDistribution> dists,
                                    std::int64_t trials,
                                    const SeedStream& stream, int workers = 1,
                                    double z = 3.0);

struct MarginalsReport {
  std::vector<double> x;             // P(i active)
  std::vector<double> x_half_width;  // 95% normal half width
  std::vector<double> opt_frequency;  // P(i in OPT)
  std::vector<Interval> opt_ci;
  bool dominated = true;  // x_i <= P(i in OPT) within CI for every i
  // Membership of the CI-lowered x; unset when the size is unsupported.
  std::optional<bool> in_polytope;
  std::int64_t trials = 0;
};

// Monte Carlo estimate of the activation marginals induced by the table.
// Each sample contributes the activation probability of its value rather
// than a coin flip.
MarginalsReport InducedMarginals(const ThresholdTable& table, const Matroid& m,
                                 std::span<const ValueDistribution> dists,
                                 std::int64_t trials, std::uint64_t seed,
                                 int workers = 1);

struct ProphetRun {
  std::vector<Value> values;
  ActiveSet active;
  ElementSet accepted;
  double accepted_value = 0.0;
  ElementSet opt;
  double opt_value = 0.0;
  std::optional<std::string> warning;
};

// Draws values, marks each element active with its activation probability
// and feeds the arrivals to the scheme. Throws ContractViolation if the
// accepted set is dependent or worth more than OPT.
ProphetRun RunProphet(const Matroid& m,
                      std::span<const ValueDistribution> dists,
                      const ThresholdTable& table, const OnlineScheme& scheme,
                      const ArrivalOrder& order, Rng& rng);

struct ActiveValueReport {
  double ratio = 0.0;  // E[sum of active values] / E[OPT]
  Interval ratio_ci;
  double small_value_loss = 0.0;  // E[sum_{i in OPT, v_i < T_0^i} v_i] / E[OPT]
  Interval loss_ci;
  double mean_opt = 0.0;
  std::int64_t trials = 0;
};

// Uses the expected active value given v in place of the activation coins.
ActiveValueReport ActiveValueVsOpt(const ThresholdTable& table,
                                   const Matroid& m,
                                   std::span<const ValueDistribution> dists,
                                   std::int64_t trials, std::uint64_t seed,
                                   int workers = 1);

// Competitive ratio of RunProphet with a bootstrap interval. Trial t uses
// the kProphetEvaluation stream at index t.
RatioReport EstimateProphetRatio(const Matroid& m,
                                 std::span<const ValueDistribution> dists,
                                 const ThresholdTable& table,
                                 const OnlineScheme& scheme,
                                 const OrderGenerator& order,
                                 std::int64_t trials, std::uint64_t seed,
                                 int workers = 1, int resamples = 1000);

}  // namespace ocrs

#endif  // OCRS_PROPHET_H_
