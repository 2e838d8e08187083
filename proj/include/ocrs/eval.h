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

#ifndef OCRS_EVAL_H_
#define OCRS_EVAL_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ocrs/matroid.h"
#include "ocrs/schemes.h"

namespace ocrs {

inline constexpr double kZ95 = 1.959963984540054;

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

// Wilson score interval for a binomial proportion. trials == 0 gives
// [0, 1].
Interval WilsonInterval(std::int64_t successes, std::int64_t trials,
                        double z = kZ95);

struct ElementStats {
  Element element = 0;
  std::int64_t active = 0;
  std::int64_t accepted = 0;
  // False when the element was never active; the estimate is then unset.
  bool sufficient = false;
  double estimate = 0.0;  // accepted / active
  Interval ci;
  // Decision-coin outcomes recorded on every trial, active or not. An
  // unbiased estimate of the same conditional probability that uses all
  // trials.
  std::int64_t probes = 0;
  std::int64_t probe_accepts = 0;
  double probe_estimate = 0.0;
  Interval probe_ci;
};

struct TrialReport {
  std::string scheme;
  std::vector<ElementStats> elements;
  std::optional<double> min_estimate;  // over sufficient elements
  std::optional<Element> argmin;
  double min_probe_estimate = 0.0;
  Element argmin_probe = 0;
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
  double wall_seconds = 0.0;  // informational; kept out of serialized output
  std::vector<std::string> warnings;
};

// Monte Carlo estimate of P(i accepted | i active) for every element.
// Trial t draws the order (random generators only), then R(x), then the
// scheme's coins, all from the per-trial stream. Checks x against the
// matroid polytope when the size allows (throws std::invalid_argument if x
// is outside; records a warning if the check is unsupported). Throws
// ContractViolation on any dependent accepted set.
TrialReport EstimateSelectability(const OnlineScheme& scheme,
                                  const Matroid& m, std::span<const double> x,
                                  const OrderGenerator& order,
                                  std::int64_t trials, std::uint64_t seed,
                                  int workers = 1,
                                  const ConvexCertificate* certificate =
                                      nullptr);

// b-Greedy under uniformly random arrival order.
TrialReport RcrsSelectabilityEstimate(const Matroid& m, double b,
                                      std::span<const double> x,
                                      std::int64_t trials, std::uint64_t seed,
                                      int workers = 1);

// Exact P(i accepted | i active) for a fixed order, summing over every
// start state, activity pattern and coin outcome. n <= 16.
std::vector<double> ExactSelectability(const OnlineScheme& scheme,
                                       const Matroid& m,
                                       std::span<const double> x,
                                       const ArrivalOrder& order);

// Same, averaged over all n! arrival orders. n <= 8.
std::vector<double> ExactSelectabilityRandomOrder(const OnlineScheme& scheme,
                                                  const Matroid& m,
                                                  std::span<const double> x);

struct RatioReport {
  double ratio = 0.0;  // sum ALG / sum OPT
  Interval ci;         // percentile bootstrap
  double mean_alg = 0.0;
  double mean_opt = 0.0;
  std::int64_t trials = 0;
  int resamples = 0;
  std::uint64_t seed = 0;
};

// (ALG, OPT) for trial t; must be a pure function of t.
using RatioTrial = std::function<std::pair<double, double>(std::int64_t)>;

RatioReport EstimateCompetitiveRatio(const RatioTrial& trial,
                                     std::int64_t trials, std::uint64_t seed,
                                     int workers = 1, int resamples = 1000);

// Ratio of means with a delta-method interval, from running sums.
struct RatioSums {
  double a = 0, b = 0, aa = 0, bb = 0, ab = 0;
  std::int64_t n = 0;

  void Add(double x, double y) {
    a += x;
    b += y;
    aa += x * x;
    bb += y * y;
    ab += x * y;
    ++n;
  }
  void Merge(const RatioSums& o) {
    a += o.a;
    b += o.b;
    aa += o.aa;
    bb += o.bb;
    ab += o.ab;
    n += o.n;
  }
  double Ratio() const { return b == 0 ? 0.0 : a / b; }
  Interval Ci(double z = kZ95) const;
};

// element,active,accepted,estimate,ci_lo,ci_hi
void WriteSelectabilityCsv(const TrialReport& report, std::ostream& out);

}  // namespace ocrs

#endif  // OCRS_EVAL_H_
