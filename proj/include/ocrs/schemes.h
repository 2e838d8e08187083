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

#ifndef OCRS_SCHEMES_H_
#define OCRS_SCHEMES_H_

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ocrs/distributions.h"
#include "ocrs/matroid.h"
#include "ocrs/rng.h"

namespace ocrs {

// Per-run decision state of an online scheme. The state sees only the
// arrivals so far; schemes never receive the fractional point.
class SchemeState {
 public:
  virtual ~SchemeState() = default;
  // Probability of accepting `e` if it is active now, given the history.
  // Must be 0 whenever accepting would break independence.
  virtual double AcceptProbability(Element e) const = 0;
  virtual void Observe(Element e, bool active, bool accepted) = 0;
  virtual std::unique_ptr<SchemeState> Clone() const = 0;
};

struct WeightedState {
  double weight;
  std::unique_ptr<SchemeState> state;
};

class OnlineScheme {
 public:
  virtual ~OnlineScheme() = default;
  virtual std::string Name() const = 0;
  // Initial states with their probabilities. A scheme that flips a coin
  // before the first arrival returns one state per outcome.
  virtual std::vector<WeightedState> Start(const Matroid& m) const = 0;
  // Set when the scheme's guarantee does not cover this matroid. The scheme
  // still runs and still outputs an independent set.
  virtual std::optional<std::string> CompatibilityWarning(
      const Matroid& m) const = 0;
};

// Single-item policy whose acceptance probability depends only on how many
// active elements have been seen: the k-th active element (1-based) is
// accepted with probability p_k, zero past the end of the list. Stops after
// the first acceptance.
class CountingScheme : public OnlineScheme {
 public:
  explicit CountingScheme(std::vector<double> p, std::string name = "counting");
  std::string Name() const override { return name_; }
  std::vector<WeightedState> Start(const Matroid& m) const override;
  std::optional<std::string> CompatibilityWarning(
      const Matroid& m) const override;
  const std::vector<double>& probabilities() const { return p_; }

 private:
  std::vector<double> p_;
  std::string name_;
};

// Accepts the first active element.
std::unique_ptr<OnlineScheme> MakeGreedySingle();
// Passes the first active element and accepts the second.
std::unique_ptr<OnlineScheme> MakeAcceptSecond();
// Accepts nothing; a baseline.
std::unique_ptr<OnlineScheme> MakeAcceptNothing();

// Picks one component scheme with the given probability before the first
// arrival and runs it throughout.
class MixtureScheme : public OnlineScheme {
 public:
  struct Component {
    double weight;
    std::shared_ptr<const OnlineScheme> scheme;
  };
  MixtureScheme(std::vector<Component> components, std::string name);
  std::string Name() const override { return name_; }
  std::vector<WeightedState> Start(const Matroid& m) const override;
  std::optional<std::string> CompatibilityWarning(
      const Matroid& m) const override;

 private:
  std::vector<Component> components_;
  std::string name_;
};

// Greedy and Accept-Second with probability 1/2 each.
std::unique_ptr<OnlineScheme> MakeEvenMixture();

// Accepts each active element that keeps the output independent with
// probability b.
class BGreedy : public OnlineScheme {
 public:
  explicit BGreedy(double b);
  std::string Name() const override { return "b_greedy"; }
  std::vector<WeightedState> Start(const Matroid& m) const override;
  std::optional<std::string> CompatibilityWarning(
      const Matroid& m) const override;
  double b() const { return b_; }

 private:
  double b_;
};

enum class OrderKind { kIdentity, kReverse, kDescendingX, kTargetLast, kRandom };

std::string_view OrderKindName(OrderKind kind);
std::optional<OrderKind> ParseOrderKind(std::string_view name);

struct ArrivalOrder {
  std::vector<Element> sequence;
  OrderKind provenance = OrderKind::kIdentity;
};

ArrivalOrder IdentityOrder(int n);
// Throws std::invalid_argument unless `sequence` is a permutation of 0..n-1.
void ValidateOrder(const ArrivalOrder& order, int n);

// Adversarial and random order families. The generator may look at x; the
// scheme never does.
struct OrderGenerator {
  OrderKind kind = OrderKind::kIdentity;
  Element target = 0;  // used by kTargetLast

  // Draws from `rng` only for kRandom.
  ArrivalOrder Generate(int n, std::span<const double> x, Rng& rng) const;
  // Same order for every trial.
  bool deterministic() const { return kind != OrderKind::kRandom; }
};

struct TraceEntry {
  Element element;
  bool active;
  // Outcome of the decision coin had the element been active. Its mean is
  // exactly P(accepted | active) because the history never depends on the
  // element's own activity.
  bool would_accept;
  bool accepted;
};

struct SchemeRun {
  ElementSet accepted;
  std::vector<TraceEntry> trace;  // in arrival order
  std::optional<std::string> warning;
};

// Runs `scheme` on the arrival order. Draws the start coin and then one
// decision coin per arrival, whether or not the element is active. Throws
// ContractViolation if the accepted set is not independent.
SchemeRun RunScheme(const OnlineScheme& scheme, const Matroid& m,
                    const ArrivalOrder& order, const ActiveSet& active,
                    Rng& rng);

// Convenience wrappers over RunScheme.
SchemeRun RunGreedySingle(const Matroid& m, const ArrivalOrder& order,
                          const ActiveSet& active, Rng& rng);
SchemeRun RunAcceptSecond(const Matroid& m, const ArrivalOrder& order,
                          const ActiveSet& active, Rng& rng);
SchemeRun RunEvenMixture(const Matroid& m, const ArrivalOrder& order,
                         const ActiveSet& active, Rng& rng);
SchemeRun RunBGreedy(const Matroid& m, double b, const ArrivalOrder& order,
                     const ActiveSet& active, Rng& rng);

// Single-item analysis.

// f_n(x) = prod_j (1 - x_j) + sum_j x_j prod_{k != j} (1 - x_k).
double FN(std::span<const double> x);

struct FnMinimum {
  std::vector<double> argmin;
  double value;
};

// Minimizes f_n over {x >= 0, sum x <= 1} by a grid search followed by
// Nelder-Mead refinement. Requires 1 <= n <= 6; throws UnsupportedSize
// otherwise.
FnMinimum MinimizeFN(int n);

// Exact P(element n accepted | active) for a counting strategy on the
// instance x_i = 1/n.
double CountingSelectabilityUniform(std::span<const double> p, int n);

// b (1 - c / (1 - c)) with c = b e^{1-b}. Throws std::domain_error when
// c >= 1.
double BGreedyLowerBound(double b);

// b (1 - (b e^{1-b})^r); 0 for r = 0.
double UniformRankBound(double b, int r);

}  // namespace ocrs

#endif  // OCRS_SCHEMES_H_
