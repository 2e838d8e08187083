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

#ifndef OCRS_DISTRIBUTIONS_H_
#define OCRS_DISTRIBUTIONS_H_

#include <compare>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ocrs/matroid.h"
#include "ocrs/rng.h"

namespace ocrs {

// A realized element value. Comparisons are lexicographic on
// (value, tiebreak); only `value` counts toward totals. Atoms of discrete
// distributions get a uniform tiebreak so that comparisons between draws are
// almost surely strict.
struct Value {
  double value = 0.0;
  double tiebreak = 0.0;

  friend auto operator<=>(const Value&, const Value&) = default;
};

// Strictly below every draw from a nonnegative distribution; stands in for
// the zero-value padding elements.
inline constexpr Value kDummyValue{0.0, -1.0};
inline constexpr Value kInfiniteValue{std::numeric_limits<double>::infinity(),
                                      0.0};

class ValueDistribution {
 public:
  enum class Kind { kUniform, kExponential, kPareto, kDiscrete };

  // All constructors throw std::invalid_argument on bad parameters.
  static ValueDistribution Uniform(double low, double high);
  static ValueDistribution Exponential(double rate);
  static ValueDistribution Pareto(double alpha, double scale);
  static ValueDistribution Discrete(std::vector<double> support,
                                    std::vector<double> masses, bool jitter);

  Value Sample(Rng& rng) const;
  // P(V <= v) for the numeric part of the value.
  double Cdf(double v) const;
  // Inverse CDF; continuous kinds only.
  double Quantile(double q) const;
  double Mean() const;

  Kind kind() const { return kind_; }
  bool continuous() const { return kind_ != Kind::kDiscrete; }
  bool jitter() const { return jitter_; }
  // uniform: {low, high}; exponential: {rate}; pareto: {alpha, scale}.
  const std::vector<double>& params() const { return params_; }
  const std::vector<double>& support() const { return support_; }
  const std::vector<double>& masses() const { return masses_; }

 private:
  ValueDistribution() = default;

  Kind kind_ = Kind::kUniform;
  std::vector<double> params_;
  std::vector<double> support_;
  std::vector<double> masses_;
  std::vector<double> cumulative_;
  bool jitter_ = false;
};

std::string_view KindName(ValueDistribution::Kind kind);

// One independent draw per element.
std::vector<Value> SampleValues(std::span<const ValueDistribution> dists,
                                Rng& rng);

// Random subset R(x): element i is present independently with probability
// x_i.
class ActiveSet {
 public:
  ActiveSet() = default;
  explicit ActiveSet(int n) : mask_(n, 0) {}
  static ActiveSet FromMembers(int n, std::span<const Element> members);

  int size() const { return static_cast<int>(mask_.size()); }
  bool contains(Element e) const { return mask_[e] != 0; }
  void set(Element e, bool active) { mask_[e] = active ? 1 : 0; }
  ElementSet members() const;
  int count() const;

 private:
  std::vector<char> mask_;
};

// Throws std::invalid_argument if some x_i lies outside [0,1].
ActiveSet SampleActiveSet(std::span<const double> x, Rng& rng);

}  // namespace ocrs

#endif  // OCRS_DISTRIBUTIONS_H_
