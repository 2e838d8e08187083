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

#include "ocrs/distributions.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ocrs {

ValueDistribution ValueDistribution::Uniform(double low, double high) {
  if (!(std::isfinite(low) && std::isfinite(high) && low >= 0 && low < high)) {
    throw std::invalid_argument("uniform needs 0 <= low < high");
  }
  ValueDistribution d;
  d.kind_ = Kind::kUniform;
  d.params_ = {low, high};
  return d;
}

ValueDistribution ValueDistribution::Exponential(double rate) {
  if (!(std::isfinite(rate) && rate > 0)) {
    throw std::invalid_argument("exponential needs rate > 0");
  }
  ValueDistribution d;
  d.kind_ = Kind::kExponential;
  d.params_ = {rate};
  return d;
}

ValueDistribution ValueDistribution::Pareto(double alpha, double scale) {
  if (!(std::isfinite(alpha) && std::isfinite(scale) && alpha > 0 &&
        scale > 0)) {
    throw std::invalid_argument("pareto needs alpha > 0 and scale > 0");
  }
  ValueDistribution d;
  d.kind_ = Kind::kPareto;
  d.params_ = {alpha, scale};
  return d;
}

ValueDistribution ValueDistribution::Discrete(std::vector<double> support,
                                              std::vector<double> masses,
                                              bool jitter) {
  if (support.empty() || support.size() != masses.size()) {
    throw std::invalid_argument("discrete needs matching support and masses");
  }
  double total = 0;
  for (size_t k = 0; k < support.size(); ++k) {
    if (!(std::isfinite(support[k]) && support[k] >= 0)) {
      throw std::invalid_argument("discrete support must be finite and >= 0");
    }
    if (!(masses[k] >= 0)) {
      throw std::invalid_argument("discrete masses must be >= 0");
    }
    total += masses[k];
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("discrete masses must sum to 1");
  }
  ValueDistribution d;
  d.kind_ = Kind::kDiscrete;
  d.support_ = std::move(support);
  d.masses_ = std::move(masses);
  d.jitter_ = jitter;
  d.cumulative_.resize(d.masses_.size());
  std::partial_sum(d.masses_.begin(), d.masses_.end(), d.cumulative_.begin());
  return d;
}

Value ValueDistribution::Sample(Rng& rng) const {
  switch (kind_) {
    case Kind::kUniform:
      return {params_[0] + (params_[1] - params_[0]) * rng.Uniform01(), 0.0};
    case Kind::kExponential:
      return {-std::log1p(-rng.Uniform01()) / params_[0], 0.0};
    case Kind::kPareto:
      return {params_[1] * std::pow(1.0 - rng.Uniform01(), -1.0 / params_[0]),
              0.0};
    case Kind::kDiscrete: {
      const double u = rng.Uniform01() * cumulative_.back();
      size_t k = std::upper_bound(cumulative_.begin(), cumulative_.end(), u) -
                 cumulative_.begin();
      k = std::min(k, support_.size() - 1);
      const double tie = jitter_ ? rng.Uniform01() : 0.0;
      return {support_[k], tie};
    }
  }
  return {};
}

double ValueDistribution::Cdf(double v) const {
  switch (kind_) {
    case Kind::kUniform:
      return std::clamp((v - params_[0]) / (params_[1] - params_[0]), 0.0,
                        1.0);
    case Kind::kExponential:
      return v <= 0 ? 0.0 : -std::expm1(-params_[0] * v);
    case Kind::kPareto:
      return v <= params_[1] ? 0.0 : 1.0 - std::pow(params_[1] / v, params_[0]);
    case Kind::kDiscrete: {
      double total = 0;
      for (size_t k = 0; k < support_.size(); ++k) {
        if (support_[k] <= v) total += masses_[k];
      }
      return total;
    }
  }
  return 0.0;
}

double ValueDistribution::Quantile(double q) const {
  if (!(q >= 0 && q <= 1)) throw std::invalid_argument("quantile outside [0,1]");
  switch (kind_) {
    case Kind::kUniform:
      return params_[0] + q * (params_[1] - params_[0]);
    case Kind::kExponential:
      return -std::log1p(-q) / params_[0];
    case Kind::kPareto:
      return params_[1] * std::pow(1.0 - q, -1.0 / params_[0]);
    case Kind::kDiscrete:
      break;
  }
  throw std::invalid_argument("quantile needs a continuous distribution");
}

double ValueDistribution::Mean() const {
  switch (kind_) {
    case Kind::kUniform:
      return 0.5 * (params_[0] + params_[1]);
    case Kind::kExponential:
      return 1.0 / params_[0];
    case Kind::kPareto:
      return params_[0] <= 1 ? std::numeric_limits<double>::infinity()
                             : params_[0] * params_[1] / (params_[0] - 1);
    case Kind::kDiscrete:
      return std::inner_product(support_.begin(), support_.end(),
                                masses_.begin(), 0.0);
  }
  return 0.0;
}

std::string_view KindName(ValueDistribution::Kind kind) {
  switch (kind) {
    case ValueDistribution::Kind::kUniform:
      return "uniform";
    case ValueDistribution::Kind::kExponential:
      return "exponential";
    case ValueDistribution::Kind::kPareto:
      return "pareto";
    case ValueDistribution::Kind::kDiscrete:
      return "discrete";
  }
  return "unknown";
}

std::vector<Value> SampleValues(std::span<const ValueDistribution> dists,
                                Rng& rng) {
  std::vector<Value> values;
  values.reserve(dists.size());
  for (const auto& d : dists) values.push_back(d.Sample(rng));
  return values;
}

ActiveSet ActiveSet::FromMembers(int n, std::span<const Element> members) {
  ActiveSet s(n);
  for (Element e : members) {
    if (e < 0 || e >= n) throw std::out_of_range("active element out of range");
    s.set(e, true);
  }
  return s;
}

ElementSet ActiveSet::members() const {
  ElementSet out;
  for (int e = 0; e < size(); ++e) {
    if (mask_[e]) out.push_back(e);
  }
  return out;
}

int ActiveSet::count() const {
  return static_cast<int>(std::count(mask_.begin(), mask_.end(), 1));
}

ActiveSet SampleActiveSet(std::span<const double> x, Rng& rng) {
  ActiveSet s(static_cast<int>(x.size()));
  for (size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] >= 0.0 && x[i] <= 1.0)) {
      throw std::invalid_argument("activation probability outside [0,1]");
    }
    s.set(static_cast<Element>(i), rng.Bernoulli(x[i]));
  }
  return s;
}

}  // namespace ocrs
