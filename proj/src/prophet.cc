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

#include "ocrs/prophet.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ocrs/errors.h"
#include "ocrs/parallel.h"

namespace ocrs {
namespace {

std::vector<Element> ByValueDescending(std::span<const Value> v) {
  std::vector<Element> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Element a, Element b) { return v[a] > v[b]; });
  return order;
}

Value TauGivenOrder(const Matroid& m, std::span<const Value> v,
                    const std::vector<Element>& order, Element i) {
  auto state = m.NewState();
  std::vector<Element> opt_i;
  for (Element e : order) {
    if (e == i || !state->CanAdd(e)) continue;
    state->Add(e);
    opt_i.push_back(e);
  }
  if (state->CanAdd(i)) return kDummyValue;
  // opt_i is sorted by decreasing value, so the first feasible swap from
  // the back is the minimum.
  for (size_t back = opt_i.size(); back-- > 0;) {
    auto swapped = m.NewState();
    for (size_t k = 0; k < opt_i.size(); ++k) {
      if (k != back) swapped->Add(opt_i[k]);
    }
    if (swapped->CanAdd(i)) return v[opt_i[back]];
  }
  return kInfiniteValue;
}

void CheckDists(const Matroid& m, std::span<const ValueDistribution> dists) {
  if (static_cast<int>(dists.size()) != m.size()) {
    throw std::invalid_argument("need one distribution per element");
  }
}

void CheckLabel(const SeedStream& stream, StreamLabel want, const char* what) {
  if (stream.label() != want) {
    throw std::invalid_argument(std::string(what) +
                                " requires its own stream label");
  }
}

}  // namespace

OptResult OptValue(const Matroid& m, std::span<const Value> v) {
  if (static_cast<int>(v.size()) != m.size()) {
    throw std::invalid_argument("value vector has wrong length");
  }
  OptResult out;
  auto state = m.NewState();
  for (Element e : ByValueDescending(v)) {
    if (!state->CanAdd(e)) continue;
    state->Add(e);
    out.set.push_back(e);
    out.value += v[e].value;
  }
  std::sort(out.set.begin(), out.set.end());
  return out;
}

Value ComputeTau(const Matroid& m, std::span<const Value> v, Element i) {
  if (static_cast<int>(v.size()) != m.size()) {
    throw std::invalid_argument("value vector has wrong length");
  }
  if (i < 0 || i >= m.size()) throw std::out_of_range("element out of range");
  return TauGivenOrder(m, v, ByValueDescending(v), i);
}

std::vector<Value> ComputeAllTaus(const Matroid& m, std::span<const Value> v) {
  if (static_cast<int>(v.size()) != m.size()) {
    throw std::invalid_argument("value vector has wrong length");
  }
  const auto order = ByValueDescending(v);
  std::vector<Value> taus(v.size());
  for (int i = 0; i < m.size(); ++i) taus[i] = TauGivenOrder(m, v, order, i);
  return taus;
}

int ThresholdTable::BucketCount(double epsilon) {
  if (!(epsilon > 0 && epsilon < 1)) {
    throw std::invalid_argument("epsilon out of (0,1)");
  }
  const double m = std::log(1.0 / epsilon) / std::log1p(epsilon);
  const int buckets = static_cast<int>(std::floor(m + 1e-12));
  if (buckets < 1) {
    throw std::invalid_argument("epsilon too large: no threshold buckets");
  }
  return buckets;
}

double ThresholdTable::BucketProbability(double epsilon, int k) {
  return epsilon * std::pow(1.0 + epsilon, k) - epsilon * epsilon;
}

ThresholdTable::ThresholdTable(double epsilon,
                               std::vector<std::vector<Value>> thresholds)
    : epsilon_(epsilon),
      buckets_(BucketCount(epsilon)),
      thresholds_(std::move(thresholds)) {
  for (int k = 0; k < buckets_; ++k) {
    probabilities_.push_back(BucketProbability(epsilon_, k));
  }
  for (const auto& row : thresholds_) {
    if (static_cast<int>(row.size()) != buckets_) {
      throw std::invalid_argument("threshold row has wrong bucket count");
    }
    if (!std::is_sorted(row.begin(), row.end())) {
      throw std::invalid_argument("thresholds must be nondecreasing in k");
    }
  }
}

int ThresholdTable::Bucket(Element i, const Value& v) const {
  const auto& row = thresholds_.at(i);
  return static_cast<int>(std::upper_bound(row.begin(), row.end(), v) -
                          row.begin()) -
         1;
}

double ThresholdTable::ActivationProbability(Element i, const Value& v) const {
  const int k = Bucket(i, v);
  return k < 0 ? 0.0 : probabilities_[k];
}

std::int64_t OrderStatisticIndex(double epsilon, int k, std::int64_t samples) {
  const double q = epsilon * std::pow(1.0 + epsilon, k) *
                   static_cast<double>(samples);
  return static_cast<std::int64_t>(std::ceil(q * (1.0 - 1e-12)));
}

std::int64_t DefaultSampleCount(int n, double epsilon, double c) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (!(c > 0)) throw std::invalid_argument("sample constant must be > 0");
  const int m = ThresholdTable::BucketCount(epsilon);
  return static_cast<std::int64_t>(std::ceil(
      c * std::log(2.0 * n * m / epsilon) * std::pow(epsilon, -4.0)));
}

ThresholdTable LearnThresholds(const Matroid& m,
                               std::span<const ValueDistribution> dists,
                               double epsilon, std::int64_t samples,
                               const SeedStream& stream, int workers) {
  CheckDists(m, dists);
  CheckLabel(stream, StreamLabel::kThresholdLearning, "threshold learning");
  const int buckets = ThresholdTable::BucketCount(epsilon);
  if (samples < 1) throw std::invalid_argument("sample count must be >= 1");
  for (int k = 0; k < buckets; ++k) {
    const auto idx = OrderStatisticIndex(epsilon, k, samples);
    if (idx < 1 || idx > samples) {
      throw std::invalid_argument("sample count too small for the order "
                                  "statistics");
    }
  }
  const int n = m.size();
  std::vector<std::vector<Value>> taus(n, std::vector<Value>(samples));
  struct Nothing {};
  ParallelTrials(
      samples, workers, Nothing{},
      [&](std::int64_t s, Nothing&) {
        Rng rng = stream.ForTrial(static_cast<std::uint64_t>(s));
        const auto v = SampleValues(dists, rng);
        const auto t = ComputeAllTaus(m, v);
        for (int i = 0; i < n; ++i) taus[i][s] = t[i];
      },
      [](Nothing&, const Nothing&) {});

  std::vector<std::vector<Value>> table(n);
  for (int i = 0; i < n; ++i) {
    std::sort(taus[i].begin(), taus[i].end());
    for (int k = 0; k < buckets; ++k) {
      table[i].push_back(taus[i][OrderStatisticIndex(epsilon, k, samples) - 1]);
    }
    std::vector<Value>().swap(taus[i]);
  }
  return ThresholdTable(epsilon, std::move(table));
}

ThresholdTable TableFromTauQuantiles(
    double epsilon, int n,
    const std::function<Value(Element, double)>& quantile) {
  const int buckets = ThresholdTable::BucketCount(epsilon);
  std::vector<std::vector<Value>> table(n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < buckets; ++k) {
      table[i].push_back(quantile(i, epsilon * std::pow(1.0 + epsilon, k)));
    }
  }
  return ThresholdTable(epsilon, std::move(table));
}

GoodnessReport VerifyGoodThresholds(const ThresholdTable& table,
                                    const Matroid& m,
                                    std::span<const ValueDistribution> dists,
                                    std::int64_t trials,
                                    const SeedStream& stream, int workers,
                                    double z) {
  CheckDists(m, dists);
  CheckLabel(stream, StreamLabel::kThresholdEvaluation,
             "threshold verification");
  if (trials <= 0) throw std::invalid_argument("trials must be positive");
  if (table.size() != m.size()) {
    throw std::invalid_argument("threshold table has wrong size");
  }
  const int n = m.size();
  const int buckets = table.buckets();
  using Hits = std::vector<std::int64_t>;
  const Hits hits = ParallelTrials(
      trials, workers, Hits(static_cast<size_t>(n) * buckets, 0),
      [&](std::int64_t t, Hits& acc) {
        Rng rng = stream.ForTrial(static_cast<std::uint64_t>(t));
        const auto v = SampleValues(dists, rng);
        const auto taus = ComputeAllTaus(m, v);
        for (int i = 0; i < n; ++i) {
          const auto& row = table.thresholds(i);
          for (int k = 0; k < buckets; ++k) {
            acc[i * buckets + k] += row[k] > taus[i];
          }
        }
      },
      [](Hits& into, const Hits& from) {
        for (size_t k = 0; k < into.size(); ++k) into[k] += from[k];
      });

  GoodnessReport report;
  report.trials = trials;
  report.z = z;
  const double eps = table.epsilon();
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < buckets; ++k) {
      BucketCheck b;
      b.element = i;
      b.k = k;
      b.hits = hits[i * buckets + k];
      b.estimate = static_cast<double>(b.hits) / trials;
      b.ci = WilsonInterval(b.hits, trials, z);
      b.lower = table.probability(k);
      b.upper = table.probability(k) + 2 * eps * eps;
      b.pass = b.ci.hi >= b.lower && b.ci.lo <= b.upper;
      report.all_pass = report.all_pass && b.pass;
      report.buckets.push_back(b);
    }
  }
  return report;
}

MarginalsReport InducedMarginals(const ThresholdTable& table, const Matroid& m,
                                 std::span<const ValueDistribution> dists,
                                 std::int64_t trials, std::uint64_t seed,
                                 int workers) {
  CheckDists(m, dists);
  if (trials <= 0) throw std::invalid_argument("trials must be positive");
  const int n = m.size();
  struct Acc {
    std::vector<double> sum, sumsq;
    std::vector<std::int64_t> in_opt;
  };
  const SeedStream stream(seed, StreamLabel::kMarginals);
  Acc zero{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0),
           std::vector<std::int64_t>(n, 0)};
  const Acc total = ParallelTrials(
      trials, workers, zero,
      [&](std::int64_t t, Acc& acc) {
        Rng rng = stream.ForTrial(static_cast<std::uint64_t>(t));
        const auto v = SampleValues(dists, rng);
        for (int i = 0; i < n; ++i) {
          const double a = table.ActivationProbability(i, v[i]);
          acc.sum[i] += a;
          acc.sumsq[i] += a * a;
        }
        for (Element e : OptValue(m, v).set) ++acc.in_opt[e];
      },
      [](Acc& into, const Acc& from) {
        for (size_t i = 0; i < into.sum.size(); ++i) {
          into.sum[i] += from.sum[i];
          into.sumsq[i] += from.sumsq[i];
          into.in_opt[i] += from.in_opt[i];
        }
      });

  MarginalsReport report;
  report.trials = trials;
  std::vector<double> lowered(n);
  for (int i = 0; i < n; ++i) {
    const double mean = total.sum[i] / trials;
    const double var = std::max(0.0, total.sumsq[i] / trials - mean * mean);
    report.x.push_back(mean);
    report.x_half_width.push_back(kZ95 * std::sqrt(var / trials));
    report.opt_frequency.push_back(static_cast<double>(total.in_opt[i]) /
                                   trials);
    report.opt_ci.push_back(WilsonInterval(total.in_opt[i], trials));
    if (mean > report.opt_ci[i].hi + report.x_half_width[i]) {
      report.dominated = false;
    }
    lowered[i] = std::clamp(mean - report.x_half_width[i], 0.0, 1.0);
  }
  try {
    report.in_polytope = CheckPolytopeMembership(m, lowered).member;
  } catch (const UnsupportedSize&) {
    report.in_polytope.reset();
  }
  return report;
}

ProphetRun RunProphet(const Matroid& m,
                      std::span<const ValueDistribution> dists,
                      const ThresholdTable& table, const OnlineScheme& scheme,
                      const ArrivalOrder& order, Rng& rng) {
  CheckDists(m, dists);
  ProphetRun run;
  run.values = SampleValues(dists, rng);
  run.active = ActiveSet(m.size());
  for (int i = 0; i < m.size(); ++i) {
    run.active.set(i,
                   rng.Bernoulli(table.ActivationProbability(i, run.values[i])));
  }
  SchemeRun s = RunScheme(scheme, m, order, run.active, rng);
  run.warning = s.warning;
  run.accepted = std::move(s.accepted);
  for (Element e : run.accepted) run.accepted_value += run.values[e].value;
  auto opt = OptValue(m, run.values);
  run.opt = std::move(opt.set);
  run.opt_value = opt.value;
  if (run.accepted_value > run.opt_value * (1 + 1e-12) + 1e-12) {
    throw ContractViolation("accepted value exceeds OPT");
  }
  return run;
}

ActiveValueReport ActiveValueVsOpt(const ThresholdTable& table,
                                   const Matroid& m,
                                   std::span<const ValueDistribution> dists,
                                   std::int64_t trials, std::uint64_t seed,
                                   int workers) {
  CheckDists(m, dists);
  if (trials <= 0) throw std::invalid_argument("trials must be positive");
  const SeedStream stream(seed, StreamLabel::kProphetEvaluation);
  struct Acc {
    RatioSums active, loss;
  };
  const Acc total = ParallelTrials(
      trials, workers, Acc{},
      [&](std::int64_t t, Acc& acc) {
        Rng rng = stream.ForTrial(static_cast<std::uint64_t>(t));
        const auto v = SampleValues(dists, rng);
        const auto opt = OptValue(m, v);
        double active = 0, loss = 0;
        for (int i = 0; i < m.size(); ++i) {
          active += table.ActivationProbability(i, v[i]) * v[i].value;
        }
        for (Element e : opt.set) {
          if (v[e] < table.thresholds(e).front()) loss += v[e].value;
        }
        acc.active.Add(active, opt.value);
        acc.loss.Add(loss, opt.value);
      },
      [](Acc& into, const Acc& from) {
        into.active.Merge(from.active);
        into.loss.Merge(from.loss);
      });
  ActiveValueReport report;
  report.trials = trials;
  report.ratio = total.active.Ratio();
  report.ratio_ci = total.active.Ci();
  report.small_value_loss = total.loss.Ratio();
  report.loss_ci = total.loss.Ci();
  report.mean_opt = total.active.b / trials;
  return report;
}

RatioReport EstimateProphetRatio(const Matroid& m,
                                 std::span<const ValueDistribution> dists,
                                 const ThresholdTable& table,
                                 const OnlineScheme& scheme,
                                 const OrderGenerator& order,
                                 std::int64_t trials, std::uint64_t seed,
                                 int workers, int resamples) {
  CheckDists(m, dists);
  const SeedStream stream(seed, StreamLabel::kProphetEvaluation);
  if (order.kind == OrderKind::kDescendingX) {
    throw std::invalid_argument("descending_x order needs a fractional point");
  }
  const std::vector<double> no_x;
  Rng unused(0);
  const ArrivalOrder fixed = order.deterministic()
                                 ? order.Generate(m.size(), no_x, unused)
                                 : IdentityOrder(m.size());
  return EstimateCompetitiveRatio(
      [&](std::int64_t t) {
        Rng rng = stream.ForTrial(static_cast<std::uint64_t>(t));
        const ArrivalOrder drawn = order.deterministic()
                                       ? fixed
                                       : order.Generate(m.size(), no_x, rng);
        const auto run = RunProphet(m, dists, table, scheme, drawn, rng);
        return std::make_pair(run.accepted_value, run.opt_value);
      },
      trials, seed, workers, resamples);
}

}  // namespace ocrs
