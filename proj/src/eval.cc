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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

#include "ocrs/distributions.h"
#include "ocrs/errors.h"
#include "ocrs/parallel.h"

namespace ocrs {
namespace {

struct Counts {
  std::vector<std::int64_t> active, accepted, probe_accepts;
  std::int64_t probes = 0;
  std::vector<std::string> warnings;
};

void ExactDfs(const std::vector<Element>& seq, size_t pos, double weight,
              const SchemeState& state, std::span<const double> x,
              std::vector<double>& out) {
  if (pos == seq.size() || weight == 0.0) return;
  const Element e = seq[pos];
  const double p = state.AcceptProbability(e);
  out[e] += weight * p;
  const double xe = x[e];
  if (xe < 1.0) {
    auto next = state.Clone();
    next->Observe(e, false, false);
    ExactDfs(seq, pos + 1, weight * (1.0 - xe), *next, x, out);
  }
  if (xe > 0.0 && p > 0.0) {
    auto next = state.Clone();
    next->Observe(e, true, true);
    ExactDfs(seq, pos + 1, weight * xe * p, *next, x, out);
  }
  if (xe > 0.0 && p < 1.0) {
    auto next = state.Clone();
    next->Observe(e, true, false);
    ExactDfs(seq, pos + 1, weight * xe * (1.0 - p), *next, x, out);
  }
}

double Percentile(std::vector<double>& sorted, double q) {
  if (sorted.empty()) return 0.0;
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const size_t lo = static_cast<size_t>(std::floor(pos));
  const size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - lo) * (sorted[hi] - sorted[lo]);
}

void CheckX(const Matroid& m, std::span<const double> x) {
  if (static_cast<int>(x.size()) != m.size()) {
    throw std::invalid_argument("x has wrong length");
  }
  for (double v : x) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw std::invalid_argument("x entry outside [0,1]");
    }
  }
}

}  // namespace

Interval WilsonInterval(std::int64_t successes, std::int64_t trials,
                        double z) {
  if (trials <= 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2 * n)) / denom;
  const double half =
      z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / denom;
  // At the extremes the interval touches 0 or 1 exactly.
  return {successes == 0 ? 0.0 : std::max(0.0, center - half),
          successes == trials ? 1.0 : std::min(1.0, center + half)};
}

Interval RatioSums::Ci(double z) const {
  if (n < 2 || b == 0) return {0.0, 0.0};
  const double nn = static_cast<double>(n);
  const double ma = a / nn, mb = b / nn;
  const double va = aa / nn - ma * ma;
  const double vb = bb / nn - mb * mb;
  const double cov = ab / nn - ma * mb;
  const double r = ma / mb;
  const double var =
      std::max(0.0, (va - 2 * r * cov + r * r * vb) / (mb * mb * nn));
  const double half = z * std::sqrt(var);
  return {r - half, r + half};
}

TrialReport EstimateSelectability(const OnlineScheme& scheme,
                                  const Matroid& m, std::span<const double> x,
                                  const OrderGenerator& order,
                                  std::int64_t trials, std::uint64_t seed,
                                  int workers,
                                  const ConvexCertificate* certificate) {
  if (trials <= 0) throw std::invalid_argument("trials must be positive");
  CheckX(m, x);
  const auto started = std::chrono::steady_clock::now();
  const int n = m.size();

  TrialReport report;
  report.scheme = scheme.Name();
  report.trials = trials;
  report.seed = seed;
  try {
    const auto check = CheckPolytopeMembership(m, x, certificate);
    if (!check.member) {
      throw std::invalid_argument("x is outside the matroid polytope: " +
                                  check.detail);
    }
  } catch (const UnsupportedSize& e) {
    report.warnings.push_back(std::string("polytope membership unchecked: ") +
                              e.what());
  }
  if (auto w = scheme.CompatibilityWarning(m)) report.warnings.push_back(*w);

  Rng unused(0);
  const ArrivalOrder fixed = order.deterministic()
                                 ? order.Generate(n, x, unused)
                                 : IdentityOrder(n);
  const SeedStream stream(seed, StreamLabel::kSelectability);

  Counts zero;
  zero.active.assign(n, 0);
  zero.accepted.assign(n, 0);
  zero.probe_accepts.assign(n, 0);
  const Counts total = ParallelTrials(
      trials, workers, zero,
      [&](std::int64_t t, Counts& acc) {
        Rng rng = stream.ForTrial(static_cast<std::uint64_t>(t));
        const ArrivalOrder drawn =
            order.deterministic() ? ArrivalOrder{} : order.Generate(n, x, rng);
        const ArrivalOrder& seq = order.deterministic() ? fixed : drawn;
        const ActiveSet active = SampleActiveSet(x, rng);
        const SchemeRun run = RunScheme(scheme, m, seq, active, rng);
        for (const auto& entry : run.trace) {
          acc.active[entry.element] += entry.active;
          acc.accepted[entry.element] += entry.accepted;
          acc.probe_accepts[entry.element] += entry.would_accept;
        }
        ++acc.probes;
      },
      [](Counts& into, const Counts& from) {
        for (size_t e = 0; e < into.active.size(); ++e) {
          into.active[e] += from.active[e];
          into.accepted[e] += from.accepted[e];
          into.probe_accepts[e] += from.probe_accepts[e];
        }
        into.probes += from.probes;
      });

  report.elements.resize(n);
  report.min_probe_estimate = 1.0;
  for (int e = 0; e < n; ++e) {
    ElementStats& s = report.elements[e];
    s.element = e;
    s.active = total.active[e];
    s.accepted = total.accepted[e];
    s.sufficient = s.active > 0;
    s.ci = WilsonInterval(s.accepted, s.active);
    if (s.sufficient) {
      s.estimate = static_cast<double>(s.accepted) / s.active;
      if (!report.min_estimate || s.estimate < *report.min_estimate) {
        report.min_estimate = s.estimate;
        report.argmin = e;
      }
    }
    s.probes = total.probes;
    s.probe_accepts = total.probe_accepts[e];
    s.probe_estimate = static_cast<double>(s.probe_accepts) / s.probes;
    s.probe_ci = WilsonInterval(s.probe_accepts, s.probes);
    if (s.probe_estimate < report.min_probe_estimate || e == 0) {
      report.min_probe_estimate = s.probe_estimate;
      report.argmin_probe = e;
    }
  }
  report.wall_seconds = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - started)
                            .count();
  return report;
}

TrialReport RcrsSelectabilityEstimate(const Matroid& m, double b,
                                      std::span<const double> x,
                                      std::int64_t trials, std::uint64_t seed,
                                      int workers) {
  OrderGenerator random;
  random.kind = OrderKind::kRandom;
  return EstimateSelectability(BGreedy(b), m, x, random, trials, seed,
                               workers);
}

std::vector<double> ExactSelectability(const OnlineScheme& scheme,
                                       const Matroid& m,
                                       std::span<const double> x,
                                       const ArrivalOrder& order) {
  if (m.size() > 16) throw UnsupportedSize("exact selectability needs n <= 16");
  CheckX(m, x);
  ValidateOrder(order, m.size());
  std::vector<double> out(m.size(), 0.0);
  for (const auto& start : scheme.Start(m)) {
    ExactDfs(order.sequence, 0, start.weight, *start.state, x, out);
  }
  return out;
}

std::vector<double> ExactSelectabilityRandomOrder(const OnlineScheme& scheme,
                                                  const Matroid& m,
                                                  std::span<const double> x) {
  if (m.size() > 8) throw UnsupportedSize("random-order exact needs n <= 8");
  ArrivalOrder order = IdentityOrder(m.size());
  std::vector<double> total(m.size(), 0.0);
  std::int64_t count = 0;
  do {
    const auto one = ExactSelectability(scheme, m, x, order);
    for (int e = 0; e < m.size(); ++e) total[e] += one[e];
    ++count;
  } while (std::next_permutation(order.sequence.begin(), order.sequence.end()));
  for (auto& v : total) v /= static_cast<double>(count);
  return total;
}

RatioReport EstimateCompetitiveRatio(const RatioTrial& trial,
                                     std::int64_t trials, std::uint64_t seed,
                                     int workers, int resamples) {
  if (trials <= 0) throw std::invalid_argument("trials must be positive");
  if (resamples < 0) throw std::invalid_argument("resamples must be >= 0");
  using Pairs = std::vector<std::pair<double, double>>;
  const Pairs outcomes = ParallelTrials(
      trials, workers, Pairs{},
      [&](std::int64_t t, Pairs& acc) { acc.push_back(trial(t)); },
      [](Pairs& into, const Pairs& from) {
        into.insert(into.end(), from.begin(), from.end());
      });

  RatioReport report;
  report.trials = trials;
  report.resamples = resamples;
  report.seed = seed;
  double alg = 0, opt = 0;
  for (const auto& [a, o] : outcomes) {
    alg += a;
    opt += o;
  }
  report.mean_alg = alg / trials;
  report.mean_opt = opt / trials;
  report.ratio = opt > 0 ? alg / opt : 1.0;

  const SeedStream stream(seed, StreamLabel::kBootstrap);
  std::vector<double> ratios;
  ratios.reserve(resamples);
  for (int r = 0; r < resamples; ++r) {
    Rng rng = stream.ForTrial(static_cast<std::uint64_t>(r));
    double sa = 0, so = 0;
    for (std::int64_t k = 0; k < trials; ++k) {
      const auto& p = outcomes[rng.UniformInt(trials)];
      sa += p.first;
      so += p.second;
    }
    ratios.push_back(so > 0 ? sa / so : 1.0);
  }
  std::sort(ratios.begin(), ratios.end());
  report.ci = resamples > 0
                  ? Interval{Percentile(ratios, 0.025), Percentile(ratios, 0.975)}
                  : Interval{report.ratio, report.ratio};
  return report;
}

void WriteSelectabilityCsv(const TrialReport& report, std::ostream& out) {
  out << "element,active,accepted,estimate,ci_lo,ci_hi\n";
  char buf[160];
  for (const auto& s : report.elements) {
    if (s.sufficient) {
      std::snprintf(buf, sizeof(buf), "%d,%lld,%lld,%.10f,%.10f,%.10f\n",
                    s.element, static_cast<long long>(s.active),
                    static_cast<long long>(s.accepted), s.estimate, s.ci.lo,
                    s.ci.hi);
    } else {
      std::snprintf(buf, sizeof(buf), "%d,%lld,%lld,insufficient,,\n",
                    s.element, static_cast<long long>(s.active),
                    static_cast<long long>(s.accepted));
    }
    out << buf;
  }
}

}  // namespace ocrs
