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

// Acceptance run: one line per criterion, nonzero exit if any fails.
//
//   acceptance [--workers W] [--only K]

#include <algorithm>
#include <bit>
#include <cstdarg>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "lab/experiment.h"
#include "ocrs/eval.h"
#include "ocrs/hard_instances.h"
#include "ocrs/instances.h"
#include "ocrs/prophet.h"
#include "ocrs/schemes.h"
#include "oracles.h"

namespace ocrs {
namespace {

constexpr std::uint64_t kSeed = 20261016;

int workers = 1;

struct Outcome {
  bool pass = true;
  std::string detail;

  void Require(bool ok, const char* fmt, ...) __attribute__((format(printf, 3, 4)));
};

void Outcome::Require(bool ok, const char* fmt, ...) {
  char buf[512];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof(buf), fmt, args);
  va_end(args);
  if (!detail.empty()) detail += "; ";
  detail += buf;
  if (!ok) {
    detail += " [x]";
    pass = false;
  }
}

double Sigma(double p, std::int64_t n) {
  return std::sqrt(std::max(p * (1 - p), 0.0) / static_cast<double>(n));
}

Outcome FnMinimumCriterion() {
  Outcome o;
  double worst_value = 0, worst_arg = 0;
  for (int n = 1; n <= 5; ++n) {
    const auto r = MinimizeFN(n);
    const double closed = std::pow(1 - 1.0 / n, n) + std::pow(1 - 1.0 / n, n - 1);
    worst_value = std::max(worst_value, std::abs(r.value - closed));
    for (double a : r.argmin) worst_arg = std::max(worst_arg, std::abs(a - 1.0 / n));
  }
  o.Require(worst_value <= 1e-6, "max |min - closed form| = %.2e", worst_value);
  o.Require(worst_arg <= 1e-3, "max |argmin - 1/n| = %.2e", worst_arg);
  return o;
}

Outcome EvenMixture() {
  Outcome o;
  const int n = 100;
  UniformMatroid m(n, 1);
  const std::vector<double> x(n, 1.0 / n);
  const double closed = std::pow(1 - 1.0 / n, n - 1);
  const auto scheme = MakeEvenMixture();
  const auto r = EstimateSelectability(*scheme, m, x, OrderGenerator{}, 1000000,
                                       kSeed, workers);
  o.Require(std::abs(r.min_probe_estimate - 0.3698) <= 0.003,
            "min selectability %.5f (element %d), closed form %.5f, target 0.3698 +- 0.003",
            r.min_probe_estimate, r.argmin_probe, closed);
  o.Require(r.min_probe_estimate >= 1 / std::numbers::e - 3 * Sigma(closed, r.trials),
            "at least 1/e within 3 sigma");
  double worst = 0;
  for (int k = 1; k <= 10; ++k) {
    UniformMatroid small(k, 1);
    const std::vector<double> xs(k, 1.0 / k);
    const auto exact = ExactSelectability(*scheme, small, xs, IdentityOrder(k));
    for (int i = 0; i < k; ++i) {
      const double f = FN(std::span<const double>(xs.data(), static_cast<size_t>(i))) / 2;
      worst = std::max(worst, std::abs(exact[i] - f));
    }
  }
  o.Require(worst <= 1e-12, "exact n <= 10 vs f_{i-1}/2: max error %.1e", worst);
  return o;
}

Outcome CountingCap() {
  Outcome o;
  const int n = 1000, steps = 40;
  double best = 0;
  std::vector<double> arg;
  for (int a = 0; a <= steps; ++a) {
    for (int b = 0; b <= steps; ++b) {
      for (int c = 0; c <= steps; ++c) {
        const std::vector<double> p = {double(a) / steps, double(b) / steps,
                                       double(c) / steps};
        const double v = CountingSelectabilityUniform(p, n);
        if (v > best) {
          best = v;
          arg = p;
        }
      }
    }
  }
  const double e_inv = 1 / std::numbers::e;
  o.Require(best <= e_inv + 0.01, "grid max %.5f at (%.3f, %.3f, %.3f) vs 1/e + 0.01",
            best, arg[0], arg[1], arg[2]);
  const std::vector<double> half = {0.5, 1.0};
  const double v = CountingSelectabilityUniform(half, n);
  o.Require(std::abs(v - e_inv) <= 0.005, "p = (1/2, 1): %.5f", v);
  return o;
}

Outcome BGreedyCriterion() {
  Outcome o;
  const double bound = BGreedyLowerBound(0.13);
  o.Require(bound >= 0.0714 && bound <= 0.0716, "bound(0.13) = %.5f", bound);
  Rng rng = SeedStream(kSeed, StreamLabel::kTest).ForTrial(4);
  const BGreedy greedy(0.13);
  double worst_greedy = 1, worst_rcrs = 1;
  for (int t = 0; t < 20; ++t) {
    const int n = 6 + static_cast<int>(rng.UniformInt(7));
    const LaminarSpec spec = RandomLaminarSpec(n, rng);
    LaminarMatroid m(spec);
    const auto x = LaminarPointAtCapacity(spec);
    const auto g = EstimateSelectability(greedy, m, x, OrderGenerator{}, 100000,
                                         kSeed + t, workers);
    for (const auto& e : g.elements) {
      worst_greedy = std::min(worst_greedy,
                              e.probe_estimate + 3 * Sigma(e.probe_estimate, g.trials));
    }
    const auto r = RcrsSelectabilityEstimate(m, 0.25, x, 100000, kSeed + t, workers);
    worst_rcrs = std::min(worst_rcrs, r.min_probe_estimate +
                                          3 * Sigma(r.min_probe_estimate, r.trials));
  }
  o.Require(worst_greedy >= 0.0715, "b-Greedy min (estimate + 3 sigma) %.4f", worst_greedy);
  o.Require(worst_rcrs >= 0.142, "RCRS b = 1/4 min (estimate + 3 sigma) %.4f", worst_rcrs);
  return o;
}

GraphicMatroid TrianglePendant() {
  return GraphicMatroid(GraphicSpec{4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {2, 3}, {1, 1}}});
}

Outcome TauCharacterization() {
  Outcome o;
  std::vector<std::unique_ptr<Matroid>> ms;
  ms.push_back(std::make_unique<UniformMatroid>(6, 1));
  ms.push_back(std::make_unique<UniformMatroid>(6, 2));
  ms.push_back(std::make_unique<GraphicMatroid>(TrianglePendant()));
  Rng rng = SeedStream(kSeed, StreamLabel::kTest).ForTrial(5);
  std::int64_t failures = 0, checks = 0;
  for (const auto& m : ms) {
    std::vector<ValueDistribution> dists;
    for (int i = 0; i < m->size(); ++i) {
      dists.push_back(i % 2 ? ValueDistribution::Exponential(1.0 + i)
                            : ValueDistribution::Discrete({0, 1, 2}, {0.3, 0.3, 0.4}, true));
    }
    for (int s = 0; s < 10000; ++s) {
      const auto v = SampleValues(dists, rng);
      const auto opt = OptValue(*m, v);
      const auto taus = ComputeAllTaus(*m, v);
      for (int i = 0; i < m->size(); ++i) {
        const bool in_opt = std::binary_search(opt.set.begin(), opt.set.end(), i);
        failures += in_opt != (v[i] > taus[i]);
        ++checks;
      }
    }
  }
  o.Require(failures == 0, "%lld failures in %lld element checks",
            static_cast<long long>(failures), static_cast<long long>(checks));
  return o;
}

std::vector<ElementSet> Bases(const Matroid& m) {
  std::vector<ElementSet> out;
  const int r = m.Rank();
  for (std::uint32_t mask = 0; mask < (1u << m.size()); ++mask) {
    if (std::popcount(mask) != r) continue;
    ElementSet s;
    for (int e = 0; e < m.size(); ++e) {
      if (mask >> e & 1) s.push_back(e);
    }
    if (m.IsIndependent(s)) out.push_back(std::move(s));
  }
  return out;
}

Outcome ExchangeMaps() {
  Outcome o;
  Rng rng = SeedStream(kSeed, StreamLabel::kTest).ForTrial(6);
  int failures = 0, families[4] = {0, 0, 0, 0};
  for (int t = 0; t < 500; ++t) {
    const int n = 1 + static_cast<int>(rng.UniformInt(10));
    std::unique_ptr<Matroid> m;
    switch (t % 4) {
      case 0: m = std::make_unique<UniformMatroid>(n, static_cast<int>(rng.UniformInt(n + 1))); break;
      case 1: m = std::make_unique<LaminarMatroid>(RandomLaminarSpec(n, rng)); break;
      case 2:
        m = std::make_unique<GraphicMatroid>(
            RandomGraphicSpec(2 + static_cast<int>(rng.UniformInt(5)), n, true, rng));
        break;
      default:
        m = std::make_unique<TransversalMatroid>(
            RandomTransversalSpec(n, 1 + static_cast<int>(rng.UniformInt(5)), 0.4, rng));
    }
    std::vector<double> w(n);
    for (double& v : w) v = std::floor(rng.Uniform01() * 5);
    const auto a = MaxWeightBasis(*m, w);
    const auto bases = Bases(*m);
    const auto& b = bases[rng.UniformInt(bases.size())];
    try {
      const auto f = MonotoneExchangeMap(*m, w, a, b);
      failures += !ValidateExchangeMap(*m, w, f).empty();
    } catch (const std::exception&) {
      ++failures;
    }
    ++families[t % 4];
  }
  o.Require(failures == 0, "%d failures over 500 instances (%d/%d/%d/%d per family)",
            failures, families[0], families[1], families[2], families[3]);
  return o;
}

Outcome ThresholdGoodness() {
  Outcome o;
  const double eps = 0.25;
  UniformMatroid m(4, 2);
  const std::vector<ValueDistribution> dists(4, ValueDistribution::Uniform(0, 1));
  const std::int64_t samples = DefaultSampleCount(4, eps);
  int passed = 0;
  const int reps = 200;
  for (int r = 0; r < reps; ++r) {
    const std::uint64_t seed = DeriveSeed(kSeed, StreamLabel::kThresholdLearning, r);
    const auto table =
        LearnThresholds(m, dists, eps, samples,
                        SeedStream(seed, StreamLabel::kThresholdLearning), workers);
    passed += VerifyGoodThresholds(table, m, dists, 20000,
                                   SeedStream(seed, StreamLabel::kThresholdEvaluation),
                                   workers)
                  .all_pass;
  }
  const double rate = static_cast<double>(passed) / reps;
  o.Require(rate >= 1 - eps - 0.05, "N = %lld, %d/%d repetitions good (%.3f vs 0.70)",
            static_cast<long long>(samples), passed, reps, rate);
  return o;
}

Outcome ActiveValue() {
  Outcome o;
  struct Case {
    int n, r;
    ValueDistribution dist;
  };
  const std::vector<Case> cases = {
      {6, 1, ValueDistribution::Uniform(0, 1)},
      {6, 2, ValueDistribution::Uniform(0, 1)},
      {5, 2, ValueDistribution::Exponential(1)},
  };
  int index = 0;
  for (double eps : {0.1, 0.25}) {
    for (const auto& c : cases) {
      UniformMatroid m(c.n, c.r);
      const std::vector<ValueDistribution> dists(c.n, c.dist);
      const auto table = oracle::ExactUniformMatroidTable(eps, c.n, c.r, c.dist);
      const auto rep = ActiveValueVsOpt(table, m, dists, 200000, kSeed + index++, workers);
      const double bound = oracle::SmallValueLossBound(eps);
      o.Require(rep.loss_ci.lo <= bound && rep.ratio >= 1 - 5 * eps,
                "eps %.2f U(%d,%d): loss %.4f (bound %.4f), ratio %.4f", eps, c.n,
                c.r, rep.small_value_loss, bound, rep.ratio);
    }
  }
  return o;
}

Outcome ProphetEndToEnd() {
  Outcome o;
  const double eps = 0.05;
  const int n = 10;
  UniformMatroid m(n, 1);
  const auto dist = ValueDistribution::Uniform(0, 1);
  const std::vector<ValueDistribution> dists(n, dist);
  const auto scheme = MakeEvenMixture();
  const auto exact = oracle::ExactUniformMatroidTable(eps, n, 1, dist);
  const auto reference = EstimateProphetRatio(m, dists, exact, *scheme, OrderGenerator{},
                                              100000, kSeed, workers);
  const std::int64_t samples = DefaultSampleCount(n, eps);
  const auto table = LearnThresholds(m, dists, eps, samples,
                                     SeedStream(kSeed, StreamLabel::kThresholdLearning),
                                     workers);
  const auto r = EstimateProphetRatio(m, dists, table, *scheme, OrderGenerator{}, 100000,
                                      kSeed, workers);
  o.Require(r.ratio >= 0.30, "learned (N = %lld) ratio %.4f [%.4f, %.4f]",
            static_cast<long long>(samples), r.ratio, r.ci.lo, r.ci.hi);
  o.Require(true, "exact-quantile thresholds ratio %.4f", reference.ratio);
  return o;
}

Outcome HardInstanceChecks() {
  Outcome o;
  const auto inst = HardInstance::Graphic(64, 2);
  const auto stats = UStarExperiment(inst, 200000, kSeed, workers);
  o.Require(std::abs(stats.mean - stats.expected) <= 3 * stats.sd_of_mean,
            "E|U*| %.4f vs %.1f (sd %.4f)", stats.mean, stats.expected, stats.sd_of_mean);
  o.Require(stats.rank_failures == 0, "rank identity failures %lld",
            static_cast<long long>(stats.rank_failures));
  double worst_tv = 0;
  for (const auto& small : {HardInstance::Graphic(2, 2), HardInstance::Transversal(2, 2)}) {
    for (int i = 0; i < 2; ++i) {
      const auto c = ConditionalIdentityCheck(small, i, i, 1, kSeed);
      if (c.method != "exact") worst_tv = 1;
      worst_tv = std::max(worst_tv, c.total_variation);
    }
  }
  o.Require(worst_tv == 0, "conditional TV on (2, 2): %.2e", worst_tv);
  const double bound = BalancednessUpperBound(64, 2, 0);
  o.Require(bound == 0.53125, "bound(64, 2, 0) = %.6f", bound);
  return o;
}

Outcome Determinism() {
  Outcome o;
  using lab::json;
  const std::vector<json> configs = {
      json::parse(R"({"kind": "selectability",
        "matroid": {"family": "uniform", "n": 100, "rank": 1},
        "x": {"uniform": 0.01}, "scheme": {"kind": "even_mixture"},
        "trials": 20000, "seed": 1})"),
      json::parse(R"({"kind": "selectability",
        "matroid": {"family": "laminar", "n": 6,
                    "sets": [[0, 1], [2, 3, 4], [0, 1, 2, 3, 4, 5]],
                    "capacities": [1, 1, 2]},
        "x": "laminar_capacity", "scheme": {"kind": "b_greedy", "b": 0.25},
        "order": {"kind": "random"}, "trials": 20000, "seed": 2})"),
      json::parse(R"({"kind": "thresholds",
        "matroid": {"family": "uniform", "n": 4, "rank": 2},
        "distributions": {"kind": "uniform", "low": 0, "high": 1},
        "epsilon": 0.25, "repetitions": 3, "verify_trials": 5000, "seed": 3})"),
      json::parse(R"({"kind": "prophet",
        "matroid": {"family": "uniform", "n": 10, "rank": 1},
        "distributions": {"kind": "uniform", "low": 0, "high": 1},
        "epsilon": 0.25, "scheme": {"kind": "even_mixture"},
        "trials": 20000, "verify_trials": 5000, "seed": 4})"),
      json::parse(R"({"kind": "hard_instance", "family": "graphic", "N": 64, "M": 2,
        "trials": 20000, "seed": 5,
        "conditional": {"block": 0, "condition_block": 0, "trials": 5000},
        "stress": {"scheme": {"kind": "greedy"}, "blocks": [0, 1], "trials": 2000}})"),
  };
  int identical = 0;
  for (const auto& c : configs) {
    const auto a = lab::RunExperiment(c, 1);
    const auto b = lab::RunExperiment(c, 4);
    const auto again = lab::RunExperiment(c, 1);
    identical += a.report.dump() == b.report.dump() &&
                 a.report.dump() == again.report.dump() && a.csv == b.csv;
  }
  o.Require(identical == static_cast<int>(configs.size()),
            "%d/%zu configs byte-identical across workers 1 and 4", identical,
            configs.size());
  return o;
}

}  // namespace
}  // namespace ocrs

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i + 1 < argc; i += 2) {
    if (!std::strcmp(argv[i], "--workers")) ocrs::workers = std::atoi(argv[i + 1]);
    if (!std::strcmp(argv[i], "--only")) only = std::atoi(argv[i + 1]);
  }
  const std::vector<std::function<ocrs::Outcome()>> criteria = {
      ocrs::FnMinimumCriterion,      ocrs::EvenMixture,         ocrs::CountingCap,
      ocrs::BGreedyCriterion,      ocrs::TauCharacterization, ocrs::ExchangeMaps,
      ocrs::ThresholdGoodness, ocrs::ActiveValue,      ocrs::ProphetEndToEnd,
      ocrs::HardInstanceChecks, ocrs::Determinism,
  };
  int failed = 0;
  for (size_t k = 0; k < criteria.size(); ++k) {
    if (only && static_cast<int>(k) + 1 != only) continue;
    const auto start = std::chrono::steady_clock::now();
    ocrs::Outcome o;
    try {
      o = criteria[k]();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %zu: %s (%.1f s) %s\n", k + 1, o.pass ? "PASS" : "FAIL", s,
                o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed ? 1 : 0;
}
