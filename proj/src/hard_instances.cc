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

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/chi_squared.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ocrs/distributions.h"
#include "ocrs/errors.h"
#include "ocrs/parallel.h"

namespace ocrs {
namespace {

void CheckSizes(int n, int m) {
  if (n < 1 || m < 1) throw std::invalid_argument("N and M must be >= 1");
}

// Accepts exactly the elements of one block.
class BlockScheme final : public OnlineScheme {
 public:
  explicit BlockScheme(ElementSet block) : block_(std::move(block)) {}
  std::string Name() const override { return "clairvoyant_control"; }
  std::vector<WeightedState> Start(const Matroid& m) const override {
    std::vector<WeightedState> out;
    out.push_back({1.0, std::make_unique<State>(&block_, m.NewState())});
    return out;
  }
  std::optional<std::string> CompatibilityWarning(
      const Matroid&) const override {
    return std::nullopt;
  }

 private:
  class State final : public SchemeState {
   public:
    State(const ElementSet* block, std::unique_ptr<IndependenceState> s)
        : block_(block), state_(std::move(s)) {}
    State(const State& o) : block_(o.block_), state_(o.state_->Clone()) {}
    double AcceptProbability(Element e) const override {
      return std::binary_search(block_->begin(), block_->end(), e) &&
                     state_->CanAdd(e)
                 ? 1.0
                 : 0.0;
    }
    void Observe(Element e, bool, bool accepted) override {
      if (accepted) state_->Add(e);
    }
    std::unique_ptr<SchemeState> Clone() const override {
      return std::make_unique<State>(*this);
    }

   private:
    const ElementSet* block_;
    std::unique_ptr<IndependenceState> state_;
  };

  ElementSet block_;
};

std::vector<int> AllBlocksIfEmpty(std::vector<int> blocks, int n) {
  if (blocks.empty()) {
    for (int i = 0; i < n; ++i) blocks.push_back(i);
  }
  for (int b : blocks) {
    if (b < 0 || b >= n) throw std::out_of_range("block out of range");
  }
  return blocks;
}

HardStressReport Stress(const std::function<const OnlineScheme&(int)>& scheme_for,
                        const HardInstance& inst, std::int64_t trials,
                        std::uint64_t seed, std::vector<int> blocks,
                        int workers) {
  if (trials <= 0) throw std::invalid_argument("trials must be positive");
  blocks = AllBlocksIfEmpty(std::move(blocks), inst.N());
  const Matroid& m = inst.matroid();
  const SeedStream stream(seed, StreamLabel::kHardInstance);
  const ArrivalOrder order = IdentityOrder(m.size());
  HardStressReport report;
  report.bound = BalancednessUpperBound(inst.N(), inst.M(), 0);
  bool first = true;
  for (int i : blocks) {
    const OnlineScheme& scheme = scheme_for(i);
    if (first) {
      report.scheme = scheme.Name();
      if (auto w = scheme.CompatibilityWarning(m)) report.warnings.push_back(*w);
      first = false;
    }
    const auto x = inst.Point(i);
    const ElementSet block = inst.Block(i);
    using Counts = std::vector<std::int64_t>;
    const Counts accepted = ParallelTrials(
        trials, workers, Counts(block.size(), 0),
        [&](std::int64_t t, Counts& acc) {
          Rng rng = stream.ForTrial(static_cast<std::uint64_t>(i) *
                                        static_cast<std::uint64_t>(trials) +
                                    static_cast<std::uint64_t>(t));
          const ActiveSet active = SampleActiveSet(x, rng);
          const SchemeRun run = RunScheme(scheme, m, order, active, rng);
          for (Element e : run.accepted) {
            if (e >= block.front() && e <= block.back()) {
              ++acc[e - block.front()];
            }
          }
        },
        [](Counts& into, const Counts& from) {
          for (size_t k = 0; k < into.size(); ++k) into[k] += from[k];
        });
    BlockResult r;
    r.block = i;
    r.trials = trials;
    const auto it = std::min_element(accepted.begin(), accepted.end());
    r.argmin = block.front() + static_cast<Element>(it - accepted.begin());
    r.accepted = *it;
    r.estimate = static_cast<double>(*it) / trials;
    r.ci = WilsonInterval(*it, trials);
    if (r.estimate < report.balancedness || report.blocks.empty()) {
      report.balancedness = r.estimate;
      report.ci = r.ci;
    }
    report.blocks.push_back(r);
  }
  report.within_bound = report.ci.lo <= report.bound;
  return report;
}

}  // namespace

HardInstance HardInstance::Graphic(int n_blocks, int block_size) {
  CheckSizes(n_blocks, block_size);
  GraphicSpec spec;
  spec.vertices = n_blocks + block_size;
  for (int i = 0; i < n_blocks; ++i) {
    for (int j = 0; j < block_size; ++j) spec.edges.push_back({i, n_blocks + j});
  }
  return HardInstance(Kind::kGraphic, n_blocks, block_size,
                      std::make_shared<GraphicMatroid>(std::move(spec)));
}

HardInstance HardInstance::Transversal(int n_blocks, int block_size) {
  CheckSizes(n_blocks, block_size);
  TransversalSpec spec;
  spec.left = n_blocks * block_size;
  spec.right = n_blocks + block_size - 1;
  for (int i = 0; i < n_blocks; ++i) {
    for (int j = 0; j < block_size; ++j) {
      const int l = i * block_size + j;
      spec.edges.push_back({l, i});
      for (int k = 0; k < block_size - 1; ++k) {
        spec.edges.push_back({l, n_blocks + k});
      }
    }
  }
  return HardInstance(Kind::kTransversal, n_blocks, block_size,
                      std::make_shared<TransversalMatroid>(std::move(spec)));
}

std::string_view HardInstance::KindName() const {
  return kind_ == Kind::kGraphic ? "graphic" : "transversal";
}

ElementSet HardInstance::Block(int block) const {
  if (block < 0 || block >= n_) throw std::out_of_range("block out of range");
  ElementSet out;
  for (int j = 0; j < m_; ++j) out.push_back(element(block, j));
  return out;
}

std::vector<double> HardInstance::Point(int block) const {
  if (block < 0 || block >= n_) throw std::out_of_range("block out of range");
  std::vector<double> x(static_cast<size_t>(n_) * m_, 1.0 / m_);
  for (int j = 0; j < m_; ++j) x[element(block, j)] = 1.0;
  return x;
}

std::vector<double> HardInstance::AveragePoint() const {
  return std::vector<double>(static_cast<size_t>(n_) * m_, 1.0 / m_);
}

ConvexCertificate HardInstance::Certificate(int block) const {
  if (block < 0 || block >= n_) throw std::out_of_range("block out of range");
  ConvexCertificate cert;
  for (int j = 0; j < m_; ++j) {
    ElementSet part = Block(block);
    for (int t = 0; t < n_; ++t) {
      if (t != block) part.push_back(element(t, j));
    }
    std::sort(part.begin(), part.end());
    cert.parts.push_back(std::move(part));
  }
  return cert;
}

std::string VerifyCertificate(const HardInstance& inst, int block) {
  const auto cert = inst.Certificate(block);
  const auto x = inst.Point(block);
  std::vector<int> cover(x.size(), 0);
  for (const auto& part : cert.parts) {
    if (!inst.matroid().IsIndependent(part)) return "dependent part";
    for (Element e : part) ++cover[e];
  }
  for (size_t e = 0; e < x.size(); ++e) {
    // x_e is 1 or 1/M, so comparing M x_e with the cover count is exact.
    if (cover[e] != static_cast<int>(std::lround(x[e] * inst.M()))) {
      return "average differs from x at element " + std::to_string(e);
    }
  }
  return "";
}

FullBlockStats UStarExperiment(const HardInstance& inst, std::int64_t trials,
                               std::uint64_t seed, int workers) {
  if (trials <= 0) throw std::invalid_argument("trials must be positive");
  const Matroid& m = inst.matroid();
  const auto y = inst.AveragePoint();
  const SeedStream stream(seed, StreamLabel::kHardInstance);
  const int n = inst.N(), bm = inst.M();
  struct Acc {
    std::vector<std::int64_t> histogram;
    std::int64_t rank_failures = 0;
  };
  Acc zero{std::vector<std::int64_t>(n + 1, 0), 0};
  const Acc total = ParallelTrials(
      trials, workers, zero,
      [&](std::int64_t t, Acc& acc) {
        Rng rng = stream.ForTrial(static_cast<std::uint64_t>(t));
        const ActiveSet active = SampleActiveSet(y, rng);
        ElementSet full;
        int count = 0;
        for (int i = 0; i < n; ++i) {
          bool all = true;
          for (int j = 0; j < bm && all; ++j) all = active.contains(i * bm + j);
          if (!all) continue;
          ++count;
          for (int j = 0; j < bm; ++j) full.push_back(i * bm + j);
        }
        ++acc.histogram[count];
        const int expected_rank = count == 0 ? 0 : count + bm - 1;
        if (m.Rank(full) != expected_rank) ++acc.rank_failures;
      },
      [](Acc& into, const Acc& from) {
        for (size_t k = 0; k < into.histogram.size(); ++k) {
          into.histogram[k] += from.histogram[k];
        }
        into.rank_failures += from.rank_failures;
      });

  FullBlockStats stats;
  stats.trials = trials;
  stats.rank_failures = total.rank_failures;
  double sum = 0;
  for (int k = 0; k <= n; ++k) {
    if (total.histogram[k] == 0) continue;
    stats.histogram[k] = total.histogram[k];
    sum += static_cast<double>(k) * total.histogram[k];
    if (k > 0) stats.nonempty_trials += total.histogram[k];
  }
  const double p = std::pow(static_cast<double>(bm), -bm);
  stats.mean = sum / trials;
  stats.expected = n * p;
  stats.sd_of_mean = std::sqrt(n * p * (1 - p) / trials);
  return stats;
}

std::vector<double> UStarExactDistribution(const HardInstance& inst) {
  const int size = inst.matroid().size();
  if (size > 20) throw UnsupportedSize("exact |U*| law needs N*M <= 20");
  const double y = 1.0 / inst.M();
  std::vector<double> law(inst.N() + 1, 0.0);
  for (std::uint32_t mask = 0; mask < (1u << size); ++mask) {
    const int on = std::popcount(mask);
    const double w = std::pow(y, on) * std::pow(1 - y, size - on);
    int count = 0;
    for (int i = 0; i < inst.N(); ++i) {
      const std::uint32_t block = ((1u << inst.M()) - 1) << (i * inst.M());
      count += (mask & block) == block;
    }
    law[count] += w;
  }
  return law;
}

ConditionalCheck ConditionalIdentityCheck(const HardInstance& inst, int block,
                                          int condition_block,
                                          std::int64_t trials,
                                          std::uint64_t seed) {
  const auto x = inst.Point(block);
  const auto y = inst.AveragePoint();
  const ElementSet cond = inst.Block(condition_block);
  const int size = inst.matroid().size();
  ConditionalCheck out;

  if (size <= 12) {
    out.method = "exact";
    std::uint32_t cond_mask = 0;
    for (Element e : cond) cond_mask |= 1u << e;
    auto prob = [&](const std::vector<double>& p, std::uint32_t mask) {
      double w = 1;
      for (int e = 0; e < size; ++e) w *= (mask >> e & 1) ? p[e] : 1 - p[e];
      return w;
    };
    double event = 0;
    for (std::uint32_t mask = 0; mask < (1u << size); ++mask) {
      if ((mask & cond_mask) == cond_mask) event += prob(y, mask);
    }
    double tv = 0;
    for (std::uint32_t mask = 0; mask < (1u << size); ++mask) {
      const double conditioned =
          (mask & cond_mask) == cond_mask ? prob(y, mask) / event : 0.0;
      tv += std::abs(conditioned - prob(x, mask));
    }
    out.total_variation = 0.5 * tv;
    out.identical = out.total_variation < 1e-12;
    out.p_value = out.identical ? 1.0 : 0.0;
    return out;
  }

  out.method = "chi_square";
  if (trials <= 0) throw std::invalid_argument("trials must be positive");
  const SeedStream stream(seed, StreamLabel::kHardInstance);
  const ElementSet target = inst.Block(block);
  const int outside = size - inst.M();
  std::vector<std::int64_t> observed(outside + 1, 0);
  bool impossible = false;
  for (std::int64_t t = 0; t < trials; ++t) {
    Rng rng = stream.ForTrial(static_cast<std::uint64_t>(t));
    const ActiveSet r = SampleActiveSet(y, rng);
    if (!std::all_of(cond.begin(), cond.end(),
                     [&](Element e) { return r.contains(e); })) {
      continue;
    }
    ++out.conditioned_samples;
    int count = r.count();
    for (Element e : target) {
      if (!r.contains(e)) impossible = true;
      count -= r.contains(e);
    }
    ++observed[count];
  }
  if (out.conditioned_samples == 0) {
    out.insufficient = true;
    return out;
  }
  if (impossible) {
    out.chi_square = std::numeric_limits<double>::infinity();
    out.p_value = 0.0;
    out.identical = false;
    return out;
  }
  // Under x^block the active count outside the block is Binomial(outside,
  // 1/M). Pool adjacent counts until each bin expects at least 5 samples.
  const boost::math::binomial_distribution<double> law(outside,
                                                       1.0 / inst.M());
  const double total = static_cast<double>(out.conditioned_samples);
  std::vector<std::pair<double, double>> bins;  // (observed, expected)
  double obs = 0, expct = 0;
  for (int c = 0; c <= outside; ++c) {
    obs += static_cast<double>(observed[c]);
    expct += total * boost::math::pdf(law, c);
    if (expct >= 5.0) {
      bins.push_back({obs, expct});
      obs = expct = 0;
    }
  }
  if (!bins.empty()) {
    bins.back().first += obs;
    bins.back().second += expct;
  } else {
    bins.push_back({obs, expct});
  }
  if (bins.size() < 2) {
    out.insufficient = true;
    return out;
  }
  for (const auto& [o, e] : bins) out.chi_square += (o - e) * (o - e) / e;
  out.degrees_of_freedom = static_cast<int>(bins.size()) - 1;
  const boost::math::chi_squared_distribution<double> chi(
      out.degrees_of_freedom);
  out.p_value = boost::math::cdf(boost::math::complement(chi, out.chi_square));
  out.identical = out.p_value > 0.01;
  return out;
}

double BalancednessUpperBound(double n_blocks, int block_size, int samples) {
  if (!(n_blocks >= 1) || block_size < 1) {
    throw std::invalid_argument("N and M must be >= 1");
  }
  if (samples < 0) throw std::invalid_argument("sample count must be >= 0");
  const double m = block_size;
  return 1.0 / m +
         std::pow(m, (samples + 1.0) * m - 1.0) * (m - 1.0) / n_blocks;
}

HardStressReport StressObliviousScheme(const OnlineScheme& scheme,
                                       const HardInstance& inst,
                                       std::int64_t trials, std::uint64_t seed,
                                       std::vector<int> blocks, int workers) {
  return Stress([&](int) -> const OnlineScheme& { return scheme; }, inst,
                trials, seed, std::move(blocks), workers);
}

HardStressReport StressClairvoyantControl(const HardInstance& inst,
                                          std::int64_t trials,
                                          std::uint64_t seed,
                                          std::vector<int> blocks,
                                          int workers) {
  std::unique_ptr<BlockScheme> current;
  return Stress(
      [&](int i) -> const OnlineScheme& {
        current = std::make_unique<BlockScheme>(inst.Block(i));
        return *current;
      },
      inst, trials, seed, std::move(blocks), workers);
}

}  // namespace ocrs
