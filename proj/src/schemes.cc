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

#include "ocrs/schemes.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "ocrs/errors.h"

namespace ocrs {
namespace {

void CheckProbability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument(std::string(what) + " outside [0,1]");
  }
}

bool IsRankOneUniform(const Matroid& m) {
  const auto* u = dynamic_cast<const UniformMatroid*>(&m);
  return u != nullptr && u->rank_bound() == 1;
}

class CountingState final : public SchemeState {
 public:
  CountingState(const std::vector<double>* p,
                std::shared_ptr<const IndependenceState> empty)
      : p_(p), empty_(std::move(empty)) {}

  double AcceptProbability(Element e) const override {
    if (done_ || seen_ >= p_->size()) return 0.0;
    const double p = (*p_)[seen_];
    if (p == 0.0 || !empty_->CanAdd(e)) return 0.0;
    return p;
  }
  void Observe(Element, bool active, bool accepted) override {
    if (active) ++seen_;
    if (accepted) done_ = true;
  }
  std::unique_ptr<SchemeState> Clone() const override {
    return std::make_unique<CountingState>(*this);
  }

 private:
  const std::vector<double>* p_;
  std::shared_ptr<const IndependenceState> empty_;
  size_t seen_ = 0;
  bool done_ = false;
};

class BGreedyState final : public SchemeState {
 public:
  BGreedyState(double b, std::unique_ptr<IndependenceState> state)
      : b_(b), state_(std::move(state)) {}
  BGreedyState(const BGreedyState& other)
      : b_(other.b_), state_(other.state_->Clone()) {}

  double AcceptProbability(Element e) const override {
    return b_ > 0.0 && state_->CanAdd(e) ? b_ : 0.0;
  }
  void Observe(Element e, bool, bool accepted) override {
    if (accepted) state_->Add(e);
  }
  std::unique_ptr<SchemeState> Clone() const override {
    return std::make_unique<BGreedyState>(*this);
  }

 private:
  double b_;
  std::unique_ptr<IndependenceState> state_;
};

}  // namespace

CountingScheme::CountingScheme(std::vector<double> p, std::string name)
    : p_(std::move(p)), name_(std::move(name)) {
  for (double v : p_) CheckProbability(v, "counting probability");
}

std::vector<WeightedState> CountingScheme::Start(const Matroid& m) const {
  std::vector<WeightedState> out;
  out.push_back({1.0, std::make_unique<CountingState>(
                          &p_, std::shared_ptr<const IndependenceState>(
                                   m.NewState()))});
  return out;
}

std::optional<std::string> CountingScheme::CompatibilityWarning(
    const Matroid& m) const {
  if (IsRankOneUniform(m)) return std::nullopt;
  return name_ + " is a single-item scheme; its guarantee assumes a rank-1 "
                 "uniform matroid";
}

std::unique_ptr<OnlineScheme> MakeGreedySingle() {
  return std::make_unique<CountingScheme>(std::vector<double>{1.0}, "greedy");
}

std::unique_ptr<OnlineScheme> MakeAcceptSecond() {
  return std::make_unique<CountingScheme>(std::vector<double>{0.0, 1.0},
                                          "accept_second");
}

std::unique_ptr<OnlineScheme> MakeAcceptNothing() {
  return std::make_unique<CountingScheme>(std::vector<double>{},
                                          "accept_nothing");
}

MixtureScheme::MixtureScheme(std::vector<Component> components,
                             std::string name)
    : components_(std::move(components)), name_(std::move(name)) {
  if (components_.empty()) throw std::invalid_argument("empty mixture");
  double total = 0;
  for (const auto& c : components_) {
    CheckProbability(c.weight, "mixture weight");
    if (!c.scheme) throw std::invalid_argument("null mixture component");
    total += c.weight;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("mixture weights must sum to 1");
  }
}

std::vector<WeightedState> MixtureScheme::Start(const Matroid& m) const {
  std::vector<WeightedState> out;
  for (const auto& c : components_) {
    for (auto& ws : c.scheme->Start(m)) {
      out.push_back({c.weight * ws.weight, std::move(ws.state)});
    }
  }
  return out;
}

std::optional<std::string> MixtureScheme::CompatibilityWarning(
    const Matroid& m) const {
  for (const auto& c : components_) {
    if (auto w = c.scheme->CompatibilityWarning(m)) return w;
  }
  return std::nullopt;
}

std::unique_ptr<OnlineScheme> MakeEvenMixture() {
  std::vector<MixtureScheme::Component> parts = {
      {0.5, std::shared_ptr<const OnlineScheme>(MakeGreedySingle())},
      {0.5, std::shared_ptr<const OnlineScheme>(MakeAcceptSecond())}};
  return std::make_unique<MixtureScheme>(std::move(parts), "even_mixture");
}

BGreedy::BGreedy(double b) : b_(b) { CheckProbability(b, "b"); }

std::vector<WeightedState> BGreedy::Start(const Matroid& m) const {
  std::vector<WeightedState> out;
  out.push_back({1.0, std::make_unique<BGreedyState>(b_, m.NewState())});
  return out;
}

std::optional<std::string> BGreedy::CompatibilityWarning(
    const Matroid& m) const {
  if (m.family() == MatroidFamily::kUniform ||
      m.family() == MatroidFamily::kLaminar) {
    return std::nullopt;
  }
  return "b_greedy guarantee holds for laminar matroids only; running on " +
         std::string(FamilyName(m.family()));
}

std::string_view OrderKindName(OrderKind kind) {
  switch (kind) {
    case OrderKind::kIdentity:
      return "identity";
    case OrderKind::kReverse:
      return "reverse";
    case OrderKind::kDescendingX:
      return "descending_x";
    case OrderKind::kTargetLast:
      return "target_last";
    case OrderKind::kRandom:
      return "random";
  }
  return "unknown";
}

std::optional<OrderKind> ParseOrderKind(std::string_view name) {
  for (auto k : {OrderKind::kIdentity, OrderKind::kReverse,
                 OrderKind::kDescendingX, OrderKind::kTargetLast,
                 OrderKind::kRandom}) {
    if (OrderKindName(k) == name) return k;
  }
  return std::nullopt;
}

ArrivalOrder IdentityOrder(int n) {
  ArrivalOrder order;
  order.sequence.resize(n);
  std::iota(order.sequence.begin(), order.sequence.end(), 0);
  return order;
}

void ValidateOrder(const ArrivalOrder& order, int n) {
  if (static_cast<int>(order.sequence.size()) != n) {
    throw std::invalid_argument("arrival order has wrong length");
  }
  std::vector<char> seen(n, 0);
  for (Element e : order.sequence) {
    if (e < 0 || e >= n || seen[e]) {
      throw std::invalid_argument("arrival order is not a permutation");
    }
    seen[e] = 1;
  }
}

ArrivalOrder OrderGenerator::Generate(int n, std::span<const double> x,
                                      Rng& rng) const {
  ArrivalOrder order = IdentityOrder(n);
  order.provenance = kind;
  auto& s = order.sequence;
  switch (kind) {
    case OrderKind::kIdentity:
      break;
    case OrderKind::kReverse:
      std::reverse(s.begin(), s.end());
      break;
    case OrderKind::kDescendingX:
      if (static_cast<int>(x.size()) != n) {
        throw std::invalid_argument("descending_x needs x of length n");
      }
      std::stable_sort(s.begin(), s.end(),
                       [&](Element a, Element b) { return x[a] > x[b]; });
      break;
    case OrderKind::kTargetLast:
      if (target < 0 || target >= n) {
        throw std::out_of_range("target element out of range");
      }
      s.erase(s.begin() + target);
      s.push_back(target);
      break;
    case OrderKind::kRandom:
      for (int i = n - 1; i > 0; --i) {
        std::swap(s[i], s[rng.UniformInt(static_cast<std::uint64_t>(i) + 1)]);
      }
      break;
  }
  return order;
}

SchemeRun RunScheme(const OnlineScheme& scheme, const Matroid& m,
                    const ArrivalOrder& order, const ActiveSet& active,
                    Rng& rng) {
  if (active.size() != m.size()) {
    throw std::invalid_argument("active set size does not match matroid");
  }
  SchemeRun run;
  run.warning = scheme.CompatibilityWarning(m);
  auto starts = scheme.Start(m);
  size_t pick = 0;
  if (starts.size() > 1) {
    const double u = rng.Uniform01();
    double acc = 0;
    pick = starts.size() - 1;
    for (size_t k = 0; k < starts.size(); ++k) {
      acc += starts[k].weight;
      if (u < acc) {
        pick = k;
        break;
      }
    }
  }
  SchemeState& state = *starts[pick].state;
  run.trace.reserve(order.sequence.size());
  for (Element e : order.sequence) {
    const bool is_active = active.contains(e);
    const bool would = rng.Uniform01() < state.AcceptProbability(e);
    const bool accepted = is_active && would;
    state.Observe(e, is_active, accepted);
    run.trace.push_back({e, is_active, would, accepted});
    if (accepted) run.accepted.push_back(e);
  }
  std::sort(run.accepted.begin(), run.accepted.end());
  if (!m.IsIndependent(run.accepted)) {
    throw ContractViolation(scheme.Name() +
                            " produced a dependent accepted set");
  }
  return run;
}

SchemeRun RunGreedySingle(const Matroid& m, const ArrivalOrder& order,
                          const ActiveSet& active, Rng& rng) {
  return RunScheme(*MakeGreedySingle(), m, order, active, rng);
}

SchemeRun RunAcceptSecond(const Matroid& m, const ArrivalOrder& order,
                          const ActiveSet& active, Rng& rng) {
  return RunScheme(*MakeAcceptSecond(), m, order, active, rng);
}

SchemeRun RunEvenMixture(const Matroid& m, const ArrivalOrder& order,
                         const ActiveSet& active, Rng& rng) {
  return RunScheme(*MakeEvenMixture(), m, order, active, rng);
}

SchemeRun RunBGreedy(const Matroid& m, double b, const ArrivalOrder& order,
                     const ActiveSet& active, Rng& rng) {
  return RunScheme(BGreedy(b), m, order, active, rng);
}

}  // namespace ocrs
