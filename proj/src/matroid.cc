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

#include "ocrs/matroid.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "ocrs/errors.h"

namespace ocrs {
namespace {

constexpr double kSumTolerance = 1e-9;

std::string SetToString(std::span<const Element> s) {
  std::ostringstream out;
  out << "{";
  for (size_t i = 0; i < s.size(); ++i) {
    if (i) out << ",";
    out << s[i];
  }
  out << "}";
  return out.str();
}

bool Contains(std::span<const Element> sorted, Element e) {
  return std::binary_search(sorted.begin(), sorted.end(), e);
}

ElementSet SwapOut(std::span<const Element> s, Element out, Element in) {
  ElementSet r;
  r.reserve(s.size());
  for (Element e : s) {
    if (e != out) r.push_back(e);
  }
  r.push_back(in);
  std::sort(r.begin(), r.end());
  return r;
}

void CheckWeights(const Matroid& m, std::span<const double> w) {
  if (static_cast<int>(w.size()) != m.size()) {
    throw std::invalid_argument("weight vector has wrong length");
  }
  for (double v : w) {
    if (!std::isfinite(v) || v < 0) {
      throw std::invalid_argument("weights must be finite and nonnegative");
    }
  }
}

double Weight(std::span<const double> w, std::span<const Element> s) {
  double total = 0;
  for (Element e : s) total += w[e];
  return total;
}

class UniformState final : public IndependenceState {
 public:
  explicit UniformState(int rank) : rank_(rank) {}
  bool CanAdd(Element) const override { return count_ < rank_; }
  void Add(Element) override { ++count_; }
  std::unique_ptr<IndependenceState> Clone() const override {
    return std::make_unique<UniformState>(*this);
  }

 private:
  int rank_;
  int count_ = 0;
};

class LaminarState final : public IndependenceState {
 public:
  explicit LaminarState(const LaminarMatroid& m)
      : m_(&m), counts_(m.spec().sets.size(), 0) {}
  bool CanAdd(Element e) const override {
    for (int s : m_->chain(e)) {
      if (counts_[s] >= m_->spec().capacities[s]) return false;
    }
    return true;
  }
  void Add(Element e) override {
    for (int s : m_->chain(e)) ++counts_[s];
  }
  std::unique_ptr<IndependenceState> Clone() const override {
    return std::make_unique<LaminarState>(*this);
  }

 private:
  const LaminarMatroid* m_;
  std::vector<int> counts_;
};

// Union-find without path compression so that lookups stay const.
class GraphicState final : public IndependenceState {
 public:
  explicit GraphicState(const GraphicMatroid& m)
      : m_(&m), parent_(m.spec().vertices), rank_(m.spec().vertices, 0) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  bool CanAdd(Element e) const override {
    const auto [u, v] = m_->spec().edges[e];
    return Find(u) != Find(v);
  }
  void Add(Element e) override {
    const auto [u, v] = m_->spec().edges[e];
    int a = Find(u);
    int b = Find(v);
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
  }
  std::unique_ptr<IndependenceState> Clone() const override {
    return std::make_unique<GraphicState>(*this);
  }

 private:
  int Find(int v) const {
    while (parent_[v] != v) v = parent_[v];
    return v;
  }

  const GraphicMatroid* m_;
  std::vector<int> parent_;
  std::vector<int> rank_;
};

// Maintains a matching covering the current set; an element can be added
// iff an augmenting path starts at it.
class TransversalState final : public IndependenceState {
 public:
  explicit TransversalState(const TransversalMatroid& m)
      : m_(&m),
        match_left_(m.spec().left, -1),
        match_right_(m.spec().right, -1) {}

  bool CanAdd(Element e) const override {
    std::vector<int> via;
    return FindPath(e, via) >= 0;
  }

  void Add(Element e) override {
    std::vector<int> via;
    int r = FindPath(e, via);
    // Flip the alternating path back to e.
    while (r >= 0) {
      const int l = via[r];
      const int next = match_left_[l];
      match_left_[l] = r;
      match_right_[r] = l;
      r = (l == e) ? -1 : next;
    }
  }

  std::unique_ptr<IndependenceState> Clone() const override {
    return std::make_unique<TransversalState>(*this);
  }

 private:
  // BFS over alternating paths from the unmatched left vertex `start`.
  // Returns a free right vertex reached, or -1; via[r] is the left vertex
  // from which r was reached.
  int FindPath(int start, std::vector<int>& via) const {
    const auto& adj = m_->adjacency();
    via.assign(match_right_.size(), -1);
    std::deque<int> queue{start};
    while (!queue.empty()) {
      const int l = queue.front();
      queue.pop_front();
      for (int r : adj[l]) {
        if (via[r] >= 0) continue;
        via[r] = l;
        if (match_right_[r] < 0) return r;
        queue.push_back(match_right_[r]);
      }
    }
    return -1;
  }

  const TransversalMatroid* m_;
  std::vector<int> match_left_;
  std::vector<int> match_right_;
};

class ExplicitState final : public IndependenceState {
 public:
  explicit ExplicitState(const ExplicitMatroid& m) : m_(&m) {}
  bool CanAdd(Element e) const override {
    return m_->IsIndependentMask(mask_ | (1u << e));
  }
  void Add(Element e) override { mask_ |= 1u << e; }
  std::unique_ptr<IndependenceState> Clone() const override {
    return std::make_unique<ExplicitState>(*this);
  }

 private:
  const ExplicitMatroid* m_;
  std::uint32_t mask_ = 0;
};

}  // namespace

std::string_view FamilyName(MatroidFamily family) {
  switch (family) {
    case MatroidFamily::kUniform:
      return "uniform";
    case MatroidFamily::kLaminar:
      return "laminar";
    case MatroidFamily::kGraphic:
      return "graphic";
    case MatroidFamily::kTransversal:
      return "transversal";
    case MatroidFamily::kExplicit:
      return "explicit";
  }
  return "unknown";
}

std::optional<MatroidFamily> ParseFamily(std::string_view name) {
  for (auto f : {MatroidFamily::kUniform, MatroidFamily::kLaminar,
                 MatroidFamily::kGraphic, MatroidFamily::kTransversal,
                 MatroidFamily::kExplicit}) {
    if (FamilyName(f) == name) return f;
  }
  return std::nullopt;
}

ElementSet Normalize(std::span<const Element> s) {
  ElementSet r(s.begin(), s.end());
  std::sort(r.begin(), r.end());
  r.erase(std::unique(r.begin(), r.end()), r.end());
  return r;
}

Matroid::Matroid(int n) : n_(n) {
  if (n < 0) throw std::invalid_argument("ground set size must be >= 0");
}

void Matroid::CheckElements(std::span<const Element> s) const {
  for (Element e : s) {
    if (e < 0 || e >= n_) {
      throw std::out_of_range("element " + std::to_string(e) +
                              " outside ground set of size " +
                              std::to_string(n_));
    }
  }
  ElementSet sorted(s.begin(), s.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("element set contains duplicates");
  }
}

bool Matroid::IsIndependent(std::span<const Element> s) const {
  CheckElements(s);
  auto state = NewState();
  for (Element e : s) {
    if (!state->CanAdd(e)) return false;
    state->Add(e);
  }
  return true;
}

int Matroid::Rank(std::span<const Element> s) const {
  CheckElements(s);
  ElementSet sorted(s.begin(), s.end());
  std::sort(sorted.begin(), sorted.end());
  auto state = NewState();
  int rank = 0;
  for (Element e : sorted) {
    if (state->CanAdd(e)) {
      state->Add(e);
      ++rank;
    }
  }
  return rank;
}

int Matroid::Rank() const {
  ElementSet all(n_);
  std::iota(all.begin(), all.end(), 0);
  return Rank(all);
}

bool Matroid::IsBasis(std::span<const Element> s) const {
  return IsIndependent(s) && static_cast<int>(s.size()) == Rank();
}

UniformMatroid::UniformMatroid(int n, int rank) : Matroid(n), rank_(rank) {
  if (rank < 0) throw std::invalid_argument("uniform rank must be >= 0");
}

std::unique_ptr<IndependenceState> UniformMatroid::NewState() const {
  return std::make_unique<UniformState>(rank_);
}

bool UniformMatroid::IsIndependent(std::span<const Element> s) const {
  CheckElements(s);
  return static_cast<int>(s.size()) <= rank_;
}

std::string ValidateLaminar(const LaminarSpec& spec) {
  if (spec.n < 0) return "ground set size must be >= 0";
  if (spec.sets.size() != spec.capacities.size()) {
    return "sets and capacities differ in length";
  }
  std::vector<ElementSet> sets;
  for (size_t k = 0; k < spec.sets.size(); ++k) {
    const ElementSet& s = spec.sets[k];
    if (s.empty()) return "set " + std::to_string(k) + " is empty";
    for (Element e : s) {
      if (e < 0 || e >= spec.n) {
        return "set " + std::to_string(k) + " has element out of range";
      }
    }
    ElementSet sorted = Normalize(s);
    if (sorted.size() != s.size()) {
      return "set " + std::to_string(k) + " repeats an element";
    }
    if (spec.capacities[k] <= 0) {
      return "capacity of set " + std::to_string(k) + " must be positive";
    }
    sets.push_back(std::move(sorted));
  }
  for (size_t a = 0; a < sets.size(); ++a) {
    for (size_t b = a + 1; b < sets.size(); ++b) {
      ElementSet common;
      std::set_intersection(sets[a].begin(), sets[a].end(), sets[b].begin(),
                            sets[b].end(), std::back_inserter(common));
      if (!common.empty() && common.size() != sets[a].size() &&
          common.size() != sets[b].size()) {
        return "sets " + std::to_string(a) + " and " + std::to_string(b) +
               " cross";
      }
    }
  }
  return "";
}

LaminarSpec NormalizeLaminar(const LaminarSpec& spec) {
  if (auto err = ValidateLaminar(spec); !err.empty()) {
    throw std::invalid_argument("laminar spec: " + err);
  }
  const size_t k = spec.sets.size();
  std::vector<ElementSet> sets(k);
  std::vector<int> caps(k);
  for (size_t i = 0; i < k; ++i) {
    sets[i] = Normalize(spec.sets[i]);
    caps[i] = std::min<int>(spec.capacities[i], sets[i].size());
  }
  LaminarSpec out;
  out.n = spec.n;
  for (size_t i = 0; i < k; ++i) {
    // |A ∩ L| <= |L| always holds.
    if (caps[i] >= static_cast<int>(sets[i].size())) continue;
    bool implied = false;
    for (size_t j = 0; j < k && !implied; ++j) {
      if (j == i) continue;
      const bool superset =
          std::includes(sets[j].begin(), sets[j].end(), sets[i].begin(),
                        sets[i].end());
      if (!superset) continue;
      if (sets[j].size() == sets[i].size()) {
        // Identical sets: keep the tighter one, lower index on ties.
        implied = caps[j] < caps[i] || (caps[j] == caps[i] && j < i);
      } else {
        implied = caps[j] <= caps[i];
      }
    }
    if (!implied) {
      out.sets.push_back(sets[i]);
      out.capacities.push_back(caps[i]);
    }
  }
  return out;
}

LaminarMatroid::LaminarMatroid(LaminarSpec spec)
    : Matroid(spec.n), spec_(std::move(spec)), chains_(spec_.n) {
  if (auto err = ValidateLaminar(spec_); !err.empty()) {
    throw std::invalid_argument("laminar spec: " + err);
  }
  for (auto& s : spec_.sets) std::sort(s.begin(), s.end());
  for (size_t k = 0; k < spec_.sets.size(); ++k) {
    for (Element e : spec_.sets[k]) chains_[e].push_back(static_cast<int>(k));
  }
}

std::unique_ptr<IndependenceState> LaminarMatroid::NewState() const {
  return std::make_unique<LaminarState>(*this);
}

GraphicMatroid::GraphicMatroid(GraphicSpec spec)
    : Matroid(static_cast<int>(spec.edges.size())), spec_(std::move(spec)) {
  if (spec_.vertices < 0) throw std::invalid_argument("vertex count < 0");
  for (const auto& [u, v] : spec_.edges) {
    if (u < 0 || v < 0 || u >= spec_.vertices || v >= spec_.vertices) {
      throw std::invalid_argument("edge endpoint out of range");
    }
  }
}

std::unique_ptr<IndependenceState> GraphicMatroid::NewState() const {
  return std::make_unique<GraphicState>(*this);
}

TransversalMatroid::TransversalMatroid(TransversalSpec spec)
    : Matroid(spec.left), spec_(std::move(spec)), adjacency_(spec_.left) {
  if (spec_.right < 0) throw std::invalid_argument("right side size < 0");
  for (const auto& [l, r] : spec_.edges) {
    if (l < 0 || r < 0 || l >= spec_.left || r >= spec_.right) {
      throw std::invalid_argument("bipartite edge endpoint out of range");
    }
    adjacency_[l].push_back(r);
  }
  for (auto& adj : adjacency_) {
    std::sort(adj.begin(), adj.end());
    adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
  }
}

std::unique_ptr<IndependenceState> TransversalMatroid::NewState() const {
  return std::make_unique<TransversalState>(*this);
}

ExplicitMatroid::ExplicitMatroid(int n, std::vector<ElementSet> bases)
    : Matroid(n), bases_(std::move(bases)) {
  if (n > 30) throw UnsupportedSize("explicit matroid limited to n <= 30");
  if (bases_.empty()) throw std::invalid_argument("need at least one basis");
  for (auto& b : bases_) {
    CheckElements(b);
    std::sort(b.begin(), b.end());
    if (b.size() != bases_.front().size()) {
      throw std::invalid_argument("bases must share one size");
    }
    std::uint32_t mask = 0;
    for (Element e : b) mask |= 1u << e;
    masks_.push_back(mask);
  }
}

bool ExplicitMatroid::IsIndependentMask(std::uint32_t mask) const {
  for (std::uint32_t b : masks_) {
    if ((mask & b) == mask) return true;
  }
  return false;
}

bool ExplicitMatroid::IsIndependent(std::span<const Element> s) const {
  CheckElements(s);
  std::uint32_t mask = 0;
  for (Element e : s) mask |= 1u << e;
  return IsIndependentMask(mask);
}

std::unique_ptr<IndependenceState> ExplicitMatroid::NewState() const {
  return std::make_unique<ExplicitState>(*this);
}

std::string CheckMatroidAxioms(const Matroid& m) {
  const int n = m.size();
  if (n > 12) throw UnsupportedSize("axiom enumeration limited to n <= 12");
  const std::uint32_t total = 1u << n;
  std::vector<char> indep(total);
  ElementSet s;
  for (std::uint32_t mask = 0; mask < total; ++mask) {
    s.clear();
    for (int e = 0; e < n; ++e) {
      if (mask >> e & 1) s.push_back(e);
    }
    indep[mask] = m.IsIndependent(s);
  }
  if (!indep[0]) return "empty set is dependent";
  for (std::uint32_t mask = 1; mask < total; ++mask) {
    if (!indep[mask]) continue;
    for (int e = 0; e < n; ++e) {
      if ((mask >> e & 1) && !indep[mask & ~(1u << e)]) {
        return "downward closure fails at mask " + std::to_string(mask);
      }
    }
  }
  // Augmentation for |J| = |I| + 1 implies the general axiom under
  // downward closure.
  for (std::uint32_t i = 0; i < total; ++i) {
    if (!indep[i]) continue;
    const int size_i = std::popcount(i);
    for (std::uint32_t j = 0; j < total; ++j) {
      if (!indep[j] || std::popcount(j) != size_i + 1) continue;
      const std::uint32_t extra = j & ~i;
      bool ok = false;
      for (int e = 0; e < n && !ok; ++e) {
        if ((extra >> e & 1) && indep[i | (1u << e)]) ok = true;
      }
      if (!ok) {
        return "augmentation fails for masks " + std::to_string(i) + ", " +
               std::to_string(j);
      }
    }
  }
  return "";
}

ElementSet MaxWeightBasis(const Matroid& m, std::span<const double> w) {
  CheckWeights(m, w);
  std::vector<Element> order(m.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Element a, Element b) { return w[a] > w[b]; });
  auto state = m.NewState();
  ElementSet basis;
  for (Element e : order) {
    if (state->CanAdd(e)) {
      state->Add(e);
      basis.push_back(e);
    }
  }
  std::sort(basis.begin(), basis.end());
  return basis;
}

Element StrongExchange(const Matroid& m, std::span<const Element> a,
                       std::span<const Element> b, Element x) {
  const ElementSet sa = Normalize(a);
  const ElementSet sb = Normalize(b);
  if (!m.IsBasis(sa) || !m.IsBasis(sb)) {
    throw std::invalid_argument("strong exchange needs two bases");
  }
  if (!Contains(sa, x) || Contains(sb, x)) {
    throw std::invalid_argument("x must lie in a \\ b");
  }
  for (Element y : sb) {
    if (Contains(sa, y)) continue;
    if (m.IsIndependent(SwapOut(sa, x, y)) &&
        m.IsIndependent(SwapOut(sb, y, x))) {
      return y;
    }
  }
  throw ContractViolation("no strong exchange partner for element " +
                          std::to_string(x) + " between " + SetToString(sa) +
                          " and " + SetToString(sb));
}

Element ExchangeMap::operator()(Element x) const {
  for (const auto& [from, to] : mapping) {
    if (from == x) return to;
  }
  throw std::out_of_range("element not in the source basis");
}

ExchangeMap MonotoneExchangeMap(const Matroid& m, std::span<const double> w,
                                std::span<const Element> a,
                                std::span<const Element> b) {
  CheckWeights(m, w);
  ExchangeMap f;
  f.source = Normalize(a);
  f.target = Normalize(b);
  if (!m.IsBasis(f.source) || !m.IsBasis(f.target)) {
    throw std::invalid_argument("exchange map needs two bases");
  }
  const double best = Weight(w, MaxWeightBasis(m, w));
  if (Weight(w, f.source) < best - 1e-9 * (1.0 + std::abs(best))) {
    throw std::invalid_argument("source basis is not of maximum weight");
  }

  // a_1, ..., a_r in greedy order: heavier first, lower index on ties.
  std::vector<Element> ordered = f.source;
  std::stable_sort(ordered.begin(), ordered.end(),
                   [&](Element p, Element q) { return w[p] > w[q]; });

  ElementSet current = f.source;
  std::vector<std::pair<Element, Element>> reversed;
  for (auto it = ordered.rbegin(); it != ordered.rend(); ++it) {
    const Element ai = *it;
    if (Contains(current, ai) && !Contains(f.target, ai)) {
      const Element bi = StrongExchange(m, current, f.target, ai);
      reversed.emplace_back(ai, bi);
      current = SwapOut(current, ai, bi);
    } else {
      reversed.emplace_back(ai, ai);
    }
  }
  f.mapping.assign(reversed.rbegin(), reversed.rend());
  return f;
}

std::vector<std::string> ValidateExchangeMap(const Matroid& m,
                                             std::span<const double> w,
                                             const ExchangeMap& f) {
  std::vector<std::string> problems;
  ElementSet domain;
  ElementSet image;
  for (const auto& [x, y] : f.mapping) {
    domain.push_back(x);
    image.push_back(y);
  }
  std::sort(domain.begin(), domain.end());
  std::sort(image.begin(), image.end());
  if (domain != f.source) problems.push_back("domain differs from A");
  if (image != f.target) problems.push_back("image is not exactly B");
  for (const auto& [x, y] : f.mapping) {
    const std::string tag = "f(" + std::to_string(x) + ")=" +
                            std::to_string(y);
    const ElementSet swapped = SwapOut(f.target, y, x);
    const bool repeats =
        std::adjacent_find(swapped.begin(), swapped.end()) != swapped.end();
    if (repeats || !m.IsBasis(swapped)) {
      problems.push_back(tag + ": B - f(x) + x is not a basis");
    }
    if (w[y] > w[x]) problems.push_back(tag + ": weight increases");
    if (Contains(f.target, x) && y != x) {
      problems.push_back(tag + ": not the identity on A ∩ B");
    }
  }
  return problems;
}

PolytopeCheck CheckPolytopeMembership(const Matroid& m,
                                      std::span<const double> x,
                                      const ConvexCertificate* certificate) {
  const int n = m.size();
  if (static_cast<int>(x.size()) != n) {
    throw std::invalid_argument("point has wrong length");
  }
  for (double v : x) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw std::invalid_argument("point entries must lie in [0,1]");
    }
  }
  PolytopeCheck check;
  auto test_constraint = [&](std::span<const Element> s, double rhs) {
    double lhs = 0;
    for (Element e : s) lhs += x[e];
    if (lhs > rhs + kSumTolerance && check.member) {
      check.member = false;
      check.violated.assign(s.begin(), s.end());
      check.lhs = lhs;
      check.rhs = rhs;
    }
  };

  if (const auto* u = dynamic_cast<const UniformMatroid*>(&m)) {
    check.method = "explicit";
    ElementSet all(n);
    std::iota(all.begin(), all.end(), 0);
    test_constraint(all, std::min(u->rank_bound(), n));
    return check;
  }
  if (const auto* l = dynamic_cast<const LaminarMatroid*>(&m)) {
    check.method = "explicit";
    for (size_t k = 0; k < l->spec().sets.size(); ++k) {
      test_constraint(l->spec().sets[k], l->spec().capacities[k]);
    }
    return check;
  }
  if (certificate != nullptr && !certificate->parts.empty()) {
    std::vector<int> counts(n, 0);
    for (const auto& part : certificate->parts) {
      if (!m.IsIndependent(part)) {
        throw std::invalid_argument("certificate part is dependent");
      }
      for (Element e : part) ++counts[e];
    }
    const double parts = static_cast<double>(certificate->parts.size());
    bool dominated = true;
    for (int e = 0; e < n; ++e) {
      if (x[e] > counts[e] / parts + 1e-12) dominated = false;
    }
    if (dominated) {
      check.method = "certificate";
      return check;
    }
  }
  if (n > 20) {
    throw UnsupportedSize(
        "polytope membership for n > 20 needs an explicit constraint system "
        "or a certificate");
  }
  check.method = "enumeration";
  ElementSet s;
  for (std::uint32_t mask = 1; mask < (1u << n) && check.member; ++mask) {
    s.clear();
    for (int e = 0; e < n; ++e) {
      if (mask >> e & 1) s.push_back(e);
    }
    test_constraint(s, m.Rank(s));
  }
  return check;
}

bool InMatroidPolytope(const Matroid& m, std::span<const double> x,
                       const ConvexCertificate* certificate) {
  return CheckPolytopeMembership(m, x, certificate).member;
}

}  // namespace ocrs
