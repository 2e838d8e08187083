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

#ifndef OCRS_MATROID_H_
#define OCRS_MATROID_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ocrs {

// Ground elements are the dense indices 0..n-1.
using Element = int;
// A sorted list of distinct elements.
using ElementSet = std::vector<Element>;

enum class MatroidFamily { kUniform, kLaminar, kGraphic, kTransversal, kExplicit };

std::string_view FamilyName(MatroidFamily family);
std::optional<MatroidFamily> ParseFamily(std::string_view name);

// Returns a sorted, duplicate-free copy.
ElementSet Normalize(std::span<const Element> s);

// Incremental independence test for a growing set. Cheaper than re-running
// the oracle from scratch for every insertion.
class IndependenceState {
 public:
  virtual ~IndependenceState() = default;
  // True iff current + e is independent. `e` must not already be present.
  virtual bool CanAdd(Element e) const = 0;
  // Requires CanAdd(e).
  virtual void Add(Element e) = 0;
  virtual std::unique_ptr<IndependenceState> Clone() const = 0;
};

class Matroid {
 public:
  virtual ~Matroid() = default;

  int size() const { return n_; }
  virtual MatroidFamily family() const = 0;
  virtual std::unique_ptr<IndependenceState> NewState() const = 0;

  // Throws std::out_of_range for bad indices and std::invalid_argument for
  // repeated elements.
  virtual bool IsIndependent(std::span<const Element> s) const;

  // Size of the maximal independent subset built greedily in index order.
  int Rank(std::span<const Element> s) const;
  int Rank() const;

  bool IsBasis(std::span<const Element> s) const;

 protected:
  explicit Matroid(int n);
  void CheckElements(std::span<const Element> s) const;

 private:
  int n_;
};

class UniformMatroid final : public Matroid {
 public:
  UniformMatroid(int n, int rank);
  MatroidFamily family() const override { return MatroidFamily::kUniform; }
  std::unique_ptr<IndependenceState> NewState() const override;
  bool IsIndependent(std::span<const Element> s) const override;
  int rank_bound() const { return rank_; }

 private:
  int rank_;
};

// Independence: |A ∩ L| <= r_L for every L in the family.
struct LaminarSpec {
  int n = 0;
  std::vector<ElementSet> sets;
  std::vector<int> capacities;
};

// Empty string if `spec` is a well-formed laminar family with positive
// capacities, otherwise a description of the first problem found.
std::string ValidateLaminar(const LaminarSpec& spec);

// Equivalent spec with r_L <= |L| and strictly increasing capacities along
// every chain. Sets whose constraint is implied by a superset are dropped.
LaminarSpec NormalizeLaminar(const LaminarSpec& spec);

class LaminarMatroid final : public Matroid {
 public:
  explicit LaminarMatroid(LaminarSpec spec);
  MatroidFamily family() const override { return MatroidFamily::kLaminar; }
  std::unique_ptr<IndependenceState> NewState() const override;
  const LaminarSpec& spec() const { return spec_; }
  // Indices of the sets containing e.
  const std::vector<int>& chain(Element e) const { return chains_[e]; }

 private:
  LaminarSpec spec_;
  std::vector<std::vector<int>> chains_;
};

struct GraphicSpec {
  int vertices = 0;
  std::vector<std::pair<int, int>> edges;
};

// Independence: the selected edges form a forest.
class GraphicMatroid final : public Matroid {
 public:
  explicit GraphicMatroid(GraphicSpec spec);
  MatroidFamily family() const override { return MatroidFamily::kGraphic; }
  std::unique_ptr<IndependenceState> NewState() const override;
  const GraphicSpec& spec() const { return spec_; }

 private:
  GraphicSpec spec_;
};

// Bipartite graph on left vertices 0..left-1 and right vertices
// 0..right-1; the ground set is the left side.
struct TransversalSpec {
  int left = 0;
  int right = 0;
  std::vector<std::pair<int, int>> edges;  // (left, right)
};

// Independence: some matching covers the selected left vertices.
class TransversalMatroid final : public Matroid {
 public:
  explicit TransversalMatroid(TransversalSpec spec);
  MatroidFamily family() const override {
    return MatroidFamily::kTransversal;
  }
  std::unique_ptr<IndependenceState> NewState() const override;
  const TransversalSpec& spec() const { return spec_; }
  const std::vector<std::vector<int>>& adjacency() const { return adjacency_; }

 private:
  TransversalSpec spec_;
  std::vector<std::vector<int>> adjacency_;
};

// A matroid listed by its bases; n <= 30. Intended for small test fixtures.
class ExplicitMatroid final : public Matroid {
 public:
  ExplicitMatroid(int n, std::vector<ElementSet> bases);
  MatroidFamily family() const override { return MatroidFamily::kExplicit; }
  std::unique_ptr<IndependenceState> NewState() const override;
  bool IsIndependent(std::span<const Element> s) const override;
  const std::vector<ElementSet>& bases() const { return bases_; }
  bool IsIndependentMask(std::uint32_t mask) const;

 private:
  std::vector<ElementSet> bases_;
  std::vector<std::uint32_t> masks_;
};

// Exhaustive check of the independence axioms (empty set independent,
// downward closure, augmentation). Returns a description of the first
// failure or an empty string. Requires n <= 12.
std::string CheckMatroidAxioms(const Matroid& m);

// Nonnegative weight per element.
using WeightVector = std::vector<double>;

// Maximum-weight basis via the greedy algorithm; equal weights go to the
// lower index.
ElementSet MaxWeightBasis(const Matroid& m, std::span<const double> w);

// Smallest y in b \ a such that a - x + y and b - y + x are both bases.
// Throws std::invalid_argument if a, b are not bases or x is not in a \ b,
// and ContractViolation if no such y exists.
Element StrongExchange(const Matroid& m, std::span<const Element> a,
                       std::span<const Element> b, Element x);

struct ExchangeMap {
  ElementSet source;  // A, a maximum-weight basis
  ElementSet target;  // B
  // (x, f(x)) for every x in A, in A's greedy order.
  std::vector<std::pair<Element, Element>> mapping;

  Element operator()(Element x) const;
};

// Builds the monotone bijection f: A -> B (B - f(x) + x a basis,
// w(f(x)) <= w(x), identity on A ∩ B) by walking A from its lightest
// element to its heaviest and applying strong exchange against the current
// basis. Throws std::invalid_argument if `a` is not a maximum-weight basis
// or `b` is not a basis.
ExchangeMap MonotoneExchangeMap(const Matroid& m, std::span<const double> w,
                                std::span<const Element> a,
                                std::span<const Element> b);

// Independent check of the exchange-map properties; returns one message per
// violated property.
std::vector<std::string> ValidateExchangeMap(const Matroid& m,
                                             std::span<const double> w,
                                             const ExchangeMap& f);

// Convex combination witness for a polytope point: x <= average of the
// indicator vectors of `parts`, each of which must be independent.
struct ConvexCertificate {
  std::vector<ElementSet> parts;
};

struct PolytopeCheck {
  bool member = true;
  std::string method;             // "explicit", "enumeration", "certificate"
  ElementSet violated;            // set whose constraint fails, if any
  double lhs = 0.0;               // x(violated)
  double rhs = 0.0;               // rank or capacity of violated
  std::string detail;
};

// Exact membership in the matroid polytope. Uniform and laminar matroids use
// their explicit constraint systems; other families enumerate all subsets
// for n <= 20 or use `certificate` when supplied. Throws UnsupportedSize
// when none of these applies.
PolytopeCheck CheckPolytopeMembership(
    const Matroid& m, std::span<const double> x,
    const ConvexCertificate* certificate = nullptr);

bool InMatroidPolytope(const Matroid& m, std::span<const double> x,
                       const ConvexCertificate* certificate = nullptr);

}  // namespace ocrs

#endif  // OCRS_MATROID_H_
