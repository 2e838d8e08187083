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

#ifndef OCRS_HARD_INSTANCES_H_
#define OCRS_HARD_INSTANCES_H_

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ocrs/eval.h"
#include "ocrs/matroid.h"
#include "ocrs/schemes.h"

namespace ocrs {

// The two families of instances on which no oblivious scheme is balanced.
// Both use the same layout: element i*M + j belongs to block i, and the
// point x^i puts 1 on block i and 1/M elsewhere.
//
//   graphic:     K_{N,M} with u_i = vertex i and v_j = vertex N + j; block i
//                is the star delta(u_i).
//   transversal: left vertex l_{i,j}; right vertices r_i = i and
//                u_k = N + k for k < M - 1; block i is L_i.
class HardInstance {
 public:
  enum class Kind { kGraphic, kTransversal };

  // Throw std::invalid_argument unless N, M >= 1.
  static HardInstance Graphic(int n_blocks, int block_size);
  static HardInstance Transversal(int n_blocks, int block_size);

  Kind kind() const { return kind_; }
  std::string_view KindName() const;
  int N() const { return n_; }
  int M() const { return m_; }
  const Matroid& matroid() const { return *matroid_; }
  std::shared_ptr<const Matroid> shared_matroid() const { return matroid_; }

  Element element(int block, int j) const { return block * m_ + j; }
  ElementSet Block(int block) const;
  // x^i.
  std::vector<double> Point(int block) const;
  // The all-1/M point.
  std::vector<double> AveragePoint() const;
  // M independent parts whose average is exactly x^i: T_{i,j} =
  // delta(u_i) + delta(v_j) (graphic) or L_i + {l_{t,j} : t} (transversal).
  // Also certifies the average point, which lies below x^i.
  ConvexCertificate Certificate(int block) const;

 private:
  HardInstance(Kind kind, int n, int m, std::shared_ptr<const Matroid> matroid)
      : kind_(kind), n_(n), m_(m), matroid_(std::move(matroid)) {}

  Kind kind_;
  int n_;
  int m_;
  std::shared_ptr<const Matroid> matroid_;
};

// Exact check that the certificate parts are independent and average to
// x^i entrywise. Returns an empty string on success.
std::string VerifyCertificate(const HardInstance& inst, int block);

struct FullBlockStats {
  std::int64_t trials = 0;
  double mean = 0.0;      // empirical E|U*|
  double expected = 0.0;  // N M^{-M}
  double sd_of_mean = 0.0;  // sqrt(N p (1-p) / trials)
  std::map<int, std::int64_t> histogram;  // |U*| -> trials
  std::int64_t nonempty_trials = 0;
  // Trials where rank of the union of full blocks differs from |U*| + M - 1
  // (or from 0 when U* is empty).
  std::int64_t rank_failures = 0;
};

// Samples R(y) with y = 1/M everywhere and collects the blocks that are
// fully active (U* for graphic, I* for transversal).
FullBlockStats UStarExperiment(const HardInstance& inst, std::int64_t trials,
                               std::uint64_t seed, int workers = 1);

// Exact law of |U*| by enumerating all activity patterns; N*M <= 20.
std::vector<double> UStarExactDistribution(const HardInstance& inst);

struct ConditionalCheck {
  std::string method;  // "exact" or "chi_square"
  double total_variation = 0.0;  // exact method
  double chi_square = 0.0;       // chi_square method
  int degrees_of_freedom = 0;
  double p_value = 1.0;
  std::int64_t conditioned_samples = 0;
  bool insufficient = false;
  bool identical = false;
};

// Compares the law of R(y) conditioned on block `condition_block` being
// fully active with the law of R(x^block). Exact total variation when
// N*M <= 12; otherwise a chi-square test (at level 0.01) on samples kept by
// rejection, using the active count outside `block` and flagging any sample
// where `block` is not fully active.
ConditionalCheck ConditionalIdentityCheck(const HardInstance& inst, int block,
                                          int condition_block,
                                          std::int64_t trials,
                                          std::uint64_t seed);

// 1/M + M^{(s+1)M-1} (M-1) / N: the balancedness cap for oblivious schemes
// that see s samples of R(y).
double BalancednessUpperBound(double n_blocks, int block_size, int samples);

struct BlockResult {
  int block = 0;
  std::int64_t trials = 0;
  Element argmin = 0;
  std::int64_t accepted = 0;  // for argmin
  double estimate = 0.0;      // min over the block of P(accepted)
  Interval ci;
};

struct HardStressReport {
  std::string scheme;
  std::vector<BlockResult> blocks;
  double balancedness = 1.0;  // min over probed blocks
  Interval ci;
  double bound = 0.0;
  bool within_bound = true;  // balancedness CI reaches below the bound
  std::vector<std::string> warnings;
};

// For each probed block i runs the scheme on R(x^i) and records how often
// each element of block i (always active there) is accepted. `blocks`
// empty means all N blocks. The same scheme object serves every block, so
// it cannot depend on i.
HardStressReport StressObliviousScheme(const OnlineScheme& scheme,
                                       const HardInstance& inst,
                                       std::int64_t trials, std::uint64_t seed,
                                       std::vector<int> blocks = {},
                                       int workers = 1);

// Non-oblivious control: told i, it accepts exactly block i, which is
// independent and always active under x^i.
HardStressReport StressClairvoyantControl(const HardInstance& inst,
                                          std::int64_t trials,
                                          std::uint64_t seed,
                                          std::vector<int> blocks = {},
                                          int workers = 1);

}  // namespace ocrs

#endif  // OCRS_HARD_INSTANCES_H_
