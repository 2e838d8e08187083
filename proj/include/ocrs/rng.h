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

#ifndef OCRS_RNG_H_
#define OCRS_RNG_H_

#include <cstdint>
#include <random>

namespace ocrs {

// Independent purposes get independent labels so that, for example, the
// samples used to learn thresholds never overlap the samples used to
// evaluate them.
enum class StreamLabel : std::uint32_t {
  kSelectability = 1,
  kThresholdLearning = 2,
  kThresholdEvaluation = 3,
  kProphetEvaluation = 4,
  kMarginals = 5,
  kHardInstance = 6,
  kBootstrap = 7,
  kOptimizer = 8,
  kTest = 99,
};

std::uint64_t SplitMix64(std::uint64_t x);

// Deterministic seed for the `index`-th draw sequence of `label` under
// `master`.
std::uint64_t DeriveSeed(std::uint64_t master, StreamLabel label,
                         std::uint64_t index);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1) with 53 random bits.
  double Uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  bool Bernoulli(double p) { return Uniform01() < p; }
  // Uniform integer in [0, bound).
  std::uint64_t UniformInt(std::uint64_t bound);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

// A labelled family of per-trial generators. Trial t always sees the same
// stream regardless of which worker runs it.
class SeedStream {
 public:
  SeedStream(std::uint64_t master, StreamLabel label)
      : master_(master), label_(label) {}

  Rng ForTrial(std::uint64_t trial) const {
    return Rng(DeriveSeed(master_, label_, trial));
  }
  std::uint64_t master() const { return master_; }
  StreamLabel label() const { return label_; }

 private:
  std::uint64_t master_;
  StreamLabel label_;
};

}  // namespace ocrs

#endif  // OCRS_RNG_H_
