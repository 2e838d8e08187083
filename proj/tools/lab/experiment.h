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

#ifndef OCRS_LAB_EXPERIMENT_H_
#define OCRS_LAB_EXPERIMENT_H_

// Experiment configs are JSON objects with a "kind" field:
//
//   selectability  matroid, x, scheme, order?, trials, seed, exact?
//   minimize_fn    n
//   counting       n, p?, grid_steps?
//   prophet        matroid, distributions, epsilon, samples? | sample_constant?,
//                  scheme, order?, trials, seed, verify_trials?,
//                  marginal_trials?
//   thresholds     matroid, distributions, epsilon, samples? |
//                  sample_constant?, repetitions?, verify_trials?, seed
//   hard_instance  family, N, M, trials, seed, samples?, conditional?,
//                  stress?
//
// "x" is an array, {"uniform": value}, or "laminar_capacity". An optional
// "output" object ({"dir": ..., "name": ...}) only affects where files go.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace ocrs::lab {

using nlohmann::json;

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<std::string> diagnostics);
  const std::vector<std::string>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<std::string> diagnostics_;
};

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> trials;
};

std::vector<std::string> ExperimentKinds();

json ApplyOverrides(json config, const Overrides& overrides);

// FNV-1a over the canonical dump of the config without its "output" entry.
std::string ConfigHash(const json& config);

// Every problem found, one message each; empty for a valid config.
std::vector<std::string> Validate(const json& config);

struct ExperimentOutput {
  json report;  // includes kind, config_hash, seed, config and result
  std::optional<std::string> csv;
};

// Validates (throwing ValidationError) and runs. The output does not depend
// on `workers`.
ExperimentOutput RunExperiment(const json& config, int workers = 1);

}  // namespace ocrs::lab

#endif  // OCRS_LAB_EXPERIMENT_H_
