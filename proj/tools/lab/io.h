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

#ifndef OCRS_LAB_IO_H_
#define OCRS_LAB_IO_H_

// JSON forms of the library types.
//
//   matroid:      {"family": "uniform", "n": 4, "rank": 2}
//                 {"family": "laminar", "n": 3, "sets": [[0, 1, 2]],
//                  "capacities": [2]}
//                 {"family": "graphic", "vertices": 3,
//                  "edges": [[0, 1], [1, 2], [0, 2]]}
//                 {"family": "transversal", "left": 2, "right": 1,
//                  "edges": [[0, 0], [1, 0]]}
//                 {"family": "explicit", "n": 3, "bases": [[0, 1], [1, 2]]}
//   distribution: {"kind": "uniform", "low": 0, "high": 1}
//                 {"kind": "exponential", "rate": 1}
//                 {"kind": "pareto", "alpha": 3, "scale": 1}
//                 {"kind": "discrete", "support": [0, 1], "masses": [0.5, 0.5],
//                  "jitter": true}
//   scheme:       {"kind": "greedy" | "accept_second" | "even_mixture" |
//                  "accept_nothing"}
//                 {"kind": "counting", "p": [0.5, 1]}
//                 {"kind": "b_greedy", "b": 0.13}
//   order:        {"kind": "identity" | "reverse" | "descending_x" | "random"}
//                 {"kind": "target_last", "target": 3}

#include <memory>
#include <string>
#include <vector>

#include "json.hpp"
#include "ocrs/distributions.h"
#include "ocrs/eval.h"
#include "ocrs/matroid.h"
#include "ocrs/schemes.h"

namespace ocrs::lab {

using nlohmann::json;

// Parsing throws std::invalid_argument with a message naming the field.
std::unique_ptr<Matroid> MatroidFromJson(const json& j);
json MatroidToJson(const Matroid& m);
std::vector<std::string> MatroidKinds();

ValueDistribution DistributionFromJson(const json& j);
json DistributionToJson(const ValueDistribution& d);
// A single object is replicated n times; an array must have length n.
std::vector<ValueDistribution> DistributionsFromJson(const json& j, int n);

std::unique_ptr<OnlineScheme> SchemeFromJson(const json& j);
std::vector<std::string> SchemeKinds();

OrderGenerator OrderFromJson(const json& j);

json IntervalToJson(const Interval& ci);
json TrialReportToJson(const TrialReport& r);
json RatioReportToJson(const RatioReport& r);

}  // namespace ocrs::lab

#endif  // OCRS_LAB_IO_H_
