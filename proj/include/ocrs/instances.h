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

#ifndef OCRS_INSTANCES_H_
#define OCRS_INSTANCES_H_

#include <memory>
#include <vector>

#include "ocrs/matroid.h"
#include "ocrs/rng.h"

namespace ocrs {

// Random small instances for property tests and stress experiments.

std::unique_ptr<UniformMatroid> RandomUniform(int n, Rng& rng);

// Nested random partitions of a shuffled ground set, with capacities
// strictly increasing along chains and r_L < |L|.
LaminarSpec RandomLaminarSpec(int n, Rng& rng);

// Random multigraph on `vertices` vertices with `edges` edges. Self-loops
// appear only if `allow_loops`.
GraphicSpec RandomGraphicSpec(int vertices, int edges, bool allow_loops,
                              Rng& rng);

// Each (left, right) pair is an edge with probability `density`.
TransversalSpec RandomTransversalSpec(int left, int right, double density,
                                      Rng& rng);

// A point of the laminar polytope obtained by starting from the all-ones
// vector and scaling each set, innermost first, down to its capacity. Every
// set that had to be scaled ends up tight.
std::vector<double> LaminarPointAtCapacity(const LaminarSpec& spec);

}  // namespace ocrs

#endif  // OCRS_INSTANCES_H_
