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

#include "ocrs/instances.h"

#include <algorithm>
#include <numeric>

namespace ocrs {
namespace {

void Shuffle(std::vector<Element>& v, Rng& rng) {
  for (size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[rng.UniformInt(i)]);
  }
}

// Adds `elements` and a random refinement of it to `spec`; returns the
// capacity assigned to the new set.
int BuildLaminar(std::vector<Element> elements, int depth, LaminarSpec& spec,
                 Rng& rng) {
  const int size = static_cast<int>(elements.size());
  int max_child = 0;
  if (size >= 2 && depth < 3) {
    const int groups = 2 + static_cast<int>(rng.UniformInt(
                               std::min<std::uint64_t>(2, size - 1)));
    std::vector<int> cuts;
    for (int g = 1; g < groups; ++g) {
      cuts.push_back(1 + static_cast<int>(rng.UniformInt(size - 1)));
    }
    cuts.push_back(0);
    cuts.push_back(size);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    for (size_t c = 0; c + 1 < cuts.size(); ++c) {
      if (!rng.Bernoulli(0.75)) continue;
      std::vector<Element> part(elements.begin() + cuts[c],
                                elements.begin() + cuts[c + 1]);
      if (static_cast<int>(part.size()) == size) continue;
      max_child =
          std::max(max_child, BuildLaminar(std::move(part), depth + 1, spec,
                                           rng));
    }
  }
  const int low = max_child + 1;
  const int cap = low + static_cast<int>(rng.UniformInt(size - low + 1));
  std::sort(elements.begin(), elements.end());
  spec.sets.push_back(std::move(elements));
  spec.capacities.push_back(cap);
  return cap;
}

}  // namespace

std::unique_ptr<UniformMatroid> RandomUniform(int n, Rng& rng) {
  const int rank = static_cast<int>(rng.UniformInt(n + 1));
  return std::make_unique<UniformMatroid>(n, rank);
}

LaminarSpec RandomLaminarSpec(int n, Rng& rng) {
  LaminarSpec spec;
  spec.n = n;
  if (n == 0) return spec;
  std::vector<Element> all(n);
  std::iota(all.begin(), all.end(), 0);
  Shuffle(all, rng);
  BuildLaminar(all, 0, spec, rng);
  LaminarSpec normalized = NormalizeLaminar(spec);
  if (normalized.sets.empty()) {
    // Keep at least one real constraint.
    normalized.sets.push_back(spec.sets.back());
    normalized.capacities.push_back(std::max(1, n - 1));
    normalized = NormalizeLaminar(normalized);
  }
  return normalized;
}

GraphicSpec RandomGraphicSpec(int vertices, int edges, bool allow_loops,
                              Rng& rng) {
  GraphicSpec spec;
  spec.vertices = vertices;
  while (static_cast<int>(spec.edges.size()) < edges) {
    const int u = static_cast<int>(rng.UniformInt(vertices));
    const int v = static_cast<int>(rng.UniformInt(vertices));
    if (u == v && !allow_loops) continue;
    spec.edges.emplace_back(u, v);
  }
  return spec;
}

TransversalSpec RandomTransversalSpec(int left, int right, double density,
                                      Rng& rng) {
  TransversalSpec spec;
  spec.left = left;
  spec.right = right;
  for (int l = 0; l < left; ++l) {
    for (int r = 0; r < right; ++r) {
      if (rng.Bernoulli(density)) spec.edges.emplace_back(l, r);
    }
  }
  return spec;
}

std::vector<double> LaminarPointAtCapacity(const LaminarSpec& spec) {
  std::vector<double> x(spec.n, 1.0);
  std::vector<size_t> order(spec.sets.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return spec.sets[a].size() < spec.sets[b].size();
  });
  for (size_t k : order) {
    double total = 0;
    for (Element e : spec.sets[k]) total += x[e];
    if (total > spec.capacities[k]) {
      const double scale = spec.capacities[k] / total;
      for (Element e : spec.sets[k]) x[e] *= scale;
    }
  }
  return x;
}

}  // namespace ocrs
