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

#include <gsl/gsl_multimin.h>
#include <gsl/gsl_vector.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "ocrs/errors.h"
#include "ocrs/schemes.h"

namespace ocrs {
namespace {

constexpr int kGridSteps = 20;

// Euclidean projection onto {x >= 0, sum x <= 1}.
std::vector<double> ProjectToSimplex(std::vector<double> y) {
  for (auto& v : y) v = std::max(v, 0.0);
  double sum = 0;
  for (double v : y) sum += v;
  if (sum <= 1.0) return y;
  std::vector<double> s = y;
  std::sort(s.begin(), s.end(), std::greater<>());
  double acc = 0, theta = 0;
  for (size_t k = 0; k < s.size(); ++k) {
    acc += s[k];
    const double t = (acc - 1.0) / static_cast<double>(k + 1);
    if (s[k] - t > 0) theta = t;
  }
  for (auto& v : y) v = std::max(v - theta, 0.0);
  return y;
}

double Penalized(const std::vector<double>& y) {
  const auto p = ProjectToSimplex(y);
  double dist = 0;
  for (size_t k = 0; k < y.size(); ++k) dist += (y[k] - p[k]) * (y[k] - p[k]);
  return FN(p) + dist;
}

double GslObjective(const gsl_vector* v, void*) {
  std::vector<double> y(v->size);
  for (size_t k = 0; k < v->size; ++k) y[k] = gsl_vector_get(v, k);
  return Penalized(y);
}

std::vector<double> NelderMead(std::vector<double> start) {
  const size_t n = start.size();
  gsl_multimin_function fn{&GslObjective, n, nullptr};
  gsl_vector* x = gsl_vector_alloc(n);
  gsl_vector* step = gsl_vector_alloc(n);
  gsl_multimin_fminimizer* s =
      gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, n);
  // Restarting from the previous optimum shakes off simplex collapse.
  for (int restart = 0; restart < 3; ++restart) {
    for (size_t k = 0; k < n; ++k) gsl_vector_set(x, k, start[k]);
    gsl_vector_set_all(step, restart == 0 ? 0.02 : 0.002);
    gsl_multimin_fminimizer_set(s, &fn, x, step);
    for (int iter = 0; iter < 20000; ++iter) {
      if (gsl_multimin_fminimizer_iterate(s)) break;
      if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(s), 1e-11) ==
          GSL_SUCCESS) {
        break;
      }
    }
    for (size_t k = 0; k < n; ++k) start[k] = gsl_vector_get(s->x, k);
  }
  gsl_multimin_fminimizer_free(s);
  gsl_vector_free(step);
  gsl_vector_free(x);
  return ProjectToSimplex(start);
}

void GridSearch(int n, int pos, int left, std::vector<int>& cell,
                std::vector<std::pair<double, std::vector<double>>>& best) {
  if (pos == n) {
    std::vector<double> x(n);
    for (int k = 0; k < n; ++k) x[k] = cell[k] / double(kGridSteps);
    const double v = FN(x);
    best.emplace_back(v, std::move(x));
    std::push_heap(best.begin(), best.end());
    if (best.size() > 5) {
      std::pop_heap(best.begin(), best.end());
      best.pop_back();
    }
    return;
  }
  for (int c = 0; c <= left; ++c) {
    cell[pos] = c;
    GridSearch(n, pos + 1, left - c, cell, best);
  }
}

}  // namespace

double FN(std::span<const double> x) {
  double none = 1.0;
  for (double v : x) none *= 1.0 - v;
  double one = 0.0;
  for (size_t j = 0; j < x.size(); ++j) {
    double term = x[j];
    for (size_t k = 0; k < x.size(); ++k) {
      if (k != j) term *= 1.0 - x[k];
    }
    one += term;
  }
  return none + one;
}

FnMinimum MinimizeFN(int n) {
  if (n < 1 || n > 6) throw UnsupportedSize("minimize_fn supports 1 <= n <= 6");
  if (n == 1) return {{1.0}, 1.0};
  std::vector<std::pair<double, std::vector<double>>> best;
  std::vector<int> cell(n);
  GridSearch(n, 0, kGridSteps, cell, best);
  FnMinimum out{{}, 2.0};
  for (auto& [value, start] : best) {
    auto x = NelderMead(start);
    const double v = FN(x);
    if (v < out.value) out = {std::move(x), v};
  }
  return out;
}

double CountingSelectabilityUniform(std::span<const double> p, int n) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  for (double v : p) {
    if (!(v >= 0 && v <= 1)) {
      throw std::invalid_argument("counting probability outside [0,1]");
    }
  }
  // q_k = P(k of the other n-1 elements are active).
  double q = std::pow(1.0 - 1.0 / n, n - 1);
  double survive = 1.0;
  double total = 0.0;
  for (int k = 0; k < n && k < static_cast<int>(p.size()); ++k) {
    if (k > 0) {
      q *= static_cast<double>(n - k) / (static_cast<double>(k) * (n - 1));
      survive *= 1.0 - p[k - 1];
    }
    total += q * survive * p[k];
  }
  return total;
}

double BGreedyLowerBound(double b) {
  if (!(b >= 0 && b <= 1)) throw std::invalid_argument("b outside [0,1]");
  const double c = b * std::exp(1.0 - b);
  if (c >= 1.0) throw std::domain_error("b e^{1-b} >= 1");
  return b * (1.0 - c / (1.0 - c));
}

double UniformRankBound(double b, int r) {
  if (!(b >= 0 && b <= 1)) throw std::invalid_argument("b outside [0,1]");
  if (r < 0) throw std::invalid_argument("rank must be >= 0");
  if (r == 0) return 0.0;
  return b * (1.0 - std::pow(b * std::exp(1.0 - b), r));
}

}  // namespace ocrs
