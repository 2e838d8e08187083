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

#ifndef OCRS_PARALLEL_H_
#define OCRS_PARALLEL_H_

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ocrs {

inline constexpr std::int64_t kTrialChunk = 4096;

// Runs trial(t, acc) for t in [0, trials). Trials are grouped into fixed
// chunks of kTrialChunk consecutive indices; each chunk is accumulated in
// index order into its own copy of `zero`, and chunk results are merged in
// chunk order. The result therefore does not depend on `workers`.
// The first exception thrown by any trial is rethrown after all workers
// stop.
template <class Acc, class TrialFn, class MergeFn>
Acc ParallelTrials(std::int64_t trials, int workers, const Acc& zero,
                   TrialFn trial, MergeFn merge) {
  const std::int64_t chunks = (trials + kTrialChunk - 1) / kTrialChunk;
  std::vector<Acc> partial(static_cast<size_t>(chunks), zero);
  std::atomic<std::int64_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mu;

  auto work = [&] {
    for (;;) {
      const std::int64_t c = next.fetch_add(1);
      if (c >= chunks || failed.load()) return;
      try {
        const std::int64_t end = std::min(trials, (c + 1) * kTrialChunk);
        for (std::int64_t t = c * kTrialChunk; t < end; ++t) {
          trial(t, partial[c]);
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        failed = true;
        return;
      }
    }
  };

  const int n = static_cast<int>(
      std::clamp<std::int64_t>(workers, 1, std::max<std::int64_t>(chunks, 1)));
  if (n == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n);
    for (int w = 0; w < n; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);

  Acc total = zero;
  for (const auto& p : partial) merge(total, p);
  return total;
}

}  // namespace ocrs

#endif  // OCRS_PARALLEL_H_
