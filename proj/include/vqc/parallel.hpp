// Copyright 2026 The vqc Authors.
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

#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace vqc {

namespace detail {
inline thread_local bool in_worker = false;
}

// VQC_THREADS if set and positive, else hardware concurrency. Code already
// running on a parallel_for worker gets 1, so nested loops stay serial.
inline int thread_count() {
  if (detail::in_worker) return 1;
  if (const char* s = std::getenv("VQC_THREADS")) {
    int t = std::atoi(s);
    if (t > 0) return t;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// Runs body(i) for i in [0, count). Each index is independent, so callers
// that write to slot i and reduce afterwards get thread-count independent
// results. The first exception thrown by any worker is rethrown.
template <class Body>
void parallel_for(std::size_t count, Body&& body, int threads = thread_count()) {
  threads = int(std::min<std::size_t>(std::max(threads, 1), count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex mu;
  auto worker = [&] {
    detail::in_worker = true;
    for (std::size_t i; (i = next.fetch_add(1)) < count;) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lk(mu);
        if (!err) err = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

// Fixed chunking of [0, n) used by reductions: the chunk boundaries depend
// only on n, never on the thread count.
inline std::size_t reduction_chunks(std::size_t n) { return std::min<std::size_t>(n, 64); }
inline std::size_t chunk_begin(std::size_t c, std::size_t chunks, std::size_t n) { return c * n / chunks; }

}  // namespace vqc
