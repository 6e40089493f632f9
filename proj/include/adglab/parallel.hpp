// Copyright 2026 The adglab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace adglab {

/// Worker count: ADGLAB_THREADS if set and positive, else hardware concurrency.
unsigned default_thread_count();

/// Runs body(worker, begin, end) over contiguous blocks of [0, n). Results are
/// independent of `threads` as long as the body derives randomness from the
/// item index only. The first exception thrown by any worker is rethrown.
template <typename Body>
void parallel_blocks(std::size_t n, unsigned threads, Body&& body) {
  if (threads == 0) {
    threads = default_thread_count();
  }
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(threads, n));
  if (workers == 1) {
    body(0u, std::size_t{0}, n);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = n * w / workers;
    const std::size_t end = n * (w + 1) / workers;
    pool.emplace_back([&, w, begin, end] {
      try {
        body(static_cast<unsigned>(w), begin, end);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) {
    t.join();
  }
  for (auto& e : errors) {
    if (e) {
      std::rethrow_exception(e);
    }
  }
}

}  // namespace adglab
