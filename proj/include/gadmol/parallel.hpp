//
// Project gadmol - Copyright 2026 The gadmol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef GADMOL_PARALLEL_HPP_
#define GADMOL_PARALLEL_HPP_

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace gadmol {

// Calls fn(i) for i in [0, n) on up to `threads` workers with a static
// contiguous partition. fn must only write to slot-local state. If any call
// throws, the exception of the lowest failing worker is rethrown once all
// workers have joined.
template <class Fn>
void parallel_for(std::size_t n, int threads, Fn &&fn) {
  const std::size_t workers =
      std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, threads)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }

  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = n * w / workers;
    const std::size_t end = n * (w + 1) / workers;
    pool.emplace_back([&, w, begin, end] {
      for (std::size_t i = begin; i < end; ++i) {
        try {
          fn(i);
        } catch (...) {
          errors[w] = std::current_exception();
          return;
        }
      }
    });
  }
  for (std::thread &t : pool) t.join();
  for (std::size_t w = 0; w < workers; ++w)
    if (errors[w]) std::rethrow_exception(errors[w]);
}

}  // namespace gadmol

#endif  // GADMOL_PARALLEL_HPP_
