#pragma once

// A minimal fork-join helper. Work items are claimed from a shared counter,
// so callers must aggregate results in a way that does not depend on which
// worker ran which item.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace honda {

  //! Environment variable overriding the default worker count.
  inline constexpr char const* workers_env_var = "HONDA_WORKERS";

  inline std::size_t default_workers() {
    if (char const* s = std::getenv(workers_env_var)) {
      try {
        long v = std::stol(s);
        if (v >= 1) {
          return static_cast<std::size_t>(v);
        }
      } catch (...) {
      }
    }
    return std::max<std::size_t>(1, std::thread::hardware_concurrency());
  }

  //! Calls body(i) for every i in [0, count), on up to `workers` threads.
  //! The first exception thrown by any body is rethrown on the caller.
  template <typename Body>
  void parallel_for(std::size_t count, std::size_t workers, Body&& body) {
    workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(count, 1));
    if (workers == 1) {
      for (std::size_t i = 0; i < count; ++i) {
        body(i);
      }
      return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr       error;
    std::mutex               error_mtx;
    auto                     run = [&] {
      for (std::size_t i; (i = next.fetch_add(1)) < count;) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mtx);
          if (!error) {
            error = std::current_exception();
          }
          next.store(count);
        }
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (std::size_t w = 1; w < workers; ++w) {
      pool.emplace_back(run);
    }
    run();
    for (auto& t : pool) {
      t.join();
    }
    if (error) {
      std::rethrow_exception(error);
    }
  }

  //! Splits [0, count) into contiguous blocks of at most `block` items and
  //! calls body(begin, end) for each block, in parallel.
  template <typename Body>
  void parallel_blocks(std::size_t count,
                       std::size_t block,
                       std::size_t workers,
                       Body&&      body) {
    std::size_t const nblocks = (count + block - 1) / block;
    parallel_for(nblocks, workers, [&](std::size_t b) {
      body(b * block, std::min(count, (b + 1) * block));
    });
  }

}  // namespace honda
