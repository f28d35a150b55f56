#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace cordic::detail {

inline constexpr std::uint64_t kTrialsPerBlock = 4096;

inline unsigned resolve_workers(unsigned workers) {
  if (workers != 0) return workers;
  return std::max(1u, std::thread::hardware_concurrency());
}

// Runs fn(block) for every block and returns the results in block order. If
// any block throws, the exception of the lowest-numbered failing block is
// rethrown once all blocks have run, so the error is independent of workers.
template <typename Partial, typename Fn>
std::vector<Partial> run_blocks(std::uint64_t blocks, unsigned workers, Fn fn) {
  std::vector<Partial> out(blocks);
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr error;
  std::uint64_t error_block = blocks;
  std::mutex error_mutex;

  auto work = [&] {
    for (;;) {
      const std::uint64_t b = next.fetch_add(1);
      if (b >= blocks) return;
      try {
        out[b] = fn(b);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (b < error_block) {
          error_block = b;
          error = std::current_exception();
        }
      }
    }
  };

  const unsigned n = static_cast<unsigned>(std::min<std::uint64_t>(resolve_workers(workers), blocks));
  if (n <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n);
    for (unsigned i = 0; i < n; ++i) pool.emplace_back(work);
  }
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace cordic::detail
