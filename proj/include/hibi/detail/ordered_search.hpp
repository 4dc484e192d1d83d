#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace hibi::detail {

/// Least index in [0, count) for which `fails(index)` holds, evaluating up
/// to `jobs` indices concurrently. Indices are handed out in increasing
/// order and nothing above the best failure so far is started, so the
/// answer does not depend on scheduling. `fails(index, worker)` receives
/// the worker slot in [0, jobs) so callers can keep per-worker state; it
/// must be safe to call from several threads when jobs > 1.
template <class Pred>
std::optional<std::uint64_t> least_failure(std::uint64_t count, int jobs, Pred&& fails) {
  if (jobs <= 1 || count <= 1) {
    for (std::uint64_t i = 0; i < count; ++i) {
      if (fails(i, 0)) return i;
    }
    return std::nullopt;
  }
  std::atomic<std::uint64_t> next{0};
  std::atomic<std::uint64_t> best{count};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&](int slot) {
    try {
      for (;;) {
        const std::uint64_t i = next.fetch_add(1);
        if (i >= count || i >= best.load()) return;
        if (fails(i, slot)) {
          std::uint64_t cur = best.load();
          while (i < cur && !best.compare_exchange_weak(cur, i)) {
          }
        }
      }
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
      best.store(0);
    }
  };
  std::vector<std::thread> pool;
  const auto n = static_cast<std::uint64_t>(jobs);
  for (std::uint64_t t = 0; t < std::min(n, count); ++t) pool.emplace_back(worker, static_cast<int>(t));
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
  const std::uint64_t b = best.load();
  if (b < count) return b;
  return std::nullopt;
}

/// base^exp, or nullopt when it does not fit in 63 bits.
inline std::optional<std::uint64_t> checked_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t out = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (base != 0 && out > (std::uint64_t{1} << 62) / base) return std::nullopt;
    out *= base;
  }
  return out;
}

}  // namespace hibi::detail
