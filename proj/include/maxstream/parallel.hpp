#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <vector>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace maxstream {

/// Parallel-map capability handed to the Monte Carlo kernels. Work items are
/// indexed; callers write results into index-addressed slots and reduce them in
/// index order afterwards, so output never depends on the thread count.
class Executor {
 public:
  /// threads <= 0 selects every available core.
  explicit Executor(int threads = 0) noexcept : threads_(threads > 0 ? threads : hardware_threads()) {}

  /// Plain loop without OpenMP; the reference path the tests compare against.
  static Executor serial() noexcept {
    Executor e(1);
    e.serial_ = true;
    return e;
  }

  int threads() const noexcept { return threads_; }
  bool is_serial() const noexcept { return serial_; }

  template <class Fn>
  void for_each(std::size_t count, Fn&& fn) const {
    if (serial_ || threads_ == 1 || count < 2) {
      for (std::size_t i = 0; i < count; ++i) fn(i);
      return;
    }
    const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic, 16) num_threads(threads_)
    for (std::int64_t i = 0; i < n; ++i) fn(static_cast<std::size_t>(i));
  }

  template <class Result, class Fn>
  std::vector<Result> map(std::size_t count, Fn&& fn) const {
    std::vector<Result> out(count);
    for_each(count, [&](std::size_t i) { out[i] = fn(i); });
    return out;
  }

  static int hardware_threads() noexcept {
#if defined(_OPENMP)
    return omp_get_max_threads();
#else
    return 1;
#endif
  }

 private:
  int threads_;
  bool serial_ = false;
};

}  // namespace maxstream

namespace maxstream {

/// Splits [0, total) into fixed-size chunks (independent of the thread count)
/// and returns fn(begin, end) per chunk, in chunk order.
template <class Result, class Fn>
std::vector<Result> map_chunks(const Executor& ex, std::size_t total, std::size_t chunk_size, Fn&& fn) {
  const std::size_t chunks = chunk_size == 0 ? 0 : (total + chunk_size - 1) / chunk_size;
  return ex.map<Result>(chunks, [&](std::size_t c) {
    const std::size_t begin = c * chunk_size;
    return fn(begin, std::min(total, begin + chunk_size));
  });
}

}  // namespace maxstream
