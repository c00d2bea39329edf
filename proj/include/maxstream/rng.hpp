#pragma once

#include <cstdint>

namespace maxstream {

/// Counter-based uniform generator: the k-th output is a fixed mixing function
/// of (key, k), so a stream is fully described by two integers and is
/// reproducible on every platform. The mixer is SplitMix64's finalizer.
class RandomStream {
 public:
  explicit constexpr RandomStream(std::uint64_t key) noexcept : key_(key) {}

  constexpr std::uint64_t next_u64() noexcept {
    ++counter_;
    return mix(key_ + counter_ * kGamma);
  }

  /// Uniform on the open interval (0, 1); never returns 0 or 1.
  constexpr double uniform() noexcept {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  constexpr std::uint64_t key() const noexcept { return key_; }
  constexpr std::uint64_t counter() const noexcept { return counter_; }

  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Key for the independent stream of item `index` under `base_seed`.
constexpr std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t index) noexcept {
  return RandomStream::mix(RandomStream::mix(base_seed ^ 0x6a09e667f3bcc909ULL) +
                           RandomStream::mix(index + 0x3c6ef372fe94f82bULL));
}

}  // namespace maxstream
