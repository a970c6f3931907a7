#pragma once

#include <cstdint>
#include <limits>

namespace erasure_chi {

/// Counter-based random stream. The output is a pure function of
/// (key, counter), so a stream copied by value replays identically, and
/// `split(i)` derives statistically independent child streams without any
/// shared state. Satisfies UniformRandomBitGenerator.
class RngStream {
 public:
  using result_type = std::uint64_t;

  explicit RngStream(std::uint64_t seed) noexcept : key_(mix(seed ^ 0x6a09e667f3bcc908ULL)) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept { return mix(key_ ^ mix(counter_++ + 0x9e3779b97f4a7c15ULL)); }

  /// Independent child stream number `index`; does not advance this stream.
  RngStream split(std::uint64_t index) const noexcept {
    RngStream child(0);
    child.key_ = mix(key_ + 0xbf58476d1ce4e5b9ULL * (index + 1));
    return child;
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  std::uint64_t key() const noexcept { return key_; }
  std::uint64_t counter() const noexcept { return counter_; }

 private:
  // SplitMix64 finaliser.
  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace erasure_chi
