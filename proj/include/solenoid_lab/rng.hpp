#pragma once

#include <cstdint>

namespace solenoid_lab {

inline constexpr std::uint64_t splitmix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-based stream: the n-th draw of stream `index` under `seed` is a
/// pure function of (seed, index, n). Work can therefore be split across
/// threads in any way without changing a single output bit.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t index) noexcept
      : key_(splitmix64(seed ^ splitmix64(index + 0x632be59bd9b4e019ULL))) {}

  std::uint64_t next_u64() noexcept { return splitmix64(key_ + 0x9e3779b97f4a7c15ULL * ++counter_); }

  /// Uniform in [0, 1) with 53 random bits.
  double next_unit() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace solenoid_lab
