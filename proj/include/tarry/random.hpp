#pragma once

// Counter-based random numbers. Every draw is a pure function of
// (seed, stream, index), so sample i is the same no matter which worker
// produces it or in which order.

#include <cmath>
#include <cstdint>
#include <numbers>

namespace tarry {

constexpr std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class CounterRng {
 public:
  constexpr CounterRng(std::uint64_t seed, std::uint64_t stream)
      : key_(splitmix64(seed ^ splitmix64(stream + 0x632be59bd9b4e019ULL))) {}

  constexpr std::uint64_t bits(std::uint64_t index, std::uint64_t lane = 0) const {
    return splitmix64(key_ ^ splitmix64(index * 0x100000001b3ULL + lane));
  }

  /// Uniform in [0, 1).
  double uniform(std::uint64_t index, std::uint64_t lane = 0) const {
    return static_cast<double>(bits(index, lane) >> 11) * 0x1.0p-53;
  }

  /// Uniform in [lo, hi).
  double uniform(std::uint64_t index, std::uint64_t lane, double lo, double hi) const {
    return lo + (hi - lo) * uniform(index, lane);
  }

  /// Standard normal via Box-Muller on two lanes.
  double normal(std::uint64_t index, std::uint64_t lane) const {
    const double u1 = 1.0 - uniform(index, 2 * lane);
    const double u2 = uniform(index, 2 * lane + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::uint64_t key_;
};

}  // namespace tarry
