#pragma once

#include <cmath>
#include <cstdint>

// Deterministic random streams. The simulator promises bit-identical results
// for equal seeds, so we do not use std::*_distribution (implementation
// defined) and instead ship a fixed xoshiro256++ generator plus explicit
// draw routines. Every consumer derives its own stream from (seed, purpose)
// so adding or reordering one feature does not perturb the draws of another.

namespace chsim {

namespace stream {
// Purpose tags for derive_seed(). Values are arbitrary but frozen.
inline constexpr std::uint64_t kDeployPosition = 1;
inline constexpr std::uint64_t kDeployArrival = 2;
inline constexpr std::uint64_t kDeployForwarding = 3;
inline constexpr std::uint64_t kDeployQueue = 4;
inline constexpr std::uint64_t kEdgeNoise = 5;
inline constexpr std::uint64_t kSwarmInit = 6;
inline constexpr std::uint64_t kSwarmPartition = 7;
inline constexpr std::uint64_t kRoosterPick = 8;
inline constexpr std::uint64_t kRoosterNoise = 9;
inline constexpr std::uint64_t kHenPick = 10;
inline constexpr std::uint64_t kHenNoise = 11;
inline constexpr std::uint64_t kChickNoise = 12;
inline constexpr std::uint64_t kPsoInit = 13;
inline constexpr std::uint64_t kPsoVelocity = 14;
inline constexpr std::uint64_t kSelection = 15;
inline constexpr std::uint64_t kSleep = 16;
inline constexpr std::uint64_t kRandomSelect = 17;
inline constexpr std::uint64_t kSnapshotSelect = 18;
}  // namespace stream

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Stable mapping (base seed, purpose, index) -> independent stream seed.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t purpose,
                                 std::uint64_t index = 0) {
  std::uint64_t s = base;
  s ^= 0x9E3779B97F4A7C15ULL * (purpose + 1);
  std::uint64_t mixed = splitmix64(s);
  s ^= mixed + 0xD1B54A32D192ED03ULL * (index + 1);
  return splitmix64(s);
}

class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : state_) word = splitmix64(sm);
  }

  static RngStream derived(std::uint64_t base, std::uint64_t purpose,
                           std::uint64_t index = 0) {
    return RngStream(derive_seed(base, purpose, index));
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform double in [0, 1).
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Uniform integer in [0, n). n must be >= 1.
  std::uint64_t uniform_int(std::uint64_t n) {
    // Multiply-shift with rejection (Lemire); exact and deterministic.
    std::uint64_t x = next();
    __uint128_t m = static_cast<__uint128_t>(x) * n;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < n) {
      const std::uint64_t threshold = (0 - n) % n;
      while (lo < threshold) {
        x = next();
        m = static_cast<__uint128_t>(x) * n;
        lo = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  int uniform_index(int n) { return static_cast<int>(uniform_int(static_cast<std::uint64_t>(n))); }

  // Standard normal via Box-Muller (second value cached).
  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform01();  // (0, 1]
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t state_[4] = {};
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Order-free uniform in [0,1) keyed by a hash; used where a value must be a
// pure function of identity (e.g. per-edge noise stable across graph rebuilds).
inline double hashed_uniform01(std::uint64_t base, std::uint64_t purpose,
                               std::uint64_t key) {
  return static_cast<double>(derive_seed(base, purpose, key) >> 11) * 0x1.0p-53;
}

}  // namespace chsim
