// Counter-based random streams. A stream is a pure function of
// (seed, stratum, index, draw); nothing is shared between streams, so the
// order in which workers consume them cannot change any result.
#pragma once

#include <array>
#include <cstdint>

namespace spherebound {

/// Philox4x32 with 10 rounds (Salmon et al., "Parallel random numbers: as
/// easy as 1, 2, 3").
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint32_t stratum, std::uint64_t index);

  /// Uniform double in the open interval (0, 1), 53 bits.
  double uniform();

  /// Stream for a different (stratum, index) under the same seed.
  [[nodiscard]] RandomStream split(std::uint32_t stratum, std::uint64_t index) const {
    return RandomStream(seed_, stratum, index);
  }

  /// Returns 1 - u for every subsequent draw.
  void set_antithetic(bool on) { antithetic_ = on; }

  [[nodiscard]] std::uint64_t seed() const { return seed_; }

 private:
  void refill();

  std::uint64_t seed_;
  std::array<std::uint32_t, 4> counter_;
  std::array<std::uint32_t, 4> block_{};
  int used_ = 4;  // 32-bit words consumed from block_
  bool antithetic_ = false;
};

}  // namespace spherebound
