#include "spherebound/random.hpp"

namespace spherebound {
namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, ctr[0], hi0, lo0);
    mulhilo(kMul1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return ctr;
}

RandomStream::RandomStream(std::uint64_t seed, std::uint32_t stratum, std::uint64_t index)
    : seed_(seed),
      counter_{static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
               stratum, 0u} {}

void RandomStream::refill() {
  block_ = philox4x32(counter_, {static_cast<std::uint32_t>(seed_),
                                 static_cast<std::uint32_t>(seed_ >> 32)});
  ++counter_[3];
  used_ = 0;
}

double RandomStream::uniform() {
  if (used_ > 2) refill();
  const std::uint64_t bits =
      (static_cast<std::uint64_t>(block_[used_]) << 32) | block_[used_ + 1];
  used_ += 2;
  // 53 high bits, shifted by half an ulp so that 0 and 1 are never returned.
  const double u = (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
  return antithetic_ ? 1.0 - u : u;
}

}  // namespace spherebound
