#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>

namespace cfscan {

// Philox 4x64 keyed counter-based generator, 10 rounds. Streams are cheap:
// every (seed, stream, domain) triple yields an independent sequence, so
// parallel consumers can draw without coordination and results do not depend
// on scheduling. Matches numpy's Philox bit-for-bit for stream = domain = 0.
class Philox {
public:
  explicit Philox(std::uint64_t seed, std::uint64_t stream = 0, std::uint64_t domain = 0)
      : key_{seed, 0}, ctr_{0, stream, domain, 0} {}

  std::uint64_t next_u64() {
    if (pos_ == 4) {
      buf_ = block(ctr_, key_);
      ++ctr_[0];  // 2^64 blocks per stream; never wraps in practice
      pos_ = 0;
    }
    return buf_[pos_++];
  }

  // Uniform on (0, 1]; never returns 0, so -log(u) is always finite.
  double uniform01() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  // Exponential holding time with the given rate; rate <= 0 means "never".
  double exponential(double rate) {
    if (rate <= 0.0) return std::numeric_limits<double>::infinity();
    return -std::log(uniform01()) / rate;
  }

  // Unbiased uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
    std::uint64_t x;
    do {
      x = next_u64();
    } while (x < threshold);
    return x % bound;
  }

private:
  using Block = std::array<std::uint64_t, 4>;

  static void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi, std::uint64_t& lo) {
    const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
    hi = static_cast<std::uint64_t>(p >> 64);
    lo = static_cast<std::uint64_t>(p);
  }

  static Block block(Block x, std::array<std::uint64_t, 2> key) {
    constexpr std::uint64_t kMul0 = 0xD2E7470EE14C6C93ULL;
    constexpr std::uint64_t kMul1 = 0xCA5A826395121157ULL;
    constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ULL;
    constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73BULL;
    for (int round = 0; round < 10; ++round) {
      if (round != 0) {
        key[0] += kWeyl0;
        key[1] += kWeyl1;
      }
      std::uint64_t hi0, lo0, hi1, lo1;
      mulhilo(kMul0, x[0], hi0, lo0);
      mulhilo(kMul1, x[2], hi1, lo1);
      x = {hi1 ^ x[1] ^ key[0], lo1, hi0 ^ x[3] ^ key[1], lo0};
    }
    return x;
  }

  std::array<std::uint64_t, 2> key_;
  Block ctr_;
  Block buf_{};
  int pos_ = 4;
};

// Stream domains keep draws for unrelated purposes out of each other's way.
enum class RngDomain : std::uint64_t {
  kSimulatePath = 1,
  kPermutation = 2,
  kGeneric = 3,
};

inline Philox make_rng(std::uint64_t seed, std::uint64_t stream, RngDomain domain) {
  return Philox(seed, stream, static_cast<std::uint64_t>(domain));
}

// splitmix64-style mixing for deriving independent child seeds.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace cfscan
