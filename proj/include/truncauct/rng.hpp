#ifndef TRUNCAUCT_RNG_HPP
#define TRUNCAUCT_RNG_HPP

#include <cstdint>

namespace truncauct {

// SplitMix64 with per-auction substreams. Each auction draws from its own
// stream keyed by (seed, stream_id), so results do not depend on the order
// in which auctions are generated.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  static SplitMix64 stream(std::uint64_t seed, std::uint64_t stream_id) {
    return SplitMix64(mix(mix(seed) ^ mix(stream_id * 0xd1342543de82ef95ULL + 1)));
  }

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform draw in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

}  // namespace truncauct

#endif  // TRUNCAUCT_RNG_HPP
