#pragma once

#include <cstdint>

namespace gks {

// splitmix64. Self-contained so seeded runs reproduce byte for byte on
// every platform, unlike the standard-library distributions.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform-enough value in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }

 private:
  std::uint64_t state_;
};

// Stream seed for substream `stream` of a master seed.
inline std::uint64_t substream_seed(std::uint64_t master, std::uint64_t stream) {
  SplitMix64 g(master ^ (0x632be59bd9b4e019ULL * (stream + 1)));
  g.next();
  return g.next();
}

}  // namespace gks
