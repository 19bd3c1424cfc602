#pragma once

#include <cmath>
#include <cstdint>

namespace qpass::qcore {

// Counter-based splittable RNG. Each (seed, stream) pair is an independent
// sequence; substream() derives child streams without touching the parent, so
// Monte Carlo trials can be assigned one stream each and produce identical
// results no matter how the trial loop is scheduled. Draw routines are
// hand-rolled on top of the raw 64-bit output because the standard library's
// distributions are implementation-defined and would break bit-for-bit
// reproducibility across toolchains.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream)
      : seed_(seed), stream_(stream), base_(mix(mix(seed) ^ mix(~stream))) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  RngStream substream(std::uint64_t child) const {
    return RngStream(seed_, mix(stream_ + 0x9e3779b97f4a7c15ull * (child + 1)));
  }

  std::uint64_t next_u64() {
    return mix(base_ + 0x9e3779b97f4a7c15ull * ++counter_);
  }

  // uniform in [0, 1), 53-bit resolution
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // uniform in [0, bound); rejection on a power-of-two mask keeps it unbiased
  std::uint64_t uniform_int(std::uint64_t bound) {
    if (bound < 2) return 0;
    std::uint64_t mask = ~0ull >> __builtin_clzll((bound - 1) | 1);
    std::uint64_t v;
    do {
      v = next_u64() & mask;
    } while (v >= bound);
    return v;
  }

  bool bernoulli(double p) { return uniform() < p; }

  // standard normal via Box-Muller; burns two uniforms per call
  double normal() {
    double u1 = uniform();
    double u2 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(6.283185307179586476925287 * u2);
  }

 private:
  // splitmix64 finalizer
  static constexpr std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t base_;
  std::uint64_t counter_ = 0;
};

}  // namespace qpass::qcore
