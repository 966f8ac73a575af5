// Deterministic named random streams for the simulator.
//
// Every consumer (one per agent, one for cost shocks, one for uncontrolled
// load) owns its own stream, keyed by (seed, stream id). Draw sequences are
// reproducible bit-for-bit across runs and thread schedules because the
// generator and the distribution transforms are implemented here instead of
// relying on implementation-defined <random> distributions.
#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string_view>

namespace scpa {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

} // namespace detail

// xoshiro256** with splitmix64 state expansion.
class RngStream {
 public:
  RngStream() : RngStream(0, "default") {}

  RngStream(std::uint64_t seed, std::string_view stream_id) {
    std::uint64_t mix = seed ^ detail::fnv1a64(stream_id);
    for (auto& word : state_) word = detail::splitmix64(mix);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform in [0, 1) with full 53-bit mantissa.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + uniform01() * (hi - lo); }

  // Inclusive integer range; spans here are tiny (window shifts, portfolio
  // picks) so modulo bias is immaterial.
  int uniform_int(int lo, int hi) {
    return lo + static_cast<int>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  // Box-Muller, two uniforms per normal draw (no cached spare, so the draw
  // index bookkeeping stays trivial).
  double normal(double mean, double sd) {
    double u1 = uniform01();
    double u2 = uniform01();
    if (u1 < 1e-300) u1 = 1e-300;
    const double r = std::sqrt(-2.0 * std::log(u1));
    return mean + sd * r * std::cos(2.0 * std::numbers::pi * u2);
  }

  double lognormal(double log_mean, double log_sd) {
    return std::exp(normal(log_mean, log_sd));
  }

  bool bernoulli(double p) { return uniform01() < p; }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t state_[4];
};

} // namespace scpa
