#pragma once

// Self-contained pseudo-random generator and variate transforms.
//
// The engine is xoshiro256++ seeded through splitmix64. All simulation code
// takes an explicit Rng handle; independent streams are derived from a single
// 64-bit master seed with Rng::stream(seed, stream_id), so multi-chain and
// multi-seed runs are reproducible regardless of scheduling.

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace mgg {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t z = seed;
    for (auto& word : state_) word = splitmix64(z);
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 0x9E3779B97F4A7C15ULL;
  }

  // Derives a stream deterministically from (seed, stream_id). Distinct ids
  // give statistically independent streams.
  static Rng stream(std::uint64_t seed, std::uint64_t stream_id) {
    std::uint64_t z = seed;
    std::uint64_t a = splitmix64(z);
    z ^= (stream_id + 0xD1B54A32D192ED03ULL) * 0x9E3779B97F4A7C15ULL;
    std::uint64_t b = splitmix64(z);
    return Rng(a ^ (b + 0x2545F4914F6CDD1DULL));
  }

  std::uint64_t next_u64() {
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

  // Uniform on [0,1), 53-bit resolution.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform on (0,1), safe to pass to log().
  double uniform_pos() { return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

  // Unbiased integer in [0, n).
  std::uint64_t uniform_below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("Rng::uniform_below: n must be positive");
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= threshold) return r % n;
    }
  }

  double exponential() { return -std::log(uniform_pos()); }

  // Standard normal, Marsaglia polar method with one cached deviate.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    have_spare_ = true;
    return u * f;
  }

  // Gamma(shape, rate) by Marsaglia-Tsang squeeze; shapes below one go
  // through the boost transform G(a) = G(a+1) * U^{1/a}.
  double gamma(double shape, double rate) {
    if (!(shape > 0.0) || !(rate > 0.0))
      throw std::domain_error("Rng::gamma: shape and rate must be positive");
    double boost = 1.0;
    if (shape < 1.0) {
      // log-domain so that tiny shapes underflow gracefully instead of to NaN
      boost = std::exp(std::log(uniform_pos()) / shape);
      shape += 1.0;
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x, v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform_pos();
      const double x2 = x * x;
      if (u < 1.0 - 0.0331 * x2 * x2) return boost * d * v / rate;
      if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return boost * d * v / rate;
    }
  }

 private:
  static std::uint64_t splitmix64(std::uint64_t& z) {
    z += 0x9E3779B97F4A7C15ULL;
    std::uint64_t r = z;
    r = (r ^ (r >> 30)) * 0xBF58476D1CE4E5B9ULL;
    r = (r ^ (r >> 27)) * 0x94D049BB133111EBULL;
    return r ^ (r >> 31);
  }
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  std::array<std::uint64_t, 4> state_{};
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace mgg
