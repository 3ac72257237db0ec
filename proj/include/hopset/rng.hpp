// Deterministic 64-bit PRNG used everywhere randomness is needed.
//
// std::mt19937 would do, but the distributions on top of it
// (uniform_int_distribution etc.) are implementation-defined, and we need
// byte-identical output across standard libraries.  SplitMix64 is tiny,
// passes BigCrush when used as a stream, and makes seeding sub-streams
// (per node, per phase) trivial.

#ifndef HOPSET_RNG_HPP_
#define HOPSET_RNG_HPP_

#include <cmath>
#include <cstdint>
#include <string_view>

namespace hopset {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1), 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [lo, hi], inclusive.  Rejection sampling keeps the
  // distribution exact regardless of the range size.
  std::uint64_t uniform_u64(std::uint64_t lo, std::uint64_t hi) {
    std::uint64_t range = hi - lo + 1;  // hi == UINT64_MAX && lo == 0 not used here
    if (range == 0) return next_u64();
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
    std::uint64_t x;
    do {
      x = next_u64();
    } while (x >= limit);
    return lo + x % range;
  }

  std::int64_t uniform_i64(std::int64_t lo, std::int64_t hi) {
    return static_cast<std::int64_t>(
        uniform_u64(0, static_cast<std::uint64_t>(hi - lo))) + lo;
  }

  bool chance(double p) { return next_double() < p; }

  // Exponential with the given rate; mean 1/rate.  next_double() < 1, so the
  // argument of log stays in (0, 1] and the result is finite and >= 0.
  double exponential(double rate) {
    return -std::log(1.0 - next_double()) / rate;
  }

  // Derive an independent sub-stream.  Mixing happens through SplitMix64's
  // own finalizer, so consecutive salts give unrelated streams.
  Rng split(std::uint64_t salt) const {
    Rng r(state_ ^ (0x9e3779b97f4a7c15ULL * (salt + 0x632be59bd9b4e019ULL)));
    r.next_u64();
    return r;
  }

 private:
  std::uint64_t state_;
};

// FNV-1a, used to fold phase labels into RNG seeds.
inline std::uint64_t hash_label(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace hopset

#endif  // HOPSET_RNG_HPP_
