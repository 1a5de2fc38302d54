#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace fsl::rng {

// splitmix64, used to expand a user seed into xoshiro state and to derive
// independent per-task seeds (seed streams are stable across platforms and
// thread counts, unlike std::normal_distribution's unspecified algorithm).
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t s = base ^ (0x9e3779b97f4a7c15ULL * (index + 1));
  std::uint64_t a = splitmix64(s);
  return a ^ splitmix64(s);
}

// xoshiro256++ (Blackman/Vigna), fixed algorithm so identical seeds give
// identical draws everywhere.
class Xoshiro256pp {
 public:
  explicit Xoshiro256pp(std::uint64_t seed = 0) {
    std::uint64_t sm = seed;
    for (auto& word : state_) word = splitmix64(sm);
  }

  std::uint64_t next() {
    auto rotl = [](std::uint64_t v, int k) {
      return (v << k) | (v >> (64 - k));
    };
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

  // uniform in (0, 1]
  double uniform() {
    return ((next() >> 11) + 1) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_[4];
};

// Standard normal via Box-Muller on the xoshiro stream; one cached mate.
class GaussianSampler {
 public:
  explicit GaussianSampler(std::uint64_t seed) : rng_(seed) {}

  double next() {
    if (have_cache_) {
      have_cache_ = false;
      return cache_;
    }
    const double u1 = rng_.uniform();
    const double u2 = rng_.uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    cache_ = r * std::sin(phi);
    have_cache_ = true;
    return r * std::cos(phi);
  }

 private:
  Xoshiro256pp rng_;
  double cache_ = 0.0;
  bool have_cache_ = false;
};

}  // namespace fsl::rng
