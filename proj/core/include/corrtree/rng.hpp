#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace corrtree {

// All randomness flows through Rng. The uniform source is std::mt19937_64,
// whose output stream is fully specified by the standard, and normals come
// from an explicit Box-Muller transform. Identical seeds therefore give
// identical draw streams across runs; bit reproducibility across different
// libm implementations is not promised (sqrt/log/cos may differ in the last
// ulp), only distributional equality.
struct RngSpec {
  std::uint64_t seed = 0;
  static constexpr const char* algorithm = "mt19937_64+box-muller";
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Independent child seed for trial / cell indices.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed ^ splitmix64(index + 1));
}

class Rng {
 public:
  explicit Rng(RngSpec spec) : engine_(spec.seed) {}
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t bits() { return engine_(); }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(bits() >> 11) * 0x1.0p-53; }

  // Uniform in (0, 1]; never 0, so it is safe under log().
  double uniform_open() {
    return static_cast<double>((bits() >> 11) + 1) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) { return bits() % n; }

  // Standard normal; Box-Muller generates pairs, the second is cached.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double radius = std::sqrt(-2.0 * std::log(uniform_open()));
    const double angle = 2.0 * std::numbers::pi * uniform();
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

  // +1 or -1 with equal probability.
  double sign() { return (bits() & 1ull) ? 1.0 : -1.0; }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace corrtree
