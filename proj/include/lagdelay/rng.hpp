// Seedable Gaussian generator with a counter-based per-trial seeding scheme.
// Sampling is deliberately self-contained (Box-Muller over a fully specified
// uniform step) so that streams are bit-reproducible across platforms.
#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace lagdelay {

// Finalizer from the splitmix64 generator; decorrelates consecutive seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  /// Uniform draw in [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Standard normal draw (Box-Muller, pair cached).
  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1], keeps log finite
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * M_PI * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

  double gaussian(double stddev) { return stddev * gaussian(); }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Seed for trial `index` of a campaign started at `base_seed`. Trials draw
/// from disjoint streams; the mapping is pure so trials can run in any order.
inline std::uint64_t trial_seed(std::uint64_t base_seed, long index) {
  return base_seed + static_cast<std::uint64_t>(index);
}

}  // namespace lagdelay
