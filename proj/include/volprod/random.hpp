#pragma once

// Seeded generator used by every sweep: std::mt19937_64, doubles built from
// the top 53 bits, and per-item seeds derived with splitmix64 so that item i
// of a sweep does not depend on how many draws earlier items consumed.

#include <cstdint>
#include <random>

namespace volprod {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seed of item `index` in a sweep with master seed `seed`.
constexpr std::uint64_t item_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed ^ (index * 0x9E3779B97F4A7C15ULL));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [lo, hi].
  int integer(int lo, int hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(engine_() % span);
  }
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace volprod
