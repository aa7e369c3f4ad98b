#pragma once

#include <cstdint>
#include <random>

namespace tvws::detail {

// std::mt19937_64 output is specified exactly by the standard, but the
// <random> distributions are not; these helpers keep synthetic fixtures
// identical across standard libraries.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [lo, hi].
  int integer(int lo, int hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(engine_() % span);
  }

private:
  std::mt19937_64 engine_;
};

} // namespace tvws::detail
