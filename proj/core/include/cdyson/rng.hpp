#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace cdyson {

/// Deterministic random stream: mt19937_64 with an explicit Box-Muller
/// transform, so a fixed seed reproduces the same doubles on every run.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : gen_(seed) {}

  /// Uniform in [0, 1).
  double uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  /// Uniform in (0, 1].
  double uniform_open() { return 1.0 - uniform(); }

  /// Standard normal.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = uniform_open();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

 private:
  std::mt19937_64 gen_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace cdyson
