#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string_view>

namespace gepc {

/// Seeded random source owned by whoever draws from it.
///
/// Only the engine comes from <random>; the distributions are implemented here
/// so draws are identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Standard normal (Marsaglia polar method).
  double normal();

  double normal(double mean, double sd) { return mean + sd * normal(); }

  /// Gamma(shape, 1) via Marsaglia & Tsang; shape > 0.
  double gamma(double shape);

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

/// Stable 64-bit seed for a named sub-task of a seeded run.
std::uint64_t derive_seed(std::uint64_t master, std::string_view key);

}  // namespace gepc
