#pragma once

#include <cstdint>
#include <random>

namespace rcubic {

/// Seeded random stream. Each (seed, substream) pair yields an independent,
/// reproducible sequence; parallel work is split into fixed substreams so
/// results never depend on the number of workers.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed, std::uint64_t substream = 0);

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double normal() { return normal_(engine_); }

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
};

}  // namespace rcubic
