#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace sburgers {

/// Mixes a 64-bit value (splitmix64 finalizer); used for seed derivation.
std::uint64_t mix64(std::uint64_t x);

/// Reproducible substream of a master seed, addressed by (sample index,
/// purpose tag). Distinct ids give statistically independent streams; the
/// same id gives a bit-identical sequence regardless of thread scheduling.
class RngStream {
public:
  RngStream(std::uint64_t master_seed, std::uint64_t sample_index,
            std::string_view purpose);

  double normal() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }
  std::uint64_t next_u64() { return engine_(); }

  std::uint64_t derived_seed() const { return derived_seed_; }

private:
  std::uint64_t derived_seed_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

}  // namespace sburgers
