#include "sburgers/noise.hpp"

#include <cmath>

namespace sburgers {
namespace {

// Canonical representative of a conjugate pair: first nonzero entry positive.
bool is_canonical(const std::array<int, 3>& k, int dim) {
  for (int a = 0; a < dim; ++a) {
    if (k[a] > 0) return true;
    if (k[a] < 0) return false;
  }
  return false;  // k = 0 handled separately
}

std::size_t flat_index(const TorusGrid& grid, const std::array<int, 3>& k) {
  std::size_t flat = 0;
  for (int a = 0; a < grid.dim(); ++a) {
    const int i = k[a] >= 0 ? k[a] : k[a] + grid.n();
    flat = flat * grid.n() + static_cast<std::size_t>(i);
  }
  return flat;
}

}  // namespace

NoiseOperator::NoiseOperator(const TorusGrid& grid, double amplitude, double decay,
                             int rank_cutoff, int target_order, double p,
                             NoiseOptions options)
    : grid_(grid),
      amplitude_(amplitude),
      decay_(decay),
      rank_cutoff_(rank_cutoff),
      target_order_(target_order),
      p_(p),
      options_(options) {
  if (!(amplitude >= 0.0)) throw ArgumentError("noise amplitude must be nonnegative");
  if (rank_cutoff < 0) throw ArgumentError("noise rank cutoff must be nonnegative");
  if (3 * rank_cutoff > grid.n())
    throw ArgumentError("noise rank cutoff K = " + std::to_string(rank_cutoff) +
                        " exceeds the dealiasing-safe range K <= n/3 for n = " +
                        std::to_string(grid.n()));
  if (target_order < 0) throw ArgumentError("noise target order must be nonnegative");

  const int d = grid.dim();
  const int K = rank_cutoff;
  const double ks2 = grid.wavenumber_scale() * grid.wavenumber_scale();

  std::array<int, 3> k{0, 0, 0};
  std::array<int, 3> lo{0, 0, 0}, hi{0, 0, 0};
  for (int a = 0; a < d; ++a) {
    lo[a] = -K;
    hi[a] = K;
  }

  admissibility_sum_ = 0.0;
  for (k[0] = lo[0]; k[0] <= hi[0]; ++k[0])
    for (k[1] = lo[1]; k[1] <= hi[1]; ++k[1])
      for (k[2] = lo[2]; k[2] <= hi[2]; ++k[2]) {
        const bool zero = (k[0] == 0 && k[1] == 0 && k[2] == 0);
        if (zero && !options_.include_mean) continue;
        double k_sq = 0.0;
        for (int a = 0; a < d; ++a) k_sq += static_cast<double>(k[a]) * k[a];
        k_sq *= ks2;
        const double sigma = amplitude * std::pow(1.0 + k_sq, -0.5 * decay);
        admissibility_sum_ +=
            sigma * sigma * std::pow(1.0 + k_sq, static_cast<double>(target_order));
        if (!zero && !is_canonical(k, d)) continue;
        NoiseMode m;
        m.k = k;
        m.k_squared = k_sq;
        m.sigma = sigma;
        m.flat = flat_index(grid, k);
        std::array<int, 3> neg{-k[0], -k[1], -k[2]};
        m.mirror = flat_index(grid, neg);
        m.self_conjugate = zero;
        modes_.push_back(m);
      }

  admissible_ = decay > target_order + 0.5 * d;
}

NoiseOperator build_noise(const TorusGrid& grid, double amplitude, double decay,
                          int rank_cutoff, int target_order, double p,
                          NoiseOptions options) {
  return NoiseOperator(grid, amplitude, decay, rank_cutoff, target_order, p, options);
}

}  // namespace sburgers
