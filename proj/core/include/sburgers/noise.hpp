#pragma once

#include <vector>

#include "sburgers/field.hpp"

namespace sburgers {

/// One driven Fourier mode of the noise: the canonical representative of a
/// conjugate pair (or the self-conjugate mean mode) with its amplitude.
struct NoiseMode {
  std::array<int, 3> k{0, 0, 0};
  double k_squared = 0.0;     // scaled |k|²
  double sigma = 0.0;         // A (1+|k|²)^{-γ/2}
  std::size_t flat = 0;       // storage index of k
  std::size_t mirror = 0;     // storage index of -k
  bool self_conjugate = false;
};

struct NoiseOptions {
  bool gradient_form = false;  // drive a scalar potential; velocity is its gradient
  bool include_mean = true;    // drive the k=0 mode (Brownian spatial mean)
};

/// Finite-rank noise, diagonal in the Fourier basis, with power-law amplitude
/// decay. Immutable after construction.
class NoiseOperator {
public:
  NoiseOperator(const TorusGrid& grid, double amplitude, double decay, int rank_cutoff,
                int target_order, double p, NoiseOptions options = {});

  const TorusGrid& grid() const { return grid_; }
  double amplitude() const { return amplitude_; }
  double decay() const { return decay_; }
  int rank_cutoff() const { return rank_cutoff_; }
  int target_order() const { return target_order_; }
  double p() const { return p_; }
  bool gradient_form() const { return options_.gradient_form; }
  bool include_mean() const { return options_.include_mean; }

  /// Components of the driven state: 1 for a scalar potential, dim otherwise.
  int state_components() const { return options_.gradient_form ? 1 : grid_.dim(); }

  /// Canonical driven modes (one per conjugate pair), fixed order.
  const std::vector<NoiseMode>& modes() const { return modes_; }

  /// S(n) = Σ_k σ_k² (1+|k|²)^n over all retained modes (per component).
  double admissibility_sum() const { return admissibility_sum_; }
  /// γ > n + d/2, the condition under which S(n) stays bounded as K → ∞.
  bool admissible() const { return admissible_; }

private:
  TorusGrid grid_;
  double amplitude_;
  double decay_;
  int rank_cutoff_;
  int target_order_;
  double p_;
  NoiseOptions options_;
  std::vector<NoiseMode> modes_;
  double admissibility_sum_;
  bool admissible_;
};

/// Builds the operator with σ_{k} = A (1+|k|²)^{-γ/2} on modes |k|_∞ ≤ K.
/// Requires A ≥ 0 and K within the dealiasing-safe range (K ≤ n/3).
NoiseOperator build_noise(const TorusGrid& grid, double amplitude, double decay,
                          int rank_cutoff, int target_order, double p,
                          NoiseOptions options = {});

}  // namespace sburgers
