#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <numbers>

#include "sburgers/errors.hpp"

namespace sburgers {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Uniform periodic grid on the d-torus, n points per axis, same period on
/// every axis. Linear storage is row-major with the last axis fastest.
class TorusGrid {
public:
  TorusGrid(int dim, int points_per_axis, double period = kTwoPi);

  int dim() const { return dim_; }
  int n() const { return n_; }
  double period() const { return period_; }

  std::size_t total_points() const { return total_; }
  double spacing() const { return period_ / n_; }
  double cell_volume() const { return cell_volume_; }

  /// 2π/period; integer modes scale by this to physical wavenumbers.
  double wavenumber_scale() const { return kTwoPi / period_; }

  /// Signed integer mode for storage index i on one axis: 0,1,..,n/2,-n/2+1,..,-1.
  int index_to_mode(int i) const { return i <= n_ / 2 ? i : i - n_; }

  /// Coordinate of grid point i on one axis.
  double coordinate(int i) const { return spacing() * i; }

  /// Decompose a flat index into per-axis indices (last axis fastest).
  std::array<int, 3> unflatten(std::size_t flat) const;

  bool operator==(const TorusGrid& other) const = default;

private:
  int dim_;
  int n_;
  double period_;
  std::size_t total_;
  double cell_volume_;
};

/// One retained Fourier mode: integer index vector and its scaled |k|².
struct WaveIndex {
  std::array<int, 3> k{0, 0, 0};  // entries beyond dim() are zero
  double k_squared = 0.0;         // sum of squares times (2π/period)²
};

/// Visits every retained mode exactly once, in storage order. The callback
/// receives the flat index and the WaveIndex.
template <typename F>
void for_each_mode(const TorusGrid& grid, F&& fn) {
  const double ks = grid.wavenumber_scale();
  const double ks2 = ks * ks;
  const std::size_t total = grid.total_points();
  for (std::size_t flat = 0; flat < total; ++flat) {
    const std::array<int, 3> idx = grid.unflatten(flat);
    std::array<int, 3> k{0, 0, 0};
    double sum = 0.0;
    for (int a = 0; a < grid.dim(); ++a) {
      k[a] = grid.index_to_mode(idx[a]);
      sum += static_cast<double>(k[a]) * k[a];
    }
    fn(flat, WaveIndex{k, sum * ks2});
  }
}

}  // namespace sburgers
