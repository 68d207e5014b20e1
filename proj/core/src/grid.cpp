#include "sburgers/grid.hpp"

#include <cmath>

namespace sburgers {

TorusGrid::TorusGrid(int dim, int points_per_axis, double period)
    : dim_(dim), n_(points_per_axis), period_(period) {
  if (dim < 1 || dim > 3)
    throw DimensionError("grid dimension must be 1, 2 or 3, got " + std::to_string(dim));
  if (n_ < 4 || n_ % 2 != 0)
    throw ArgumentError("points per axis must be even and >= 4, got " + std::to_string(n_));
  if (!(period > 0.0)) throw ArgumentError("grid period must be positive");
  total_ = 1;
  for (int a = 0; a < dim_; ++a) total_ *= static_cast<std::size_t>(n_);
  cell_volume_ = std::pow(spacing(), dim_);
}

std::array<int, 3> TorusGrid::unflatten(std::size_t flat) const {
  std::array<int, 3> idx{0, 0, 0};
  for (int a = dim_ - 1; a >= 0; --a) {
    idx[a] = static_cast<int>(flat % n_);
    flat /= n_;
  }
  return idx;
}

}  // namespace sburgers
