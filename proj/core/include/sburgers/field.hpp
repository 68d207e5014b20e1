#pragma once

#include <complex>
#include <span>
#include <vector>

#include "sburgers/grid.hpp"

namespace sburgers {

/// Scalar or vector function on a TorusGrid, kept in physical (real) and
/// spectral (complex, full-spectrum, amplitude-normalized) form. Either
/// representation may be stale; access syncs lazily. Storage is
/// component-major, row-major within a component, last axis fastest. The
/// spectral convention is f(x) = Σ_k c_k e^{i k·x}, so the forward transform
/// carries the 1/n^d factor.
///
/// Fields are value types: copy/move freely. A single Field is not safe for
/// concurrent first access (lazy sync mutates); distinct fields are.
class Field {
public:
  Field(const TorusGrid& grid, int components);

  static Field scalar(const TorusGrid& grid) { return Field(grid, 1); }
  static Field vector(const TorusGrid& grid) { return Field(grid, grid.dim()); }

  const TorusGrid& grid() const { return grid_; }
  int components() const { return components_; }
  std::size_t points() const { return grid_.total_points(); }

  std::span<const double> physical(int component = 0) const;
  std::span<const std::complex<double>> spectral(int component = 0) const;

  /// Mutable access; marks the other representation stale.
  std::span<double> physical_mut(int component = 0);
  std::span<std::complex<double>> spectral_mut(int component = 0);

  bool physical_current() const { return physical_ok_; }
  bool spectral_current() const { return spectral_ok_; }
  void ensure_physical() const;
  void ensure_spectral() const;

  /// Linear arithmetic in spectral space; grids and component counts must match.
  Field& operator+=(const Field& other);
  Field& operator-=(const Field& other);
  Field& operator*=(double scale);
  friend Field operator+(Field a, const Field& b) { return a += b; }
  friend Field operator-(Field a, const Field& b) { return a -= b; }
  friend Field operator*(Field a, double s) { return a *= s; }
  friend Field operator*(double s, Field a) { return a *= s; }

  /// True if every physical value is finite.
  bool finite() const;

private:
  void check_component(int component) const;
  void check_compatible(const Field& other) const;

  TorusGrid grid_;
  int components_;
  mutable std::vector<double> physical_;
  mutable std::vector<std::complex<double>> spectral_;
  mutable bool physical_ok_;
  mutable bool spectral_ok_;
};

}  // namespace sburgers
