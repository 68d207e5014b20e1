#include "sburgers/field.hpp"

#include <cmath>

#include "fft_internal.hpp"

namespace sburgers {
namespace {

thread_local std::vector<std::complex<double>> g_scratch;

std::complex<double>* scratch(std::size_t size) {
  if (g_scratch.size() < size) g_scratch.resize(size);
  return g_scratch.data();
}

}  // namespace

Field::Field(const TorusGrid& grid, int components)
    : grid_(grid), components_(components) {
  if (components != 1 && components != grid.dim())
    throw ArgumentError("field must have 1 or dim components, got " +
                        std::to_string(components));
  const std::size_t size = static_cast<std::size_t>(components) * grid.total_points();
  physical_.assign(size, 0.0);
  spectral_.assign(size, std::complex<double>(0.0, 0.0));
  physical_ok_ = spectral_ok_ = true;
}

void Field::check_component(int component) const {
  if (component < 0 || component >= components_)
    throw ArgumentError("component index " + std::to_string(component) +
                        " out of range for " + std::to_string(components_) +
                        "-component field");
}

void Field::check_compatible(const Field& other) const {
  if (!(grid_ == other.grid_) || components_ != other.components_)
    throw ArgumentError("field shape mismatch");
}

void Field::ensure_spectral() const {
  if (spectral_ok_) return;
  const std::size_t n = grid_.total_points();
  std::complex<double>* tmp = scratch(n);
  for (int c = 0; c < components_; ++c) {
    const double* src = physical_.data() + static_cast<std::size_t>(c) * n;
    for (std::size_t i = 0; i < n; ++i) tmp[i] = src[i];
    detail::fft_forward(grid_, tmp, spectral_.data() + static_cast<std::size_t>(c) * n);
  }
  spectral_ok_ = true;
}

void Field::ensure_physical() const {
  if (physical_ok_) return;
  const std::size_t n = grid_.total_points();
  std::complex<double>* tmp = scratch(n);
  for (int c = 0; c < components_; ++c) {
    detail::fft_backward(grid_, spectral_.data() + static_cast<std::size_t>(c) * n, tmp);
    double* dst = physical_.data() + static_cast<std::size_t>(c) * n;
    for (std::size_t i = 0; i < n; ++i) dst[i] = tmp[i].real();
  }
  physical_ok_ = true;
}

std::span<const double> Field::physical(int component) const {
  check_component(component);
  ensure_physical();
  return {physical_.data() + static_cast<std::size_t>(component) * points(), points()};
}

std::span<const std::complex<double>> Field::spectral(int component) const {
  check_component(component);
  ensure_spectral();
  return {spectral_.data() + static_cast<std::size_t>(component) * points(), points()};
}

std::span<double> Field::physical_mut(int component) {
  check_component(component);
  ensure_physical();
  spectral_ok_ = false;
  return {physical_.data() + static_cast<std::size_t>(component) * points(), points()};
}

std::span<std::complex<double>> Field::spectral_mut(int component) {
  check_component(component);
  ensure_spectral();
  physical_ok_ = false;
  return {spectral_.data() + static_cast<std::size_t>(component) * points(), points()};
}

Field& Field::operator+=(const Field& other) {
  check_compatible(other);
  ensure_spectral();
  other.ensure_spectral();
  physical_ok_ = false;
  for (std::size_t i = 0; i < spectral_.size(); ++i) spectral_[i] += other.spectral_[i];
  return *this;
}

Field& Field::operator-=(const Field& other) {
  check_compatible(other);
  ensure_spectral();
  other.ensure_spectral();
  physical_ok_ = false;
  for (std::size_t i = 0; i < spectral_.size(); ++i) spectral_[i] -= other.spectral_[i];
  return *this;
}

Field& Field::operator*=(double scale) {
  ensure_spectral();
  physical_ok_ = false;
  for (auto& v : spectral_) v *= scale;
  return *this;
}

bool Field::finite() const {
  ensure_physical();
  for (double v : physical_)
    if (!std::isfinite(v)) return false;
  return true;
}

}  // namespace sburgers
