#include "sburgers/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

namespace sburgers {
namespace {

constexpr std::complex<double> kI{0.0, 1.0};

// Derivative multiplier for one axis: i·k·(2π/period), with the Nyquist
// column zeroed so real fields stay real.
double derivative_factor(const TorusGrid& grid, int mode) {
  if (std::abs(mode) == grid.n() / 2) return 0.0;
  return mode * grid.wavenumber_scale();
}

bool keep_two_thirds(const TorusGrid& grid, const WaveIndex& w) {
  for (int a = 0; a < grid.dim(); ++a)
    if (3 * std::abs(w.k[a]) > grid.n()) return false;
  return true;
}

// Pointwise Euclidean magnitude squared across components.
double magnitude_sq(const Field& f, std::size_t i) {
  double m = 0.0;
  for (int c = 0; c < f.components(); ++c) {
    const double v = f.physical(c)[i];
    m += v * v;
  }
  return m;
}

}  // namespace

Field heat_semigroup_apply(const Field& field, double a) {
  if (!(a >= 0.0)) throw ArgumentError("heat semigroup time must be nonnegative");
  Field out = field;
  for (int c = 0; c < out.components(); ++c) {
    auto spec = out.spectral_mut(c);
    for_each_mode(out.grid(), [&](std::size_t flat, const WaveIndex& w) {
      spec[flat] *= std::exp(-a * w.k_squared);
    });
  }
  return out;
}

Field derivative(const Field& field, int axis) {
  if (axis < 0 || axis >= field.grid().dim())
    throw ArgumentError("derivative axis out of range");
  Field out = field;
  for (int c = 0; c < out.components(); ++c) {
    auto spec = out.spectral_mut(c);
    for_each_mode(out.grid(), [&](std::size_t flat, const WaveIndex& w) {
      spec[flat] *= kI * derivative_factor(out.grid(), w.k[axis]);
    });
  }
  return out;
}

Field gradient(const Field& scalar_field) {
  if (scalar_field.components() != 1)
    throw ArgumentError("gradient expects a scalar field");
  const TorusGrid& grid = scalar_field.grid();
  Field out = Field::vector(grid);
  auto src = scalar_field.spectral(0);
  for (int a = 0; a < grid.dim(); ++a) {
    auto dst = out.spectral_mut(a);
    for_each_mode(grid, [&](std::size_t flat, const WaveIndex& w) {
      dst[flat] = src[flat] * kI * derivative_factor(grid, w.k[a]);
    });
  }
  return out;
}

Field divergence(const Field& vector_field) {
  const TorusGrid& grid = vector_field.grid();
  if (vector_field.components() != grid.dim())
    throw ArgumentError("divergence expects a dim-component field");
  Field out = Field::scalar(grid);
  auto dst = out.spectral_mut(0);
  for (int a = 0; a < grid.dim(); ++a) {
    auto src = vector_field.spectral(a);
    for_each_mode(grid, [&](std::size_t flat, const WaveIndex& w) {
      dst[flat] += src[flat] * kI * derivative_factor(grid, w.k[a]);
    });
  }
  return out;
}

Field curl(const Field& vector_field) {
  const TorusGrid& grid = vector_field.grid();
  if (grid.dim() == 1)
    throw DimensionError("curl is not defined for d=1");
  if (vector_field.components() != grid.dim())
    throw ArgumentError("curl expects a dim-component field");

  if (grid.dim() == 2) {
    Field out = Field::scalar(grid);
    auto dst = out.spectral_mut(0);
    auto ux = vector_field.spectral(0);
    auto uy = vector_field.spectral(1);
    for_each_mode(grid, [&](std::size_t flat, const WaveIndex& w) {
      dst[flat] = kI * derivative_factor(grid, w.k[0]) * uy[flat] -
                  kI * derivative_factor(grid, w.k[1]) * ux[flat];
    });
    return out;
  }

  Field out = Field::vector(grid);
  for (int a = 0; a < 3; ++a) {
    const int b = (a + 1) % 3;
    const int c = (a + 2) % 3;
    auto dst = out.spectral_mut(a);
    auto ub = vector_field.spectral(b);
    auto uc = vector_field.spectral(c);
    for_each_mode(grid, [&](std::size_t flat, const WaveIndex& w) {
      dst[flat] = kI * derivative_factor(grid, w.k[b]) * uc[flat] -
                  kI * derivative_factor(grid, w.k[c]) * ub[flat];
    });
  }
  return out;
}

void dealias_two_thirds(Field& field) {
  for (int c = 0; c < field.components(); ++c) {
    auto spec = field.spectral_mut(c);
    for_each_mode(field.grid(), [&](std::size_t flat, const WaveIndex& w) {
      if (!keep_two_thirds(field.grid(), w)) spec[flat] = 0.0;
    });
  }
}

Field advect(const Field& a, const Field& b, bool dealias) {
  const TorusGrid& grid = a.grid();
  if (a.components() != grid.dim())
    throw ArgumentError("advect expects a dim-component advecting field");
  if (!(b.grid() == grid)) throw ArgumentError("advect fields live on different grids");
  const int d = grid.dim();

  Field ad = a;
  Field bd = b;
  if (dealias) {
    dealias_two_thirds(ad);
    dealias_two_thirds(bd);
  }

  // ∂_j b_i for all pairs, then the advective product in physical space.
  std::vector<Field> deriv;
  deriv.reserve(d);
  for (int j = 0; j < d; ++j) deriv.push_back(derivative(bd, j));

  Field out(grid, b.components());
  const std::size_t npts = grid.total_points();
  for (int i = 0; i < b.components(); ++i) {
    auto w = out.physical_mut(i);
    for (std::size_t x = 0; x < npts; ++x) {
      double acc = 0.0;
      for (int j = 0; j < d; ++j) acc += ad.physical(j)[x] * deriv[j].physical(i)[x];
      w[x] = acc;
    }
  }
  if (dealias) dealias_two_thirds(out);
  return out;
}

Field nonlinearity(const Field& v, double sign, bool dealias) {
  Field out = advect(v, v, dealias);
  if (sign != 1.0) out *= sign;
  return out;
}

double lp_norm(const Field& field, double p) {
  if (!(p >= 1.0)) throw ArgumentError("lp_norm requires p >= 1");
  const std::size_t npts = field.points();
  field.ensure_physical();
  double sum = 0.0;
  if (p == 2.0) {
    for (std::size_t i = 0; i < npts; ++i) sum += magnitude_sq(field, i);
  } else {
    for (std::size_t i = 0; i < npts; ++i)
      sum += std::pow(magnitude_sq(field, i), 0.5 * p);
  }
  return std::pow(sum * field.grid().cell_volume(), 1.0 / p);
}

double sobolev_norm(const Field& field, int order, double p) {
  if (order < 0) throw ArgumentError("sobolev_norm requires a nonnegative order");
  Field weighted = field;
  for (int c = 0; c < weighted.components(); ++c) {
    auto spec = weighted.spectral_mut(c);
    for_each_mode(weighted.grid(), [&](std::size_t flat, const WaveIndex& w) {
      spec[flat] *= std::pow(1.0 + w.k_squared, 0.5 * order);
    });
  }
  return lp_norm(weighted, p);
}

double linf_norm(const Field& field) {
  const std::size_t npts = field.points();
  field.ensure_physical();
  double m = 0.0;
  for (std::size_t i = 0; i < npts; ++i) m = std::max(m, magnitude_sq(field, i));
  return std::sqrt(m);
}

double jacobian_linf(const Field& field) {
  const TorusGrid& grid = field.grid();
  const std::size_t npts = grid.total_points();
  std::vector<double> acc(npts, 0.0);
  for (int a = 0; a < grid.dim(); ++a) {
    Field da = derivative(field, a);
    for (int c = 0; c < da.components(); ++c) {
      auto phys = da.physical(c);
      for (std::size_t i = 0; i < npts; ++i) acc[i] += phys[i] * phys[i];
    }
  }
  double m = 0.0;
  for (double v : acc) m = std::max(m, v);
  return std::sqrt(m);
}

double spectral_l2_norm(const Field& field) {
  double sum = 0.0;
  for (int c = 0; c < field.components(); ++c)
    for (const auto& v : field.spectral(c)) sum += std::norm(v);
  return std::sqrt(sum * std::pow(field.grid().period(), field.grid().dim()));
}

double conjugate_asymmetry(const Field& field) {
  const TorusGrid& grid = field.grid();
  const int n = grid.n();
  double worst = 0.0;
  for (int c = 0; c < field.components(); ++c) {
    auto spec = field.spectral(c);
    for_each_mode(grid, [&](std::size_t flat, const WaveIndex&) {
      std::array<int, 3> idx = grid.unflatten(flat);
      std::size_t mirror = 0;
      for (int a = 0; a < grid.dim(); ++a)
        mirror = mirror * n + static_cast<std::size_t>((n - idx[a]) % n);
      worst = std::max(worst, std::abs(spec[flat] - std::conj(spec[mirror])));
    });
  }
  return worst;
}

Field resample(const Field& field, int n_new) {
  const TorusGrid& src_grid = field.grid();
  TorusGrid dst_grid(src_grid.dim(), n_new, src_grid.period());
  Field out(dst_grid, field.components());
  const int kmax = std::min(src_grid.n(), n_new) / 2 - 1;
  for (int c = 0; c < field.components(); ++c) {
    auto src = field.spectral(c);
    auto dst = out.spectral_mut(c);
    for_each_mode(dst_grid, [&](std::size_t flat, const WaveIndex& w) {
      const std::array<int, 3> k = w.k;
      for (int a = 0; a < dst_grid.dim(); ++a)
        if (std::abs(k[a]) > kmax) return;
      std::size_t src_flat = 0;
      for (int a = 0; a < src_grid.dim(); ++a) {
        const int i = k[a] >= 0 ? k[a] : k[a] + src_grid.n();
        src_flat = src_flat * src_grid.n() + static_cast<std::size_t>(i);
      }
      dst[flat] = src[src_flat];
    });
  }
  return out;
}

Field antigradient(const Field& vector_field) {
  const TorusGrid& grid = vector_field.grid();
  if (vector_field.components() != grid.dim())
    throw ArgumentError("antigradient expects a dim-component field");
  Field psi = Field::scalar(grid);
  auto dst = psi.spectral_mut(0);
  for_each_mode(grid, [&](std::size_t flat, const WaveIndex& w) {
    double denom = 0.0;
    std::complex<double> acc = 0.0;
    for (int a = 0; a < grid.dim(); ++a) {
      const double f = derivative_factor(grid, w.k[a]);
      denom += f * f;
      acc += -kI * f * vector_field.spectral(a)[flat];
    }
    dst[flat] = denom > 0.0 ? acc / denom : 0.0;
  });
  return psi;
}

}  // namespace sburgers
