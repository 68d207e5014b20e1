#include "step_factors.hpp"

#include <cmath>

namespace sburgers::detail {
namespace {

struct CacheSlot {
  int dim = 0;
  int n = 0;
  double period = 0.0;
  double nu = 0.0;
  double dt = 0.0;
  StepFactors factors;
};

thread_local CacheSlot g_slot;

}  // namespace

const StepFactors& step_factors(const TorusGrid& grid, double nu, double dt) {
  CacheSlot& slot = g_slot;
  if (slot.dim == grid.dim() && slot.n == grid.n() && slot.period == grid.period() &&
      slot.nu == nu && slot.dt == dt)
    return slot.factors;

  slot.dim = grid.dim();
  slot.n = grid.n();
  slot.period = grid.period();
  slot.nu = nu;
  slot.dt = dt;
  slot.factors.decay.assign(grid.total_points(), 0.0);
  slot.factors.phi.assign(grid.total_points(), 0.0);
  for_each_mode(grid, [&](std::size_t flat, const WaveIndex& w) {
    const double lambda = nu * w.k_squared;
    slot.factors.decay[flat] = std::exp(-lambda * dt);
    slot.factors.phi[flat] = lambda == 0.0 ? dt : -std::expm1(-lambda * dt) / lambda;
  });
  return slot.factors;
}

}  // namespace sburgers::detail
