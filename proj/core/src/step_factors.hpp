#pragma once

#include <vector>

#include "sburgers/grid.hpp"

namespace sburgers::detail {

// Per-mode e^{-ν|k|²dt} and φ(ν|k|²,dt) = (1-e^{-ν|k|²dt})/(ν|k|²), memoized
// per thread: the stepping loops reuse one (grid, ν, dt) triple for thousands
// of steps and the exponentials dominate otherwise.
struct StepFactors {
  std::vector<double> decay;
  std::vector<double> phi;
};

const StepFactors& step_factors(const TorusGrid& grid, double nu, double dt);

}  // namespace sburgers::detail
