#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sburgers/estimates.hpp"
#include "sburgers/field.hpp"
#include "sburgers/noise.hpp"
#include "sburgers/ou.hpp"
#include "sburgers/rng.hpp"

namespace sburgers {

enum class Scheme { etd1, picard };

enum class RunStatus { completed, blow_up, picard_failure };

std::string to_string(RunStatus status);

struct SolverConfig {
  double nu = 0.1;
  double p = 2.0;                  // Lebesgue exponent; must exceed the dimension
  double dt = 1e-3;
  double T = 1.0;
  Scheme scheme = Scheme::etd1;
  double picard_tol = 1e-10;
  int picard_max_iters = 50;
  double blow_up_threshold = 0.0;  // 0 → 10⁶(1+|u0|_p); +inf → never triggers
  double sign = 1.0;               // coefficient of (u·∇)u; −1 is classical Burgers
  bool dealias = true;
  double picard_window = 0.0;      // 0 → heuristic min(100 dt, 0.1/(1+|u|_p²))

  void validate(int dim) const;
};

/// Stops integration once |u(t)|_p exceeds the threshold; the last valid time
/// is an empirical lower bound for the maximal existence time.
struct BlowUpGuard {
  double threshold;
  bool triggered(double u_lp) const;
  static double resolve_threshold(const SolverConfig& cfg, const Field& u0);
};

struct Trajectory {
  SolverConfig cfg;
  std::vector<double> times;           // every step time, starting at 0
  std::vector<int> picard_iterations;  // per step; 0 for the ETD scheme
  EstimateReport report;               // per-step monitor series
  std::vector<OUPath::Record> z_records;  // running z norms, aligned with times

  std::vector<double> snapshot_times;  // subset of times
  std::vector<Field> v_snapshots;
  std::vector<Field> z_snapshots;

  RunStatus status = RunStatus::completed;
  double status_time = 0.0;
  std::string status_detail;

  Field u_snapshot(std::size_t i) const { return v_snapshots.at(i) + z_snapshots.at(i); }
  const Field& v_final() const { return v_snapshots.back(); }
  Field u_final() const { return u_snapshot(v_snapshots.size() - 1); }
};

/// One exponential-Euler step of the mild equation with frozen integrand:
/// per mode, v' = e^{-ν|k|²dt} v + φ(ν|k|²,dt)·[sign·F(v+z)]_k.
/// Throws OverflowError (tagged with t) if the result is not finite.
Field etd1_step(const Field& v, const Field& z, const SolverConfig& cfg, double t = 0.0);

struct PicardResult {
  std::vector<Field> v_nodes;  // v at the window nodes, v_nodes[0] = v0
  int iterations = 0;
  bool converged = false;
  double last_correction = 0.0;  // sup-in-window L^p distance of the last sweep
};

/// Picard iteration for the mild solution on one window. z_nodes carries z at
/// the window nodes spaced cfg.dt (window length = (z_nodes.size()-1)·dt).
/// The σ-integral uses the trapezoid rule with the semigroup applied
/// spectrally. Not converging within cfg.picard_max_iters leaves
/// converged = false (the window exceeded the local existence scale).
PicardResult picard_window(const Field& v0, std::span<const Field> z_nodes,
                           const SolverConfig& cfg);

struct SolveOptions {
  int snapshot_every = 1;  // store (v,z) every M steps; 0 = first and last only
  DiagnosticsOptions diagnostics{};
};

/// Integrates u = v + z over [0, T]: samples the stochastic convolution z
/// step by step, advances v with the configured scheme, records the monitor
/// series, and stops early with a blow_up or picard_failure status.
/// Failures are statuses, never silent.
Trajectory solve(const Field& u0, const std::optional<Field>& forcing,
                 const NoiseOperator& noise, const SolverConfig& cfg, RngStream rng,
                 const SolveOptions& options = {});

}  // namespace sburgers
