#include "sburgers/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "sburgers/spectral.hpp"

namespace sburgers {
namespace {

// Largest value of c·ψ0; subtracted before exponentiating so exp stays in
// (0, 1] (ψ is defined up to an additive constant).
double potential_shift(const Field& psi0, double c) {
  double m = -std::numeric_limits<double>::infinity();
  for (double v : psi0.physical(0)) m = std::max(m, c * v);
  return m;
}

Field hopf_cole_weight(const Field& psi0, double nu, double c, double shift) {
  Field w = Field::scalar(psi0.grid());
  auto dst = w.physical_mut(0);
  auto src = psi0.physical(0);
  for (std::size_t i = 0; i < dst.size(); ++i)
    dst[i] = std::exp((c * src[i] - shift) / nu);
  return w;
}

Field log_transform(const Field& w, double nu, double c, double shift) {
  double wmin = std::numeric_limits<double>::infinity();
  for (double v : w.physical(0)) wmin = std::min(wmin, v);
  if (!(wmin > 0.0))
    throw OracleError(
        "hopf-cole weight became nonpositive (min " + std::to_string(wmin) +
        "); the run is under-resolved for this viscosity");
  Field psi = Field::scalar(w.grid());
  auto dst = psi.physical_mut(0);
  auto src = w.physical(0);
  for (std::size_t i = 0; i < dst.size(); ++i)
    dst[i] = (nu * std::log(src[i]) + shift) / c;
  return psi;
}

int auto_steps(double t) {
  return std::max(1, static_cast<int>(std::llround(t / 1e-3)));
}

}  // namespace

PotentialState hopf_cole_solve(const Field& psi0, double nu,
                               const std::optional<Field>& potential, double t,
                               double c, int steps) {
  if (psi0.components() != 1) throw ArgumentError("hopf-cole expects a scalar potential");
  if (!(nu > 0.0)) throw ArgumentError("hopf-cole requires nu > 0");
  if (c == 0.0) throw ArgumentError("hopf-cole requires a nonzero hamilton-jacobi factor");
  if (!(t >= 0.0)) throw ArgumentError("hopf-cole requires t >= 0");
  if (potential && potential->components() != 1)
    throw ArgumentError("hopf-cole forcing must be a scalar potential");

  const double shift = potential_shift(psi0, c);
  Field w = hopf_cole_weight(psi0, nu, c, shift);

  if (!potential) {
    w = heat_semigroup_apply(w, nu * t);
  } else if (t > 0.0) {
    const int n_steps = steps > 0 ? steps : auto_steps(t);
    const double h = t / n_steps;
    // exp((c U / ν) h/2) multiplier for the Strang half-steps.
    std::vector<double> half(w.points());
    auto upot = potential->physical(0);
    for (std::size_t i = 0; i < half.size(); ++i)
      half[i] = std::exp(0.5 * h * c * upot[i] / nu);
    for (int s = 0; s < n_steps; ++s) {
      {
        auto wp = w.physical_mut(0);
        for (std::size_t i = 0; i < wp.size(); ++i) wp[i] *= half[i];
      }
      w = heat_semigroup_apply(w, nu * h);
      {
        auto wp = w.physical_mut(0);
        for (std::size_t i = 0; i < wp.size(); ++i) wp[i] *= half[i];
      }
    }
  }

  PotentialState out{log_transform(w, nu, c, shift), Field::vector(psi0.grid()), nu, c};
  out.u = gradient(out.psi);
  return out;
}

Field hopf_lax_solve(const Field& psi0, double t, double c) {
  if (psi0.components() != 1) throw ArgumentError("hopf-lax expects a scalar potential");
  if (!(t > 0.0)) throw ArgumentError("hopf-lax requires t > 0");
  if (c == 0.0) throw ArgumentError("hopf-lax requires a nonzero hamilton-jacobi factor");

  const TorusGrid& grid = psi0.grid();
  const int n = grid.n();
  const int d = grid.dim();
  const double spacing = grid.spacing();
  const double period = grid.period();

  // Per-axis squared periodic distance, indexed by |i - j| mod n.
  std::vector<double> dist2(n);
  for (int off = 0; off < n; ++off) {
    const double raw = off * spacing;
    const double dd = std::min(raw, period - raw);
    dist2[off] = dd * dd;
  }

  const double denom = 4.0 * std::abs(c) * t;
  const bool maximize = c > 0.0;
  auto src = psi0.physical(0);
  Field out = Field::scalar(grid);
  auto dst = out.physical_mut(0);

  if (d == 1) {
    for (int x = 0; x < n; ++x) {
      double best = maximize ? -std::numeric_limits<double>::infinity()
                             : std::numeric_limits<double>::infinity();
      for (int y = 0; y < n; ++y) {
        const double q = dist2[std::abs(x - y)] / denom;
        const double cand = maximize ? src[y] - q : src[y] + q;
        best = maximize ? std::max(best, cand) : std::min(best, cand);
      }
      dst[x] = best;
    }
    return out;
  }

  // Generic d: exhaustive scan with per-axis offsets.
  const std::size_t total = grid.total_points();
  for (std::size_t xf = 0; xf < total; ++xf) {
    const std::array<int, 3> xi = grid.unflatten(xf);
    double best = maximize ? -std::numeric_limits<double>::infinity()
                           : std::numeric_limits<double>::infinity();
    for (std::size_t yf = 0; yf < total; ++yf) {
      const std::array<int, 3> yi = grid.unflatten(yf);
      double d2 = 0.0;
      for (int a = 0; a < d; ++a) d2 += dist2[std::abs(xi[a] - yi[a])];
      const double q = d2 / denom;
      const double cand = maximize ? src[yf] - q : src[yf] + q;
      best = maximize ? std::max(best, cand) : std::min(best, cand);
    }
    dst[xf] = best;
  }
  return out;
}

namespace {

struct DeterministicRun {
  Field psi_final;
  double sup_h1p;
};

// March the Hopf–Cole weight on the solver's dt grid (exact per step) so the
// running H^{1,p} sup of ψ^ν can be recorded.
DeterministicRun hopf_cole_march(const Field& psi0, double nu,
                                 const std::optional<Field>& potential,
                                 const SolverConfig& cfg, double c) {
  const auto steps = static_cast<std::size_t>(std::llround(cfg.T / cfg.dt));
  const double h = cfg.T / static_cast<double>(steps);
  const double shift = potential_shift(psi0, c);
  Field w = hopf_cole_weight(psi0, nu, c, shift);

  std::vector<double> half;
  if (potential) {
    half.resize(w.points());
    auto upot = potential->physical(0);
    for (std::size_t i = 0; i < half.size(); ++i)
      half[i] = std::exp(0.5 * h * c * upot[i] / nu);
  }

  double sup = sobolev_norm(psi0, 1, cfg.p);
  Field psi = psi0;
  for (std::size_t s = 0; s < steps; ++s) {
    if (potential) {
      auto wp = w.physical_mut(0);
      for (std::size_t i = 0; i < wp.size(); ++i) wp[i] *= half[i];
    }
    w = heat_semigroup_apply(w, nu * h);
    if (potential) {
      auto wp = w.physical_mut(0);
      for (std::size_t i = 0; i < wp.size(); ++i) wp[i] *= half[i];
    }
    psi = log_transform(w, nu, c, shift);
    sup = std::max(sup, sobolev_norm(psi, 1, cfg.p));
  }
  return {psi, sup};
}

}  // namespace

SweepResult nu_sweep(const Field& psi0, const std::optional<Field>& potential,
                     const NoiseOperator& noise, std::span<const double> nus,
                     const SolverConfig& cfg, const SweepOptions& options) {
  if (nus.size() < 3) throw ArgumentError("nu sweep needs at least 3 viscosities");
  for (std::size_t i = 0; i < nus.size(); ++i) {
    if (!(nus[i] > 0.0)) throw ArgumentError("nu sweep viscosities must be positive");
    if (i > 0 && !(nus[i] < nus[i - 1]))
      throw ArgumentError("nu sweep viscosities must be strictly decreasing");
  }
  if (psi0.components() != 1) throw ArgumentError("nu sweep expects a scalar potential");

  const double c =
      std::isnan(options.hj_factor) ? 0.5 * cfg.sign : options.hj_factor;
  const bool deterministic = noise.amplitude() == 0.0;
  if (!deterministic && !noise.gradient_form())
    throw ArgumentError("stochastic nu sweep requires gradient-form noise");

  SweepResult result;
  result.nus.assign(nus.begin(), nus.end());
  result.horizon = cfg.T;
  result.p = cfg.p;
  result.deterministic = deterministic;

  for (double nu : nus) {
    SolverConfig run_cfg = cfg;
    run_cfg.nu = nu;
    if (deterministic) {
      DeterministicRun run = hopf_cole_march(psi0, nu, potential, run_cfg, c);
      result.psi_final.push_back(std::move(run.psi_final));
      result.sup_h1p.push_back(run.sup_h1p);
      result.statuses.push_back(RunStatus::completed);
      result.notes.emplace_back();
    } else {
      // One Wiener sample shared across all ν: the same stream id re-seeds
      // identically, and the exact per-mode update reuses the draws.
      RngStream rng(options.master_seed, options.sample_index, "sweep-ou");
      SolveOptions solve_opts;
      solve_opts.snapshot_every = 1;
      solve_opts.diagnostics.enabled = false;
      Trajectory traj =
          solve(gradient(psi0), potential, noise, run_cfg, std::move(rng), solve_opts);
      double sup = 0.0;
      for (std::size_t i = 0; i < traj.v_snapshots.size(); ++i) {
        Field psi = antigradient(traj.u_snapshot(i));
        sup = std::max(sup, sobolev_norm(psi, 1, cfg.p));
      }
      result.psi_final.push_back(antigradient(traj.u_final()));
      result.sup_h1p.push_back(sup);
      result.statuses.push_back(traj.status);
      result.notes.push_back(traj.status == RunStatus::completed
                                 ? std::string{}
                                 : to_string(traj.status) + " at t = " +
                                       std::to_string(traj.status_time));
    }
  }

  for (std::size_t i = 0; i + 1 < result.psi_final.size(); ++i)
    result.gap_next.push_back(
        linf_norm(result.psi_final[i] - result.psi_final[i + 1]));

  if (deterministic && !potential) {
    Field hl = hopf_lax_solve(psi0, cfg.T, c);
    double k_fit = 0.0;
    for (std::size_t i = 0; i < result.psi_final.size(); ++i) {
      const double gap = linf_norm(result.psi_final[i] - hl);
      result.gap_hopf_lax.push_back(gap);
      k_fit = std::max(k_fit, gap / result.nus[i]);
    }
    result.k_fit = k_fit;
  }
  return result;
}

ExpectationStats expectation_estimates(std::span<const SweepResult> ensemble, double p,
                                       double t) {
  if (ensemble.size() < 30)
    throw ArgumentError("expectation estimates need at least 30 samples");
  const SweepResult& first = ensemble.front();
  if (std::abs(first.horizon - t) > 1e-9 * (1.0 + std::abs(t)))
    throw ArgumentError("expectation estimates are evaluated at the sweep horizon");
  const std::size_t m = first.nus.size();
  for (const SweepResult& s : ensemble)
    if (s.nus.size() != m) throw ArgumentError("sweep ensembles must share the nu list");

  ExpectationStats stats;
  stats.nus = first.nus;
  const auto n_samples = static_cast<double>(ensemble.size());

  for (std::size_t j = 0; j < m; ++j) {
    double mean = 0.0;
    double mean_log = 0.0;
    for (const SweepResult& s : ensemble) {
      const double x = std::pow(s.sup_h1p[j], p);
      mean += x;
      mean_log += std::log1p(x);
    }
    mean /= n_samples;
    mean_log /= n_samples;
    double var = 0.0;
    for (const SweepResult& s : ensemble) {
      const double dvi = std::pow(s.sup_h1p[j], p) - mean;
      var += dvi * dvi;
    }
    var /= (n_samples - 1.0);
    stats.mean.push_back(mean);
    stats.mean_log.push_back(mean_log);
    stats.stderr_.push_back(std::sqrt(var / n_samples));
  }

  // Fitted O(ν) margin: least-squares line through (ν, mean) plus twice the
  // fit residual, so a smooth ν-dependence passes and an outlier level fails.
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    sx += stats.nus[j];
    sy += stats.mean[j];
    sxx += stats.nus[j] * stats.nus[j];
    sxy += stats.nus[j] * stats.mean[j];
  }
  const double dm = static_cast<double>(m);
  stats.slope = (dm * sxy - sx * sy) / (dm * sxx - sx * sx);
  const double intercept = (sy - stats.slope * sx) / dm;
  double fit_rms = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    const double resid = stats.mean[j] - (intercept + stats.slope * stats.nus[j]);
    fit_rms += resid * resid;
  }
  fit_rms = std::sqrt(fit_rms / dm);

  stats.nu_uniform = true;
  for (std::size_t j = 0; j + 1 < m; ++j) {
    const double gap = std::abs(stats.mean[j] - stats.mean[j + 1]);
    const double se = 3.0 * std::hypot(stats.stderr_[j], stats.stderr_[j + 1]);
    const double margin =
        std::abs(stats.slope) * (stats.nus[j] - stats.nus[j + 1]) + 2.0 * fit_rms;
    if (gap > se + margin + 1e-12) stats.nu_uniform = false;
  }
  return stats;
}

}  // namespace sburgers
