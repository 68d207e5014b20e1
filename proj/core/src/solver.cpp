#include "sburgers/solver.hpp"

#include <cmath>
#include <deque>
#include <limits>

#include "sburgers/spectral.hpp"
#include "step_factors.hpp"

namespace sburgers {
namespace {

bool spectrum_finite(const Field& f) {
  for (int c = 0; c < f.components(); ++c)
    for (const auto& v : f.spectral(c))
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

}  // namespace

std::string to_string(RunStatus status) {
  switch (status) {
    case RunStatus::completed: return "completed";
    case RunStatus::blow_up: return "blow_up";
    case RunStatus::picard_failure: return "picard_failure";
  }
  return "unknown";
}

void SolverConfig::validate(int dim) const {
  if (!(nu > 0.0)) throw ArgumentError("solver viscosity must be positive");
  if (!(p > dim))
    throw ArgumentError("solver exponent must satisfy p > d, got p = " +
                        std::to_string(p) + " with d = " + std::to_string(dim));
  if (!(dt > 0.0)) throw ArgumentError("solver dt must be positive");
  if (!(T > 0.0)) throw ArgumentError("solver horizon must be positive");
  if (!(picard_tol > 0.0)) throw ArgumentError("picard tolerance must be positive");
  if (picard_max_iters < 1) throw ArgumentError("picard max iterations must be >= 1");
  if (blow_up_threshold < 0.0)
    throw ArgumentError("blow-up threshold must be nonnegative (0 = automatic)");
  if (sign != 1.0 && sign != -1.0)
    throw ArgumentError("nonlinearity sign must be +1 or -1");
}

bool BlowUpGuard::triggered(double u_lp) const {
  if (!std::isfinite(u_lp)) return true;
  return u_lp > threshold;
}

double BlowUpGuard::resolve_threshold(const SolverConfig& cfg, const Field& u0) {
  if (cfg.blow_up_threshold > 0.0) return cfg.blow_up_threshold;
  return 1e6 * (1.0 + lp_norm(u0, cfg.p));
}

Field etd1_step(const Field& v, const Field& z, const SolverConfig& cfg, double t) {
  if (!(v.grid() == z.grid())) throw ArgumentError("v and z live on different grids");
  Field rhs = nonlinearity(v + z, cfg.sign, cfg.dealias);
  Field out = v;
  const detail::StepFactors& factors = detail::step_factors(out.grid(), cfg.nu, cfg.dt);
  for (int c = 0; c < out.components(); ++c) {
    auto spec = out.spectral_mut(c);
    auto nl = rhs.spectral(c);
    for (std::size_t i = 0; i < spec.size(); ++i)
      spec[i] = factors.decay[i] * spec[i] + factors.phi[i] * nl[i];
  }
  if (!spectrum_finite(out))
    throw OverflowError("etd1 step produced a non-finite field", t + cfg.dt);
  return out;
}

PicardResult picard_window(const Field& v0, std::span<const Field> z_nodes,
                           const SolverConfig& cfg) {
  if (z_nodes.empty()) throw ArgumentError("picard window needs at least one z node");
  const std::size_t q_count = z_nodes.size();  // nodes 0..Q
  const double h = cfg.dt;
  const TorusGrid& grid = v0.grid();
  const std::size_t npts = grid.total_points();

  // Semigroup multipliers per lag, shared by every sweep of the iteration.
  std::vector<std::vector<double>> lag_decay(q_count);
  for (std::size_t lag = 0; lag < q_count; ++lag) {
    lag_decay[lag].resize(npts);
    const double a = cfg.nu * h * static_cast<double>(lag);
    for_each_mode(grid, [&](std::size_t flat, const WaveIndex& w) {
      lag_decay[lag][flat] = std::exp(-a * w.k_squared);
    });
  }
  auto decayed = [&](const Field& f, std::size_t lag) {
    Field out = f;
    for (int c = 0; c < out.components(); ++c) {
      auto spec = out.spectral_mut(c);
      for (std::size_t i = 0; i < npts; ++i) spec[i] *= lag_decay[lag][i];
    }
    return out;
  };

  std::vector<Field> free_flow;
  free_flow.reserve(q_count);
  for (std::size_t q = 0; q < q_count; ++q) free_flow.push_back(decayed(v0, q));

  std::vector<Field> current = free_flow;
  PicardResult result;

  for (int m = 0; m < cfg.picard_max_iters; ++m) {
    // F(v+z) at every node of the current iterate.
    std::vector<Field> rhs;
    rhs.reserve(q_count);
    for (std::size_t r = 0; r < q_count; ++r)
      rhs.push_back(nonlinearity(current[r] + z_nodes[r], cfg.sign, cfg.dealias));

    // Trapezoid-in-σ mild update with the semigroup applied spectrally.
    std::vector<Field> next;
    next.reserve(q_count);
    next.push_back(v0);
    for (std::size_t q = 1; q < q_count; ++q) {
      Field acc = free_flow[q];
      for (int c = 0; c < acc.components(); ++c) {
        auto dst = acc.spectral_mut(c);
        for (std::size_t r = 0; r <= q; ++r) {
          const double weight = (r == 0 || r == q) ? 0.5 * h : h;
          auto src = rhs[r].spectral(c);
          const auto& dec = lag_decay[q - r];
          for (std::size_t i = 0; i < npts; ++i) dst[i] += weight * dec[i] * src[i];
        }
      }
      next.push_back(std::move(acc));
    }

    double correction = 0.0;
    for (std::size_t q = 0; q < q_count; ++q)
      correction = std::max(correction, lp_norm(next[q] - current[q], cfg.p));
    current = std::move(next);
    result.iterations = m + 1;
    result.last_correction = correction;
    if (!std::isfinite(correction)) break;
    if (correction <= cfg.picard_tol) {
      result.converged = true;
      break;
    }
  }

  result.v_nodes = std::move(current);
  return result;
}

namespace {

// Shared per-step bookkeeping for solve().
class TrajectoryBuilder {
public:
  TrajectoryBuilder(Trajectory& traj, const SolverConfig& cfg, const SolveOptions& opts,
                    std::size_t total_steps)
      : traj_(traj), cfg_(cfg), opts_(opts), total_steps_(total_steps) {}

  void push_step(std::size_t step_index, double t, const Field& v, const Field& z,
                 const OUPath::Record& rec, int picard_iters) {
    traj_.times.push_back(t);
    traj_.picard_iterations.push_back(picard_iters);
    traj_.z_records.push_back(rec);

    if (opts_.diagnostics.enabled) {
      EstimateReport& rep = traj_.report;
      Field u = v + z;
      const double p = cfg_.p;
      const double lp_u = lp_norm(u, p);
      const double lhs = std::pow(lp_u, p);
      if (rep.t.empty()) {
        u0_lp_ = lp_u;
        u0_lp_p_ = lhs;
      }
      rep.t.push_back(t);
      rep.lp_u.push_back(lp_u);
      rep.lhs.push_back(lhs);
      rep.sob1p_u.push_back(sobolev_norm(u, 1, p));
      rep.sob2p_z.push_back(rec.z_sob2p);
      rep.grad_z_inf.push_back(rec.grad_z_inf);
      rep.curl_inf.push_back(u.grid().dim() == 1 ? 0.0 : linf_norm(curl(u)));
      rep.div_inf.push_back(linf_norm(divergence(u)));
      const double rhs_torus = torus_rhs_from_record(u0_lp_p_, rec, opts_.diagnostics.torus_C);
      rep.rhs_torus.push_back(rhs_torus);
      rep.rhs_rd.push_back(
          rd_rhs_from_record(u0_lp_p_, rec, t, p, cfg_.nu, opts_.diagnostics.rd_C));
      rep.ratio_torus.push_back(estimate_ratio(lhs, rhs_torus));

      const double v_linf = linf_norm(v);
      if (rep.t.size() == 2) v_delta_sob1p_ = sobolev_norm(v, 1, p);
      rep.v_linf.push_back(v_linf);
      const double rhs_fk =
          rep.t.size() < 2 ? 0.0 : fk_rhs_from_record(v_delta_sob1p_, rec, t);
      rep.rhs_fk.push_back(rhs_fk);
      rep.ratio_fk.push_back(rep.t.size() < 2 ? 1.0 : estimate_ratio(v_linf, rhs_fk));

      const double fu = lp_norm(nonlinearity(u, 1.0, cfg_.dealias), p);
      const double prev_int =
          rep.fu_lp.empty() ? 0.0 : rep.int_fu_lp.back() + rep.fu_lp.back() * cfg_.dt;
      rep.fu_lp.push_back(fu);
      rep.int_fu_lp.push_back(prev_int);
    }

    const bool last = step_index == total_steps_;
    const bool cadence =
        opts_.snapshot_every > 0 &&
        step_index % static_cast<std::size_t>(opts_.snapshot_every) == 0;
    if (step_index == 0 || last || cadence) {
      traj_.snapshot_times.push_back(t);
      traj_.v_snapshots.push_back(v);
      traj_.z_snapshots.push_back(z);
    }
  }

  // Re-store the final state when a run terminates early.
  void force_snapshot(double t, const Field& v, const Field& z) {
    if (!traj_.snapshot_times.empty() && traj_.snapshot_times.back() == t) return;
    traj_.snapshot_times.push_back(t);
    traj_.v_snapshots.push_back(v);
    traj_.z_snapshots.push_back(z);
  }

private:
  Trajectory& traj_;
  const SolverConfig& cfg_;
  const SolveOptions& opts_;
  std::size_t total_steps_;
  double u0_lp_ = 0.0;
  double u0_lp_p_ = 0.0;
  double v_delta_sob1p_ = 0.0;
};

}  // namespace

Trajectory solve(const Field& u0, const std::optional<Field>& forcing,
                 const NoiseOperator& noise, const SolverConfig& cfg, RngStream rng,
                 const SolveOptions& options) {
  cfg.validate(u0.grid().dim());
  if (!(u0.grid() == noise.grid()))
    throw ArgumentError("initial condition and noise live on different grids");
  if (u0.components() != u0.grid().dim())
    throw ArgumentError("initial condition must be a dim-component field");
  if (!u0.finite()) throw ArgumentError("initial condition contains non-finite values");

  const double steps_real = cfg.T / cfg.dt;
  const auto total_steps = static_cast<std::size_t>(std::llround(steps_real));
  if (total_steps == 0 ||
      std::abs(steps_real - static_cast<double>(total_steps)) > 1e-9 * steps_real)
    throw ArgumentError("solver dt must divide the horizon T within rounding");

  Trajectory traj;
  traj.cfg = cfg;
  TrajectoryBuilder builder(traj, cfg, options, total_steps);

  OUPathOptions ou_opts;
  ou_opts.keep_fields = false;
  ou_opts.record_norms = true;
  ou_opts.p = cfg.p;
  ou_opts.dealias = cfg.dealias;
  OUSampler sampler(cfg.dt, cfg.nu, forcing, noise, std::move(rng), ou_opts);

  // Lookahead buffers so a Picard window can be retried after halving without
  // disturbing the noise stream.
  std::deque<Field> z_buffer{sampler.velocity()};
  std::deque<OUPath::Record> rec_buffer{sampler.record()};
  auto ensure_lookahead = [&](std::size_t count) {
    while (z_buffer.size() < count) {
      sampler.advance();
      z_buffer.push_back(sampler.velocity());
      rec_buffer.push_back(sampler.record());
    }
  };

  Field v = u0;
  const BlowUpGuard guard{BlowUpGuard::resolve_threshold(cfg, u0)};

  builder.push_step(0, 0.0, v, z_buffer.front(), rec_buffer.front(), 0);
  {
    const double u0_lp = lp_norm(u0, cfg.p);
    if (guard.triggered(u0_lp)) {
      traj.status = RunStatus::blow_up;
      traj.status_time = 0.0;
      traj.status_detail = "initial data above the blow-up threshold";
      return traj;
    }
  }

  std::size_t step = 0;
  while (step < total_steps) {
    if (cfg.scheme == Scheme::etd1) {
      ensure_lookahead(2);
      const double t = static_cast<double>(step) * cfg.dt;
      try {
        Field v_next = etd1_step(v, z_buffer.front(), cfg, t);
        v = std::move(v_next);
      } catch (const OverflowError& e) {
        traj.status = RunStatus::blow_up;
        traj.status_time = traj.times.back();  // last valid time
        traj.status_detail = e.what();
        builder.force_snapshot(traj.times.back(), v, z_buffer.front());
        return traj;
      }
      ++step;
      z_buffer.pop_front();
      rec_buffer.pop_front();
      const double t_next = static_cast<double>(step) * cfg.dt;
      builder.push_step(step, t_next, v, z_buffer.front(), rec_buffer.front(), 0);
      if (guard.triggered(lp_norm(v + z_buffer.front(), cfg.p))) {
        traj.status = RunStatus::blow_up;
        traj.status_time = t_next;
        traj.status_detail = "lp norm exceeded the blow-up threshold";
        builder.force_snapshot(t_next, v, z_buffer.front());
        return traj;
      }
    } else {
      // Window length heuristic from the current state, then halving retries.
      const double t = static_cast<double>(step) * cfg.dt;
      double window = cfg.picard_window > 0.0
                          ? cfg.picard_window
                          : std::min(cfg.dt * 100.0,
                                     0.1 / (1.0 + std::pow(lp_norm(v + z_buffer.front(), cfg.p), 2)));
      auto window_steps = static_cast<std::size_t>(std::llround(window / cfg.dt));
      window_steps = std::min(std::max<std::size_t>(window_steps, 1), total_steps - step);

      PicardResult result;
      int halvings = 0;
      for (;; ++halvings) {
        ensure_lookahead(window_steps + 1);
        std::vector<Field> z_nodes(z_buffer.begin(),
                                   z_buffer.begin() + static_cast<long>(window_steps) + 1);
        result = picard_window(v, z_nodes, cfg);
        if (result.converged) break;
        if (halvings >= 10) {
          traj.status = RunStatus::picard_failure;
          traj.status_time = t;
          traj.status_detail =
              "picard iteration failed to contract after 10 window halvings "
              "(blow-up suspected)";
          builder.force_snapshot(traj.times.back(), v, z_buffer.front());
          return traj;
        }
        window_steps = std::max<std::size_t>(1, window_steps / 2);
      }

      for (std::size_t q = 1; q <= window_steps; ++q) {
        v = result.v_nodes[q];
        ++step;
        z_buffer.pop_front();
        rec_buffer.pop_front();
        const double t_next = static_cast<double>(step) * cfg.dt;
        builder.push_step(step, t_next, v, z_buffer.front(), rec_buffer.front(),
                          result.iterations);
        if (guard.triggered(lp_norm(v + z_buffer.front(), cfg.p))) {
          traj.status = RunStatus::blow_up;
          traj.status_time = t_next;
          traj.status_detail = "lp norm exceeded the blow-up threshold";
          builder.force_snapshot(t_next, v, z_buffer.front());
          return traj;
        }
      }
    }
  }

  traj.status = RunStatus::completed;
  traj.status_time = cfg.T;
  return traj;
}

}  // namespace sburgers
