#include "sburgers/ou.hpp"

#include <cmath>
#include <limits>

#include "sburgers/spectral.hpp"
#include "step_factors.hpp"

namespace sburgers {
namespace {

// Increment variance of the exact OU update over one step.
double increment_variance(double sigma, double lambda, double dt) {
  if (lambda == 0.0) return sigma * sigma * dt;
  return sigma * sigma * (-std::expm1(-2.0 * lambda * dt)) / (2.0 * lambda);
}

}  // namespace

OUState ou_initial_state(const NoiseOperator& noise) {
  return OUState{0.0, Field(noise.grid(), noise.state_components())};
}

OUState ou_step(const OUState& state, double dt, double nu,
                const std::optional<Field>& forcing, const NoiseOperator& noise,
                RngStream& rng) {
  if (!(dt > 0.0)) throw ArgumentError("ou_step requires dt > 0");
  if (state.state.components() != noise.state_components())
    throw ArgumentError("OU state layout does not match the noise operator");
  if (forcing) {
    if (!(forcing->grid() == noise.grid()))
      throw ArgumentError("forcing grid does not match the noise grid");
    if (forcing->components() != noise.state_components())
      throw ArgumentError(noise.gradient_form()
                              ? "gradient-form noise takes a scalar potential forcing"
                              : "forcing must be a dim-component field");
  }

  OUState next{state.t + dt, state.state};
  const int comps = next.state.components();

  const detail::StepFactors& factors = detail::step_factors(noise.grid(), nu, dt);
  for (int c = 0; c < comps; ++c) {
    auto spec = next.state.spectral_mut(c);
    if (forcing) {
      auto f = forcing->spectral(c);
      for (std::size_t i = 0; i < spec.size(); ++i)
        spec[i] = spec[i] * factors.decay[i] + f[i] * factors.phi[i];
    } else {
      for (std::size_t i = 0; i < spec.size(); ++i) spec[i] *= factors.decay[i];
    }
  }

  // Noise increments on the driven modes, conjugate-mirrored to keep the
  // physical state real. Fixed mode-major, component-minor draw order.
  for (const NoiseMode& m : noise.modes()) {
    const double lambda = nu * m.k_squared;
    const double var = increment_variance(m.sigma, lambda, dt);
    for (int c = 0; c < comps; ++c) {
      auto spec = next.state.spectral_mut(c);
      if (m.self_conjugate) {
        spec[m.flat] += std::sqrt(var) * rng.normal();
      } else {
        const double s = std::sqrt(0.5 * var);
        const std::complex<double> eta(s * rng.normal(), s * rng.normal());
        spec[m.flat] += eta;
        spec[m.mirror] += std::conj(eta);
      }
    }
  }
  return next;
}

Field ou_velocity(const OUState& state, const NoiseOperator& noise) {
  if (noise.gradient_form()) return gradient(state.state);
  return state.state;
}

OUSampler::OUSampler(double dt, double nu, std::optional<Field> forcing,
                     const NoiseOperator& noise, RngStream rng, OUPathOptions options)
    : dt_(dt),
      nu_(nu),
      forcing_(std::move(forcing)),
      noise_(noise),
      rng_(std::move(rng)),
      options_(options),
      state_(ou_initial_state(noise)),
      velocity_(ou_velocity(state_, noise)) {
  if (!(dt > 0.0)) throw ArgumentError("OU sampler requires dt > 0");
  refresh();
}

void OUSampler::advance() {
  const OUPath::Record prev = record_;
  state_ = ou_step(state_, dt_, nu_, forcing_, noise_, rng_);
  velocity_ = ou_velocity(state_, noise_);
  refresh();
  if (options_.record_norms) {
    record_.int_grad_inf = prev.int_grad_inf + prev.grad_z_inf * dt_;
    record_.int_fz_lp = prev.int_fz_lp + prev.fz_lp * dt_;
    record_.sup_z_lp = std::max(prev.sup_z_lp, record_.z_lp);
    record_.sup_sob1p = std::max(prev.sup_sob1p, record_.z_sob1p);
    record_.sup_sob2p = std::max(prev.sup_sob2p, record_.z_sob2p);
    record_.sup_sob3p = std::max(prev.sup_sob3p, record_.z_sob3p);
    record_.sup_grad_inf = std::max(prev.sup_grad_inf, record_.grad_z_inf);
  }
}

void OUSampler::refresh() {
  record_.t = state_.t;
  if (!options_.record_norms) return;
  const Field& z = velocity_;
  const double p = options_.p;
  record_.z_lp = lp_norm(z, p);
  record_.z_sob1p = sobolev_norm(z, 1, p);
  record_.z_sob2p = sobolev_norm(z, 2, p);
  record_.z_sob3p = sobolev_norm(z, 3, p);

  record_.grad_z_inf = jacobian_linf(z);
  record_.fz_lp = lp_norm(nonlinearity(z, 1.0, options_.dealias), p);

  if (state_.t == 0.0) {
    record_.sup_z_lp = record_.z_lp;
    record_.sup_sob1p = record_.z_sob1p;
    record_.sup_sob2p = record_.z_sob2p;
    record_.sup_sob3p = record_.z_sob3p;
    record_.sup_grad_inf = record_.grad_z_inf;
    record_.int_grad_inf = 0.0;
    record_.int_fz_lp = 0.0;
  }
}

OUPath ou_path(double T, double dt, double nu, const std::optional<Field>& forcing,
               const NoiseOperator& noise, RngStream rng, const OUPathOptions& options) {
  if (!(T > 0.0)) throw ArgumentError("ou_path requires T > 0");
  if (!(dt > 0.0)) throw ArgumentError("ou_path requires dt > 0");
  const double steps_real = T / dt;
  const auto steps = static_cast<std::size_t>(std::llround(steps_real));
  if (steps == 0 || std::abs(steps_real - static_cast<double>(steps)) > 1e-9 * steps_real)
    throw ArgumentError("dt must divide T within rounding");

  OUPath path;
  path.dt_ = dt;
  path.forcing_ = forcing;
  OUSampler sampler(dt, nu, forcing, noise, std::move(rng), options);
  for (std::size_t i = 0; i <= steps; ++i) {
    if (i > 0) sampler.advance();
    path.times_.push_back(sampler.state().t);
    if (options.keep_fields) path.fields_.push_back(sampler.velocity());
    if (options.record_norms) path.records_.push_back(sampler.record());
  }
  return path;
}

std::size_t OUPath::index_of(double t) const {
  if (times_.empty()) throw ArgumentError("empty OU path");
  const auto i = static_cast<std::size_t>(std::llround(t / dt_));
  if (i >= times_.size() || std::abs(times_[i] - t) > 1e-9 * (1.0 + std::abs(t)))
    throw ArgumentError("time " + std::to_string(t) + " is not on the path grid");
  return i;
}

double holder_exponent_estimate(const OUPath& path, int sobolev_order, double p) {
  const std::size_t steps = path.steps();
  if (steps < 100) throw ArgumentError("holder estimate needs a path of >= 100 steps");
  if (path.fields().empty())
    throw ArgumentError("holder estimate needs a path with fields kept");

  std::vector<double> log_lag, log_diff;
  const double scale = [&] {
    double s = 0.0;
    for (const Field& f : path.fields()) s = std::max(s, linf_norm(f));
    return s;
  }();

  for (std::size_t lag = 1; 4 * lag <= steps; lag *= 2) {
    double sq_sum = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i + lag <= steps; ++i) {
      Field diff = path.field_at(i + lag) - path.field_at(i);
      const double nrm = sobolev_norm(diff, sobolev_order, p);
      sq_sum += nrm * nrm;
      ++count;
    }
    const double rms = std::sqrt(sq_sum / static_cast<double>(count));
    if (rms <= 1e-14 * (1.0 + scale)) continue;
    log_lag.push_back(std::log(static_cast<double>(lag) * path.dt()));
    log_diff.push_back(std::log(rms));
  }

  if (log_lag.size() < 2) return std::numeric_limits<double>::infinity();

  // Ordinary least squares for the slope.
  const auto n = static_cast<double>(log_lag.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < log_lag.size(); ++i) {
    sx += log_lag[i];
    sy += log_diff[i];
    sxx += log_lag[i] * log_lag[i];
    sxy += log_lag[i] * log_diff[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace sburgers
