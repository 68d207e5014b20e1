#include "sburgers/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sburgers/solver.hpp"
#include "sburgers/spectral.hpp"

namespace sburgers {

double EstimateReport::sup_ratio_torus() const {
  double m = 0.0;
  for (double r : ratio_torus) m = std::max(m, r);
  return m;
}

double EstimateReport::sup_lp_u() const {
  double m = 0.0;
  for (double r : lp_u) m = std::max(m, r);
  return m;
}

double estimate_ratio(double lhs, double rhs) {
  if (rhs == 0.0) return lhs == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
  return lhs / rhs;
}

double torus_rhs_from_record(double u0_lp_p, const OUPath::Record& rec, double C) {
  return C * (u0_lp_p + rec.sup_sob2p * rec.sup_sob2p) * std::exp(rec.int_grad_inf);
}

double rd_rhs_from_record(double u0_lp_p, const OUPath::Record& rec, double t, double p,
                          double nu, double C) {
  if (!(nu > 0.0))
    throw ArgumentError(
        "the whole-space bound divides by nu; it diverges as nu -> 0 and is "
        "undefined at nu = 0");
  const double z2 = rec.sup_sob2p;
  const double exponent = (p + 1.0) * t * z2 + (p - 1.0) * t +
                          (2.0 * t / (nu * p)) *
                              (C * u0_lp_p * u0_lp_p + std::pow(z2, 4)) *
                              std::exp(2.0 * t * z2);
  return (u0_lp_p + rec.int_fz_lp) * std::exp(exponent);
}

double fk_rhs_from_record(double v_delta_sob1p, const OUPath::Record& rec, double t) {
  return (v_delta_sob1p + rec.sup_sob2p * rec.sup_sob2p) *
         std::exp(t + rec.int_grad_inf);
}

namespace {

const OUPath::Record& record_at_time(const OUPath& zpath, double t) {
  if (zpath.records().empty())
    throw ArgumentError("OU path was generated without norm records");
  return zpath.record_at(zpath.index_of(t));
}

}  // namespace

double torus_apriori_rhs(const Field& u0, const OUPath& zpath, double t, double p,
                         double C) {
  return torus_rhs_from_record(std::pow(lp_norm(u0, p), p), record_at_time(zpath, t), C);
}

double rd_apriori_rhs(const Field& u0, const OUPath& zpath, double t, double p,
                      double nu, double C) {
  return rd_rhs_from_record(std::pow(lp_norm(u0, p), p), record_at_time(zpath, t), t, p,
                            nu, C);
}

BkmReport bkm_monitor(const Trajectory& trajectory, double t0, double C) {
  if (trajectory.times.empty() || trajectory.report.t.empty())
    throw ArgumentError("bkm monitor needs a trajectory with recorded diagnostics");
  const double t_end = trajectory.times.back();
  if (!(t0 >= 0.0) || t0 > t_end)
    throw ArgumentError("t0 must lie within the trajectory time range");

  const double dt = trajectory.cfg.dt;
  const auto i0 = static_cast<std::size_t>(std::llround(t0 / dt));
  if (i0 >= trajectory.times.size() ||
      std::abs(trajectory.times[i0] - t0) > 1e-9 * (1.0 + t0))
    throw ArgumentError("t0 is not on the trajectory step grid");

  BkmReport out;
  for (double c : trajectory.report.curl_inf) out.sup_curl_inf = std::max(out.sup_curl_inf, c);
  out.div_inf_at_t0 = trajectory.report.div_inf[i0];

  const OUPath::Record& rec = trajectory.z_records.back();
  const double u0_lp = trajectory.report.lp_u.front();
  const double u0_lp_p = trajectory.report.lhs.front();
  const double z_terms = rec.sup_sob3p * rec.sup_sob3p *
                         (1.0 + u0_lp + rec.sup_sob2p * rec.sup_sob2p) *
                         std::exp(t_end * rec.sup_sob2p);
  out.bound = C * (u0_lp_p + rec.int_fz_lp) *
              std::exp(C * (t_end - t0) *
                       (out.div_inf_at_t0 + out.sup_curl_inf + z_terms));
  return out;
}

std::vector<double> dissipation_residual(const Trajectory& trajectory, double p,
                                         bool include_advection) {
  const auto& vs = trajectory.v_snapshots;
  const auto& zs = trajectory.z_snapshots;
  const auto& ts = trajectory.snapshot_times;
  if (vs.size() < 2) throw ArgumentError("dissipation residual needs >= 2 snapshots");

  const double nu = trajectory.cfg.nu;
  const double s = trajectory.cfg.sign;
  const bool dealias = trajectory.cfg.dealias;
  const TorusGrid& grid = vs.front().grid();
  const std::size_t npts = grid.total_points();
  const double vol = grid.cell_volume();
  const int d = grid.dim();

  auto lp_pow_p = [&](const Field& f) { return std::pow(lp_norm(f, p), p); };

  std::vector<double> residual;
  residual.reserve(vs.size() - 1);
  double prev_energy = lp_pow_p(vs.front());

  for (std::size_t i = 1; i < vs.size(); ++i) {
    const Field& v = vs[i];
    const Field& z = zs[i];
    const double h = ts[i] - ts[i - 1];
    const double energy = lp_pow_p(v);

    // D = ∫ |v|^{p-2} |∇v|² dx on the grid.
    std::vector<double> mag_sq(npts, 0.0);
    for (int c = 0; c < d; ++c) {
      auto phys = v.physical(c);
      for (std::size_t x = 0; x < npts; ++x) mag_sq[x] += phys[x] * phys[x];
    }
    std::vector<double> grad_sq(npts, 0.0);
    for (int a = 0; a < d; ++a) {
      Field da = derivative(v, a);
      for (int c = 0; c < d; ++c) {
        auto phys = da.physical(c);
        for (std::size_t x = 0; x < npts; ++x) grad_sq[x] += phys[x] * phys[x];
      }
    }
    double dissipation = 0.0;
    for (std::size_t x = 0; x < npts; ++x) {
      if (mag_sq[x] == 0.0 && p < 2.0) continue;
      dissipation += std::pow(mag_sq[x], 0.5 * (p - 2.0)) * grad_sq[x];
    }
    dissipation *= vol;

    double rhs = 0.0;
    if (include_advection) {
      // ⟨ v|v|^{p-2}, · ⟩ pairings with the exact identity terms.
      auto pairing = [&](const Field& field) {
        double acc = 0.0;
        for (int c = 0; c < d; ++c) {
          auto vc = v.physical(c);
          auto fc = field.physical(c);
          for (std::size_t x = 0; x < npts; ++x) {
            if (mag_sq[x] == 0.0) continue;
            acc += vc[x] * std::pow(mag_sq[x], 0.5 * (p - 2.0)) * fc[x];
          }
        }
        return acc * vol;
      };

      const Field fz = advect(z, z, dealias);
      const Field coupling = advect(v, z, dealias);
      rhs += s * p * pairing(fz);
      rhs += s * p * pairing(coupling);

      Field div_w = divergence(v + z);
      auto div_phys = div_w.physical(0);
      double div_term = 0.0;
      for (std::size_t x = 0; x < npts; ++x)
        div_term += std::pow(mag_sq[x], 0.5 * p) * div_phys[x];
      rhs -= s * div_term * vol;
    }

    residual.push_back((energy - prev_energy) / h + nu * p * dissipation - rhs);
    prev_energy = energy;
  }
  return residual;
}

double violation_measure(std::span<const double> residual) {
  double m = 0.0;
  for (double r : residual) m = std::max(m, -r);
  return m;
}

double calibrate_torus_constant(std::span<const double> sup_ratios_at_c1) {
  if (sup_ratios_at_c1.empty())
    throw ArgumentError("calibration needs at least one sample");
  double m = 0.0;
  for (double r : sup_ratios_at_c1) m = std::max(m, r);
  return m;
}

}  // namespace sburgers
