#pragma once

#include <span>
#include <vector>

#include "sburgers/field.hpp"
#include "sburgers/ou.hpp"

namespace sburgers {

struct Trajectory;

struct DiagnosticsOptions {
  bool enabled = true;
  double torus_C = 1.0;  // constant in the torus a priori bound
  double rd_C = 1.0;     // constant inside the ν-dependent exponent term
  double bkm_C = 1.0;
};

/// Per-step monitor series along a trajectory. Two literal right-hand-side
/// shapes of the torus bound are tracked (the |u|^p form and the
/// maximum-principle |v|_∞ form); they differ slightly and both are reported.
struct EstimateReport {
  std::vector<double> t;
  std::vector<double> lp_u;      // |u(t)|_p
  std::vector<double> lhs;       // |u(t)|_p^p
  std::vector<double> sob1p_u;   // |u(t)|_{H^{1,p}}
  std::vector<double> sob2p_z;   // |z(t)|_{H^{2,p}}
  std::vector<double> grad_z_inf;
  std::vector<double> curl_inf;  // identically 0 for d=1
  std::vector<double> div_inf;
  std::vector<double> rhs_torus;
  std::vector<double> rhs_rd;    // large-torus surrogate of the whole-space bound
  std::vector<double> ratio_torus;
  std::vector<double> v_linf;    // |v(t)|_∞
  std::vector<double> rhs_fk;
  std::vector<double> ratio_fk;
  std::vector<double> fu_lp;     // |F(u)(t)|_p
  std::vector<double> int_fu_lp; // ∫₀ᵗ |F(u)|_p ds, the discrete L¹ monitor

  double sup_ratio_torus() const;
  double sup_lp_u() const;
};

/// lhs/rhs with the zero-data convention: 0/0 reports 1.
double estimate_ratio(double lhs, double rhs);

/// C·(|u0|_p^p + sup_{s≤t}|z(s)|_{H^{2,p}}²)·exp(∫₀ᵗ|∇z|_∞ ds), evaluated
/// from the running record at time t.
double torus_rhs_from_record(double u0_lp_p, const OUPath::Record& rec, double C);

/// Full ν-dependent right-hand side of the whole-space bound, evaluated on
/// the torus as a formula surrogate. Throws for ν = 0 (the bound diverges;
/// printing that divergence is the point of the monitor).
double rd_rhs_from_record(double u0_lp_p, const OUPath::Record& rec, double t, double p,
                          double nu, double C = 1.0);

/// Maximum-principle variant: (|v(δ)|_{H^{1,p}} + sup|z|²_{H^{2,p}})·e^{t+∫|∇z|_∞}.
double fk_rhs_from_record(double v_delta_sob1p, const OUPath::Record& rec, double t);

double torus_apriori_rhs(const Field& u0, const OUPath& zpath, double t, double p,
                         double C);
double rd_apriori_rhs(const Field& u0, const OUPath& zpath, double t, double p,
                      double nu, double C = 1.0);

struct BkmReport {
  double sup_curl_inf = 0.0;  // sup over the whole trajectory
  double div_inf_at_t0 = 0.0;
  double bound = 0.0;  // exp{C(t-t0)(|div u(t0)|_∞ + |curl u|_∞ + z terms)} shape
};

/// Monitors the vorticity-boundedness condition along a finished trajectory.
/// For d=1 the curl is reported as identically zero.
BkmReport bkm_monitor(const Trajectory& trajectory, double t0, double C = 1.0);

/// Discrete residual of the L^p energy identity over consecutive stored
/// snapshots: r = Δ|v|_p^p/Δt + νp·D − (forcing + z-coupling + divergence
/// terms), with D the grid evaluation of ∫|v|^{p-2}|∇v|² dx. For a pure heat
/// trajectory pass include_advection = false. Entries align with
/// snapshot_times[1..].
std::vector<double> dissipation_residual(const Trajectory& trajectory, double p,
                                         bool include_advection = true);

/// Magnitude of the largest negative residual entry (0 if none).
double violation_measure(std::span<const double> residual);

/// Smallest C that makes every supplied sup-ratio (computed at C = 1) at
/// most one: the max of the sample.
double calibrate_torus_constant(std::span<const double> sup_ratios_at_c1);

}  // namespace sburgers
