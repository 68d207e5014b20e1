#include "sburgers/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "sburgers/estimates.hpp"
#include "sburgers/manifest.hpp"
#include "sburgers/oracle.hpp"
#include "sburgers/parallel.hpp"
#include "sburgers/snapshot.hpp"
#include "sburgers/spectral.hpp"
#include "sburgers/version.hpp"

namespace fs = std::filesystem;

namespace sburgers {

std::string csv_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double pairwise_sum(std::span<const double> values) {
  if (values.empty()) return 0.0;
  if (values.size() == 1) return values[0];
  if (values.size() == 2) return values[0] + values[1];
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.subspan(0, half)) + pairwise_sum(values.subspan(half));
}

namespace {

struct MeanStderr {
  double mean;
  double stderr_;
};

MeanStderr mean_stderr(std::span<const double> xs) {
  const auto n = static_cast<double>(xs.size());
  const double mean = pairwise_sum(xs) / n;
  if (xs.size() < 2) return {mean, 0.0};
  std::vector<double> sq(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) sq[i] = (xs[i] - mean) * (xs[i] - mean);
  const double var = pairwise_sum(sq) / (n - 1.0);
  return {mean, std::sqrt(var / n)};
}

void write_text(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << content;
  out.flush();
  if (!out) throw std::runtime_error("short write to '" + path.string() + "'");
}

void stamp_manifest(RunManifest& m, const ExperimentConfig& cfg,
                    const std::string& subcommand) {
  m.set("manifest.version", 1);
  m.set("run.subcommand", subcommand);
  m.set("run.code_version", std::string(kVersion));
  std::string echo = cfg.serialize();
  std::size_t pos = 0;
  while (pos < echo.size()) {
    const auto eol = echo.find('\n', pos);
    const std::string line = echo.substr(pos, eol - pos);
    pos = eol + 1;
    const auto eq = line.find(" = ");
    m.set("config." + line.substr(0, eq), line.substr(eq + 3));
  }
}

void finalize_manifest(RunManifest& m, const fs::path& dir,
                       const std::vector<std::string>& outputs) {
  for (const auto& rel : outputs) m.add_output(rel);
  m.set("run.completed", "true");
  m.write((dir / "manifest.txt").string());
}

// Shared fields are copied into worker threads; both representations must be
// current first so concurrent reads never trigger a lazy transform.
void presync(const Field& f) {
  f.ensure_physical();
  f.ensure_spectral();
}

std::string diagnostics_csv(const Trajectory& traj) {
  std::string csv =
      "t,lp_norm_u,sob1p_u,sob2p_z,grad_z_inf,curl_inf,div_inf,"
      "apriori_torus_rhs,apriori_rd_rhs,ratio_torus,picard_iters\n";
  const EstimateReport& r = traj.report;
  for (std::size_t i = 0; i < r.t.size(); ++i) {
    csv += csv_double(r.t[i]) + "," + csv_double(r.lp_u[i]) + "," +
           csv_double(r.sob1p_u[i]) + "," + csv_double(r.sob2p_z[i]) + "," +
           csv_double(r.grad_z_inf[i]) + "," + csv_double(r.curl_inf[i]) + "," +
           csv_double(r.div_inf[i]) + "," + csv_double(r.rhs_torus[i]) + "," +
           csv_double(r.rhs_rd[i]) + "," + csv_double(r.ratio_torus[i]) + "," +
           std::to_string(traj.picard_iterations[i]) + "\n";
  }
  return csv;
}

std::string estimates_extra_csv(const Trajectory& traj) {
  std::string csv = "t,v_linf,apriori_fk_rhs,ratio_fk,fu_lp,int_fu_lp\n";
  const EstimateReport& r = traj.report;
  for (std::size_t i = 0; i < r.t.size(); ++i)
    csv += csv_double(r.t[i]) + "," + csv_double(r.v_linf[i]) + "," +
           csv_double(r.rhs_fk[i]) + "," + csv_double(r.ratio_fk[i]) + "," +
           csv_double(r.fu_lp[i]) + "," + csv_double(r.int_fu_lp[i]) + "\n";
  return csv;
}

std::string dissipation_csv(const Trajectory& traj) {
  const auto residual = dissipation_residual(traj, traj.cfg.p);
  std::string csv = "t,residual\n";
  for (std::size_t i = 0; i < residual.size(); ++i)
    csv += csv_double(traj.snapshot_times[i + 1]) + "," + csv_double(residual[i]) + "\n";
  return csv;
}

DiagnosticsOptions diagnostics_from(const ExperimentConfig& cfg) {
  DiagnosticsOptions d;
  d.enabled = true;
  d.torus_C = cfg.estimates_C;
  d.rd_C = cfg.estimates_C_rd;
  d.bkm_C = cfg.estimates_C_bkm;
  return d;
}

std::size_t step_count(const SolverConfig& solver) {
  return static_cast<std::size_t>(std::llround(solver.T / solver.dt));
}

double resolve_hj_factor(const ExperimentConfig& cfg) {
  return std::isnan(cfg.hj_factor) ? 0.5 * cfg.solver.sign : cfg.hj_factor;
}

double rel_l2(const Field& a, const Field& b) {
  const double den = lp_norm(b, 2.0);
  const double num = lp_norm(a - b, 2.0);
  return den > 0.0 ? num / den : num;
}

Field zero_mean(const Field& scalar) {
  Field out = scalar;
  out.spectral_mut(0)[0] = 0.0;
  return out;
}

}  // namespace

int run_simulate(const ExperimentConfig& cfg) {
  const TorusGrid grid = cfg.make_grid();
  const Field u0 = cfg.make_initial(grid);
  const NoiseOperator noise = cfg.make_noise(grid);
  const std::optional<Field> forcing = cfg.make_ou_forcing(grid);

  fs::create_directories(cfg.out_dir);
  const fs::path dir(cfg.out_dir);
  RunManifest manifest;
  stamp_manifest(manifest, cfg, "simulate");
  RngStream rng(cfg.seed, 0, "trajectory");
  manifest.set("sample.0.seed", rng.derived_seed());
  manifest.set("run.completed", "false");
  manifest.write((dir / "manifest.txt").string());

  SolveOptions opts;
  const std::size_t steps = step_count(cfg.solver);
  opts.snapshot_every =
      cfg.snapshot_every > 0 ? cfg.snapshot_every : (steps <= 20000 ? 1 : 0);
  opts.diagnostics = diagnostics_from(cfg);

  const Trajectory traj = solve(u0, forcing, noise, cfg.solver, std::move(rng), opts);

  std::vector<std::string> outputs;
  write_text(dir / "diagnostics.csv", diagnostics_csv(traj));
  outputs.push_back("diagnostics.csv");
  write_text(dir / "estimates_extra.csv", estimates_extra_csv(traj));
  outputs.push_back("estimates_extra.csv");
  if (opts.snapshot_every == 1 && traj.v_snapshots.size() >= 2) {
    write_text(dir / "dissipation.csv", dissipation_csv(traj));
    outputs.push_back("dissipation.csv");
  }
  if (cfg.snapshot_every > 0) {
    for (std::size_t j = 0; j < traj.snapshot_times.size(); ++j) {
      const auto step =
          static_cast<long long>(std::llround(traj.snapshot_times[j] / cfg.solver.dt));
      char name[32];
      std::snprintf(name, sizeof(name), "u_%06lld.sbf", step);
      write_snapshot(traj.u_snapshot(j), (dir / name).string(), traj.snapshot_times[j]);
      outputs.emplace_back(name);
    }
  }

  manifest.set("sample.0.status", to_string(traj.status));
  manifest.set("sample.0.status_time", traj.status_time);
  manifest.set("sample.0.status_detail", traj.status_detail);
  finalize_manifest(manifest, dir, outputs);
  return 0;
}

int run_ensemble(const ExperimentConfig& cfg) {
  const TorusGrid grid = cfg.make_grid();
  const Field u0 = cfg.make_initial(grid);
  const NoiseOperator noise = cfg.make_noise(grid);
  const std::optional<Field> forcing = cfg.make_ou_forcing(grid);
  presync(u0);
  if (forcing) presync(*forcing);

  fs::create_directories(cfg.out_dir);
  const fs::path dir(cfg.out_dir);
  RunManifest manifest;
  stamp_manifest(manifest, cfg, "ensemble");
  manifest.set("run.completed", "false");

  struct SampleRow {
    std::uint64_t seed = 0;
    RunStatus status = RunStatus::completed;
    double status_time = 0.0;
    double final_lp_u = 0.0;
    double sup_lp_u = 0.0;
    double sup_ratio_torus = 0.0;
    double sup_ratio_fk = 0.0;
    double sup_curl_inf = 0.0;
    double sup_div_inf = 0.0;
    int picard_iters_max = 0;
  };
  const auto n_samples = static_cast<std::size_t>(cfg.samples);
  std::vector<SampleRow> rows(n_samples);

  for (std::size_t i = 0; i < n_samples; ++i)
    manifest.set("sample." + std::to_string(i) + ".seed",
                 RngStream(cfg.seed, i, "trajectory").derived_seed());
  manifest.write((dir / "manifest.txt").string());

  parallel_for(n_samples, [&](std::size_t i) {
    RngStream rng(cfg.seed, i, "trajectory");
    SampleRow& row = rows[i];
    row.seed = rng.derived_seed();
    SolveOptions opts;
    opts.snapshot_every = 0;
    opts.diagnostics = diagnostics_from(cfg);
    const Trajectory traj =
        solve(u0, forcing, noise, cfg.solver, std::move(rng), opts);
    row.status = traj.status;
    row.status_time = traj.status_time;
    const EstimateReport& r = traj.report;
    row.final_lp_u = r.lp_u.back();
    row.sup_lp_u = r.sup_lp_u();
    row.sup_ratio_torus = r.sup_ratio_torus();
    for (double x : r.ratio_fk) row.sup_ratio_fk = std::max(row.sup_ratio_fk, x);
    for (double x : r.curl_inf) row.sup_curl_inf = std::max(row.sup_curl_inf, x);
    for (double x : r.div_inf) row.sup_div_inf = std::max(row.sup_div_inf, x);
    for (int x : traj.picard_iterations)
      row.picard_iters_max = std::max(row.picard_iters_max, x);
  });

  std::string samples_csv =
      "sample,seed,status,status_time,final_lp_u,sup_lp_u,sup_ratio_torus,"
      "sup_ratio_fk,sup_curl_inf,sup_div_inf,picard_iters_max\n";
  for (std::size_t i = 0; i < n_samples; ++i) {
    const SampleRow& r = rows[i];
    samples_csv += std::to_string(i) + "," + std::to_string(r.seed) + "," +
                   to_string(r.status) + "," + csv_double(r.status_time) + "," +
                   csv_double(r.final_lp_u) + "," + csv_double(r.sup_lp_u) + "," +
                   csv_double(r.sup_ratio_torus) + "," + csv_double(r.sup_ratio_fk) +
                   "," + csv_double(r.sup_curl_inf) + "," + csv_double(r.sup_div_inf) +
                   "," + std::to_string(r.picard_iters_max) + "\n";
  }

  std::vector<double> sup_lp(n_samples), sup_ratio(n_samples);
  std::size_t completed = 0, blew_up = 0, picard_failed = 0, ratio_ok = 0;
  for (std::size_t i = 0; i < n_samples; ++i) {
    sup_lp[i] = rows[i].sup_lp_u;
    sup_ratio[i] = rows[i].sup_ratio_torus;
    if (rows[i].status == RunStatus::completed) ++completed;
    if (rows[i].status == RunStatus::blow_up) ++blew_up;
    if (rows[i].status == RunStatus::picard_failure) ++picard_failed;
    if (rows[i].sup_ratio_torus <= 1.0) ++ratio_ok;
  }
  const MeanStderr lp_stats = mean_stderr(sup_lp);
  const MeanStderr ratio_stats = mean_stderr(sup_ratio);
  const double calibrated_C =
      cfg.estimates_C * calibrate_torus_constant(sup_ratio);

  std::string aggregate_csv = "metric,value\n";
  aggregate_csv += "samples," + std::to_string(n_samples) + "\n";
  aggregate_csv += "completed," + std::to_string(completed) + "\n";
  aggregate_csv += "blow_up," + std::to_string(blew_up) + "\n";
  aggregate_csv += "picard_failure," + std::to_string(picard_failed) + "\n";
  aggregate_csv += "ratio_torus_le_one," + std::to_string(ratio_ok) + "\n";
  aggregate_csv += "mean_sup_lp_u," + csv_double(lp_stats.mean) + "\n";
  aggregate_csv += "stderr_sup_lp_u," + csv_double(lp_stats.stderr_) + "\n";
  aggregate_csv += "mean_sup_ratio_torus," + csv_double(ratio_stats.mean) + "\n";
  aggregate_csv += "stderr_sup_ratio_torus," + csv_double(ratio_stats.stderr_) + "\n";
  aggregate_csv += "calibrated_C," + csv_double(calibrated_C) + "\n";

  write_text(dir / "samples.csv", samples_csv);
  write_text(dir / "aggregate.csv", aggregate_csv);

  for (std::size_t i = 0; i < n_samples; ++i)
    manifest.set("sample." + std::to_string(i) + ".status", to_string(rows[i].status));
  finalize_manifest(manifest, dir, {"samples.csv", "aggregate.csv"});
  return 0;
}

int run_sweep_nu(const ExperimentConfig& cfg) {
  const TorusGrid grid = cfg.make_grid();
  if (cfg.init.kind != InitSpec::Kind::gradient)
    throw ConfigError("sweep-nu requires gradient initial data", 0, "init.kind");
  const Field psi0 = cfg.make_initial_potential(grid);
  const std::optional<Field> potential = cfg.make_forcing_potential(grid);
  const NoiseOperator noise = cfg.make_noise(grid);
  presync(psi0);
  if (potential) presync(*potential);

  fs::create_directories(cfg.out_dir);
  const fs::path dir(cfg.out_dir);
  RunManifest manifest;
  stamp_manifest(manifest, cfg, "sweep-nu");
  manifest.set("run.completed", "false");
  manifest.write((dir / "manifest.txt").string());

  const auto n_samples = static_cast<std::size_t>(cfg.samples);
  std::vector<SweepResult> results(n_samples);
  parallel_for(n_samples, [&](std::size_t i) {
    SweepOptions opts;
    opts.master_seed = cfg.seed;
    opts.sample_index = i;
    opts.hj_factor = cfg.hj_factor;
    results[i] = nu_sweep(psi0, potential, noise, cfg.sweep_nu, cfg.solver, opts);
  });

  std::string sweep_csv = "sample,nu,sup_h1p,gap_next,gap_hopf_lax,status\n";
  std::string summary_csv =
      "sample,k_fit,gap_hl_monotone_pairs,gap_next_monotone_pairs,pairs\n";
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 0; i < n_samples; ++i) {
    const SweepResult& s = results[i];
    for (std::size_t j = 0; j < s.nus.size(); ++j) {
      const double gap_next = j + 1 < s.nus.size() ? s.gap_next[j] : nan;
      const double gap_hl = j < s.gap_hopf_lax.size() ? s.gap_hopf_lax[j] : nan;
      sweep_csv += std::to_string(i) + "," + csv_double(s.nus[j]) + "," +
                   csv_double(s.sup_h1p[j]) + "," + csv_double(gap_next) + "," +
                   csv_double(gap_hl) + "," + to_string(s.statuses[j]) + "\n";
    }
    std::size_t hl_monotone = 0, next_monotone = 0;
    for (std::size_t j = 0; j + 1 < s.gap_hopf_lax.size(); ++j)
      if (s.gap_hopf_lax[j + 1] < s.gap_hopf_lax[j]) ++hl_monotone;
    for (std::size_t j = 0; j + 1 < s.gap_next.size(); ++j)
      if (s.gap_next[j + 1] < s.gap_next[j]) ++next_monotone;
    summary_csv += std::to_string(i) + "," + csv_double(s.k_fit) + "," +
                   std::to_string(hl_monotone) + "," + std::to_string(next_monotone) +
                   "," + std::to_string(s.nus.size() - 1) + "\n";
  }

  write_text(dir / "sweep.csv", sweep_csv);
  write_text(dir / "summary.csv", summary_csv);
  finalize_manifest(manifest, dir, {"sweep.csv", "summary.csv"});
  return 0;
}

int run_oracle_compare(const ExperimentConfig& cfg) {
  const TorusGrid grid = cfg.make_grid();
  if (cfg.init.kind != InitSpec::Kind::gradient)
    throw ConfigError("oracle-compare requires gradient initial data", 0, "init.kind");
  if (cfg.noise.A != 0.0)
    throw ConfigError("oracle-compare requires deterministic data (noise.A = 0)", 0,
                      "noise.A");
  const Field psi0 = cfg.make_initial_potential(grid);
  const std::optional<Field> potential = cfg.make_forcing_potential(grid);
  const NoiseOperator noise = cfg.make_noise(grid);
  const std::optional<Field> forcing = cfg.make_ou_forcing(grid);
  const double c = resolve_hj_factor(cfg);

  fs::create_directories(cfg.out_dir);
  const fs::path dir(cfg.out_dir);
  RunManifest manifest;
  stamp_manifest(manifest, cfg, "oracle-compare");
  manifest.set("run.completed", "false");
  manifest.write((dir / "manifest.txt").string());

  SolveOptions opts;
  const std::size_t steps = step_count(cfg.solver);
  opts.snapshot_every = std::max<int>(1, static_cast<int>(steps / 10));
  opts.diagnostics.enabled = false;
  RngStream rng(cfg.seed, 0, "trajectory");
  const Trajectory traj =
      solve(gradient(psi0), forcing, noise, cfg.solver, std::move(rng), opts);

  std::string csv = "t,rel_l2_u,linf_diff_u,rel_l2_psi,linf_psi_hopf_lax\n";
  double max_rel = 0.0;
  for (std::size_t j = 0; j < traj.snapshot_times.size(); ++j) {
    const double t = traj.snapshot_times[j];
    const PotentialState ref =
        hopf_cole_solve(psi0, cfg.solver.nu, potential, t, c, cfg.oracle_hc_steps);
    const Field u = traj.u_snapshot(j);
    const double e_l2 = rel_l2(u, ref.u);
    const double e_inf = linf_norm(u - ref.u);
    const double e_psi = rel_l2(zero_mean(antigradient(u)), zero_mean(ref.psi));
    // Distance to the inviscid limit (finite for ν > 0; shrinks with ν).
    double hl_gap = std::numeric_limits<double>::quiet_NaN();
    if (!potential && t > 0.0)
      hl_gap = linf_norm(zero_mean(antigradient(u)) -
                         zero_mean(hopf_lax_solve(psi0, t, c)));
    max_rel = std::max(max_rel, e_l2);
    csv += csv_double(t) + "," + csv_double(e_l2) + "," + csv_double(e_inf) + "," +
           csv_double(e_psi) + "," + csv_double(hl_gap) + "\n";
  }

  write_text(dir / "compare.csv", csv);
  manifest.set("result.status", to_string(traj.status));
  manifest.set("result.max_rel_l2_u", max_rel);
  finalize_manifest(manifest, dir, {"compare.csv"});
  return 0;
}

int run_convergence(const ExperimentConfig& cfg) {
  const TorusGrid grid = cfg.make_grid();
  if (cfg.noise.A != 0.0)
    throw ConfigError("convergence studies require deterministic data (noise.A = 0)", 0,
                      "noise.A");
  if (cfg.convergence_dts.size() < 2)
    throw ConfigError("need at least two dt values", 0, "convergence.dts");
  for (std::size_t i = 1; i < cfg.convergence_dts.size(); ++i)
    if (!(cfg.convergence_dts[i] < cfg.convergence_dts[i - 1]))
      throw ConfigError("dt values must be strictly decreasing", 0, "convergence.dts");

  const Field u0 = cfg.make_initial(grid);
  const NoiseOperator noise = cfg.make_noise(grid);
  const std::optional<Field> forcing = cfg.make_ou_forcing(grid);
  presync(u0);
  if (forcing) presync(*forcing);

  fs::create_directories(cfg.out_dir);
  const fs::path dir(cfg.out_dir);
  RunManifest manifest;
  stamp_manifest(manifest, cfg, "convergence");
  manifest.set("run.completed", "false");
  manifest.write((dir / "manifest.txt").string());

  // dt refinement at fixed n.
  std::vector<Field> finals(cfg.convergence_dts.size(), Field(grid, grid.dim()));
  parallel_for(cfg.convergence_dts.size(), [&](std::size_t i) {
    SolverConfig sc = cfg.solver;
    sc.dt = cfg.convergence_dts[i];
    SolveOptions opts;
    opts.snapshot_every = 0;
    opts.diagnostics.enabled = false;
    RngStream rng(cfg.seed, i, "trajectory");
    finals[i] = solve(u0, forcing, noise, sc, std::move(rng), opts).u_final();
  });

  std::string csv = "kind,param,error\n";
  std::vector<double> log_dt, log_err;
  for (std::size_t i = 0; i + 1 < finals.size(); ++i) {
    const double err = rel_l2(finals[i], finals[i + 1]);
    csv += "dt," + csv_double(cfg.convergence_dts[i]) + "," + csv_double(err) + "\n";
    if (err > 0.0) {
      log_dt.push_back(std::log(cfg.convergence_dts[i]));
      log_err.push_back(std::log(err));
    }
  }
  double slope = std::numeric_limits<double>::quiet_NaN();
  if (log_dt.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < log_dt.size(); ++i) {
      sx += log_dt[i];
      sy += log_err[i];
      sxx += log_dt[i] * log_dt[i];
      sxy += log_dt[i] * log_err[i];
    }
    const auto m = static_cast<double>(log_dt.size());
    slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  }
  csv += "slope_dt,0," + csv_double(slope) + "\n";

  // Optional n refinement.
  if (cfg.convergence_ns.size() >= 2) {
    std::vector<Field> n_finals;
    for (int n_pts : cfg.convergence_ns) {
      ExperimentConfig sub = cfg;
      sub.n = n_pts;
      const TorusGrid g(cfg.d, n_pts, cfg.period);
      const Field u0n = sub.make_initial(g);
      const NoiseOperator noisen = sub.make_noise(g);
      const std::optional<Field> forcingn = sub.make_ou_forcing(g);
      SolveOptions opts;
      opts.snapshot_every = 0;
      opts.diagnostics.enabled = false;
      RngStream rng(cfg.seed, 0, "trajectory");
      n_finals.push_back(
          solve(u0n, forcingn, noisen, cfg.solver, std::move(rng), opts).u_final());
    }
    for (std::size_t i = 0; i + 1 < n_finals.size(); ++i) {
      const Field fine_on_coarse_grid =
          resample(n_finals[i], cfg.convergence_ns[i + 1]);
      const double err = rel_l2(fine_on_coarse_grid, n_finals[i + 1]);
      csv += "n," + std::to_string(cfg.convergence_ns[i]) + "," + csv_double(err) + "\n";
    }
  }

  write_text(dir / "convergence.csv", csv);
  manifest.set("result.slope_dt", slope);
  finalize_manifest(manifest, dir, {"convergence.csv"});
  return 0;
}

}  // namespace sburgers
