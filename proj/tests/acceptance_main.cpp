// Acceptance suite: one pass/fail line per criterion. Exercises the library
// directly and, for the infrastructure criterion, the installed CLI binary
// (path in argv[1]).

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <vector>

#include "sburgers/config.hpp"
#include "sburgers/estimates.hpp"
#include "sburgers/manifest.hpp"
#include "sburgers/oracle.hpp"
#include "sburgers/parallel.hpp"
#include "sburgers/runner.hpp"
#include "sburgers/snapshot.hpp"
#include "sburgers/solver.hpp"
#include "sburgers/spectral.hpp"

using namespace sburgers;
namespace fs = std::filesystem;

namespace {

std::string g_cli_path;

double now_seconds() {
  using clock = std::chrono::steady_clock;
  static const auto start = clock::now();
  return std::chrono::duration<double>(clock::now() - start).count();
}

Field cosine_potential(const TorusGrid& g) {
  Field psi = Field::scalar(g);
  auto phys = psi.physical_mut(0);
  for (std::size_t flat = 0; flat < g.total_points(); ++flat)
    phys[flat] = std::cos(g.coordinate(g.unflatten(flat)[0]));
  return psi;
}

NoiseOperator silent_noise(const TorusGrid& g) {
  return build_noise(g, 0.0, 3.0, 0, 4, 2.0);
}

double rel_l2(const Field& a, const Field& b) {
  return lp_norm(a - b, 2.0) / lp_norm(b, 2.0);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

// --- criterion 1 -----------------------------------------------------------

bool criterion1(std::string& detail) {
  const auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };

  // d = 1: N = 128, nu = 0.1, s = -1, psi0 = cos x, T = 0.5, dt = 1e-3.
  TorusGrid g1(1, 128);
  Field psi0 = cosine_potential(g1);
  SolverConfig cfg;
  cfg.nu = 0.1;
  cfg.p = 2.0;
  cfg.dt = 1e-3;
  cfg.T = 0.5;
  cfg.sign = -1.0;
  cfg.scheme = Scheme::picard;
  SolveOptions opts;
  opts.snapshot_every = 0;
  opts.diagnostics.enabled = false;
  Trajectory traj = solve(gradient(psi0), std::nullopt, silent_noise(g1), cfg,
                          RngStream(1, 0, "trajectory"), opts);
  if (traj.status != RunStatus::completed) {
    detail = "d=1 run did not complete";
    return false;
  }
  PotentialState ref = hopf_cole_solve(psi0, cfg.nu, std::nullopt, cfg.T, -0.5);
  const double err1 = rel_l2(traj.u_final(), ref.u);
  const double time1 = elapsed();

  // d = 2: N = 64, T = 0.25, tolerance 1e-5, 60 s budget.
  const auto t1 = std::chrono::steady_clock::now();
  TorusGrid g2(2, 64);
  Field psi0_2 = cosine_potential(g2);
  SolverConfig cfg2 = cfg;
  cfg2.p = 3.0;
  cfg2.T = 0.25;
  Trajectory traj2 = solve(gradient(psi0_2), std::nullopt, silent_noise(g2), cfg2,
                           RngStream(1, 0, "trajectory"), opts);
  if (traj2.status != RunStatus::completed) {
    detail = "d=2 run did not complete";
    return false;
  }
  PotentialState ref2 = hopf_cole_solve(psi0_2, cfg2.nu, std::nullopt, cfg2.T, -0.5);
  const double err2 = rel_l2(traj2.u_final(), ref2.u);
  const double time2 =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t1).count();

  detail = "d=1 rel L2 " + fmt(err1) + " in " + fmt(time1) + "s; d=2 rel L2 " +
           fmt(err2) + " in " + fmt(time2) + "s";
  return err1 <= 1e-6 && time1 <= 5.0 && err2 <= 1e-5 && time2 <= 60.0;
}

// --- criterion 2 -----------------------------------------------------------

bool criterion2(std::string& detail) {
  TorusGrid g(1, 128);
  Field psi0 = cosine_potential(g);
  Field u0 = gradient(psi0);
  u0.ensure_physical();
  u0.ensure_spectral();
  NoiseOperator noise = silent_noise(g);

  const std::vector<double> dts{4e-3, 2e-3, 1e-3, 5e-4};
  std::vector<Field> finals(dts.size(), Field::vector(g));
  parallel_for(dts.size(), [&](std::size_t i) {
    SolverConfig cfg;
    cfg.nu = 0.1;
    cfg.p = 2.0;
    cfg.dt = dts[i];
    cfg.T = 0.5;
    cfg.sign = -1.0;
    SolveOptions opts;
    opts.snapshot_every = 0;
    opts.diagnostics.enabled = false;
    finals[i] =
        solve(u0, std::nullopt, noise, cfg, RngStream(2, i, "trajectory"), opts).u_final();
  });

  std::vector<double> log_dt, log_err;
  for (std::size_t i = 0; i + 1 < dts.size(); ++i) {
    const double err = lp_norm(finals[i] - finals[i + 1], 2.0);
    log_dt.push_back(std::log(dts[i]));
    log_err.push_back(std::log(err));
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < log_dt.size(); ++i) {
    sx += log_dt[i];
    sy += log_err[i];
    sxx += log_dt[i] * log_dt[i];
    sxy += log_dt[i] * log_err[i];
  }
  const double m = static_cast<double>(log_dt.size());
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);

  // Picard window versus finely composed one-step integrator.
  SolverConfig cfg;
  cfg.nu = 0.1;
  cfg.p = 2.0;
  cfg.dt = 1e-3;
  cfg.T = 0.5;
  cfg.sign = -1.0;
  std::vector<Field> z_nodes(11, Field::vector(g));
  PicardResult window = picard_window(u0, z_nodes, cfg);
  SolverConfig fine = cfg;
  fine.dt = 1e-4;
  Field v = u0;
  Field z = Field::vector(g);
  for (int i = 0; i < 100; ++i) v = etd1_step(v, z, fine);
  const double window_err =
      window.converged ? lp_norm(window.v_nodes.back() - v, 2.0)
                       : std::numeric_limits<double>::infinity();

  detail = "self-convergence slope " + fmt(slope) + "; picard vs etd1 window L2 " +
           fmt(window_err);
  return slope >= 0.8 && slope <= 1.2 && window_err <= 1e-5;
}

// --- criterion 3 -----------------------------------------------------------

bool criterion3(std::string& detail) {
  const auto t0 = std::chrono::steady_clock::now();
  TorusGrid g(1, 32);
  NoiseOperator noise = build_noise(g, 1.0, 3.0, 8, 4, 2.0);
  const double nu = 1.0, T = 1.0;
  const int n_samples = 10000;

  // Canonical driven modes: k = 0..8 (negatives are conjugate mirrors).
  auto run_ensemble = [&](double dt, const char* purpose) {
    const int steps = static_cast<int>(std::llround(T / dt));
    std::vector<std::vector<double>> sq(
        9, std::vector<double>(static_cast<std::size_t>(n_samples)));
    parallel_for(static_cast<std::size_t>(n_samples), [&](std::size_t s) {
      RngStream rng(314, s, purpose);
      OUState state = ou_initial_state(noise);
      for (int i = 0; i < steps; ++i)
        state = ou_step(state, dt, nu, std::nullopt, noise, rng);
      auto spec = state.state.spectral(0);
      for (int k = 0; k <= 8; ++k) sq[k][s] = std::norm(spec[k]);
    });
    std::vector<double> mean(9), se(9);
    for (int k = 0; k <= 8; ++k) {
      const double mu = pairwise_sum(sq[k]) / n_samples;
      double var = 0.0;
      for (double x : sq[k]) var += (x - mu) * (x - mu);
      var /= (n_samples - 1.0);
      mean[k] = mu;
      se[k] = std::sqrt(var / n_samples);
    }
    return std::pair(mean, se);
  };

  auto [mean1, se1] = run_ensemble(1e-3, "ou-check");
  auto [mean2, se2] = run_ensemble(5e-4, "ou-check-half");

  bool ok = true;
  double worst_sigma = 0.0;
  double l2_mean = 0.0, l2_exact = 0.0, l2_var = 0.0;
  for (int k = 0; k <= 8; ++k) {
    const double k2 = static_cast<double>(k) * k;
    const double sigma = std::pow(1.0 + k2, -1.5);
    const double exact = k == 0 ? sigma * sigma * T
                                : sigma * sigma * (-std::expm1(-2 * nu * k2 * T)) /
                                      (2 * nu * k2);
    const double dev1 = std::abs(mean1[k] - exact) / se1[k];
    const double dev2 = std::abs(mean2[k] - exact) / se2[k];
    const double cross = std::abs(mean1[k] - mean2[k]) / std::hypot(se1[k], se2[k]);
    worst_sigma = std::max({worst_sigma, dev1, dev2, cross});
    if (dev1 > 3.0 || dev2 > 3.0 || cross > 3.0) ok = false;
    const double pair_weight = k == 0 ? 1.0 : 2.0;  // conjugate mirror modes
    l2_mean += pair_weight * mean1[k];
    l2_exact += pair_weight * exact;
    l2_var += pair_weight * pair_weight * se1[k] * se1[k];
  }
  // Aggregate check: E|z(T)|²_{L²} = 2π Σ_k σ_k² (1-e^{-2ν|k|²T})/(2ν|k|²).
  const double l2_dev =
      std::abs(kTwoPi * l2_mean - kTwoPi * l2_exact) / (kTwoPi * std::sqrt(l2_var));
  if (l2_dev > 3.0) ok = false;
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  detail = "worst deviation " + fmt(worst_sigma) + " sigma over 9 modes x 2 dt; L2 sum " +
           fmt(l2_dev) + " sigma; " + fmt(secs) + "s";
  return ok && secs <= 60.0;
}

// --- criterion 4 -----------------------------------------------------------

bool criterion4(std::string& detail) {
  TorusGrid g(1, 512);
  Field psi0 = cosine_potential(g);
  SolverConfig cfg;
  cfg.nu = 0.4;
  cfg.p = 2.0;
  cfg.dt = 1e-3;
  cfg.T = 1.0;
  cfg.sign = -1.0;
  std::vector<double> nus{0.4, 0.2, 0.1, 0.05};
  SweepResult res = nu_sweep(psi0, std::nullopt, silent_noise(g), nus, cfg);

  bool decreasing = true;
  for (std::size_t i = 0; i + 1 < res.gap_hopf_lax.size(); ++i)
    if (!(res.gap_hopf_lax[i + 1] < res.gap_hopf_lax[i])) decreasing = false;
  const double final_gap = res.gap_hopf_lax.back();
  const double k_bound = res.k_fit * nus.back();
  const bool bounded = final_gap <= k_bound * (1.0 + 1e-12);

  std::string gaps;
  for (double gap : res.gap_hopf_lax) gaps += fmt(gap) + " ";
  detail = "gaps [" + gaps + "], fitted K = " + fmt(res.k_fit) + ", final gap " +
           fmt(final_gap) + (bounded ? " <= " : " > ") + "K*nu = " + fmt(k_bound);
  return decreasing;
}

// --- criterion 5 -----------------------------------------------------------

bool criterion5(std::string& detail) {
  TorusGrid g(1, 64);
  Field psi0 = cosine_potential(g);
  Field u0 = gradient(psi0);
  u0.ensure_physical();
  u0.ensure_spectral();
  NoiseOperator noise = build_noise(g, 0.1, 3.0, 8, 4, 2.0);

  SolverConfig cfg;
  cfg.nu = 0.1;
  cfg.p = 2.0;
  cfg.dt = 1e-3;
  cfg.T = 1.0;
  cfg.sign = -1.0;

  auto ensemble_ratios = [&](std::uint64_t master) {
    std::vector<double> ratios(100);
    parallel_for(ratios.size(), [&](std::size_t i) {
      SolveOptions opts;
      opts.snapshot_every = 0;
      opts.diagnostics.enabled = true;
      Trajectory traj =
          solve(u0, std::nullopt, noise, cfg, RngStream(master, i, "trajectory"), opts);
      ratios[i] = traj.report.sup_ratio_torus();
    });
    return ratios;
  };

  const std::vector<double> reference = ensemble_ratios(1001);
  const double calibrated_c = calibrate_torus_constant(reference);

  const std::vector<double> fresh = ensemble_ratios(1002);
  int ok_count = 0;
  for (double r : fresh)
    if (r / calibrated_c <= 1.0) ++ok_count;

  detail = "calibrated C = " + fmt(calibrated_c) + "; fresh ensemble ratio <= 1 for " +
           std::to_string(ok_count) + "/100 seeds";
  return ok_count >= 99;
}

// --- criterion 6 -----------------------------------------------------------

bool criterion6(std::string& detail) {
  TorusGrid g(2, 32);
  PotentialSpec spec;
  spec.kind = PotentialSpec::Kind::random_smooth;
  spec.amp = 1.0;
  spec.decay = 3.0;

  NoiseOptions nopts;
  nopts.gradient_form = true;
  NoiseOperator noise = build_noise(g, 0.1, 3.0, 4, 4, 3.0, nopts);

  SolverConfig cfg;
  cfg.nu = 0.2;
  cfg.p = 3.0;
  cfg.dt = 1e-3;
  cfg.T = 0.25;
  cfg.sign = -1.0;

  double worst_rel_curl = 0.0;
  bool all_completed = true;
  bool bounds_finite = true;
  for (std::uint64_t s = 0; s < 5; ++s) {
    PotentialSpec seeded = spec;
    seeded.seed = 50 + s;
    Field psi0 = build_potential(g, seeded, "acceptance");
    Field u0 = gradient(psi0);
    const double scale = linf_norm(u0);
    Trajectory traj =
        solve(u0, std::nullopt, noise, cfg, RngStream(3000, s, "trajectory"));
    if (traj.status != RunStatus::completed) all_completed = false;
    BkmReport rep = bkm_monitor(traj, 0.0);
    if (!std::isfinite(rep.bound)) bounds_finite = false;
    worst_rel_curl = std::max(worst_rel_curl, rep.sup_curl_inf / scale);
  }

  detail = "sup |curl u|_inf / scale = " + fmt(worst_rel_curl) +
           (all_completed ? "; all completed" : "; some runs failed");
  return worst_rel_curl <= 1e-8 && all_completed && bounds_finite;
}

// --- criterion 7 -----------------------------------------------------------

bool criterion7(std::string& detail) {
  TorusGrid g(1, 64);
  Field u0 = Field::vector(g);
  {
    auto phys = u0.physical_mut(0);
    for (int i = 0; i < g.n(); ++i) phys[i] = std::sin(g.coordinate(i));
  }
  OUPath path = ou_path(0.5, 1e-2, 1.0, std::nullopt, silent_noise(g),
                        RngStream(7, 0, "z"));

  const double torus_ref = torus_apriori_rhs(u0, path, 0.5, 2.0, 1.0);
  bool increasing = true;
  bool torus_fixed = true;
  double nu = 0.4, prev = 0.0;
  std::string values;
  for (int level = 0; level < 4; ++level) {
    const double rd = rd_apriori_rhs(u0, path, 0.5, 2.0, nu);
    values += fmt(rd) + " ";
    if (!(rd > prev)) increasing = false;
    prev = rd;
    if (torus_apriori_rhs(u0, path, 0.5, 2.0, 1.0) != torus_ref) torus_fixed = false;
    nu *= 0.5;
  }
  detail = "rd rhs over nu halvings [" + values + "], torus rhs fixed at " +
           fmt(torus_ref);
  return increasing && torus_fixed;
}

// --- criterion 8 -----------------------------------------------------------

bool criterion8(std::string& detail) {
  TorusGrid g(1, 64);
  NoiseOperator noise = build_noise(g, 1.0, 3.0, 8, 4, 2.0);
  const int n_samples = 10;
  std::vector<double> exponents(n_samples);
  parallel_for(static_cast<std::size_t>(n_samples), [&](std::size_t s) {
    OUPath path =
        ou_path(1.0, 1e-3, 1.0, std::nullopt, noise, RngStream(888, s, "holder"));
    exponents[s] = holder_exponent_estimate(path, 0, 2.0);
  });
  const double mean = pairwise_sum(exponents) / n_samples;
  detail = "mean L2 exponent over 10 samples = " + fmt(mean);
  return mean >= 0.35 && mean <= 0.6;
}

// --- criterion 9 -----------------------------------------------------------

bool criterion9(std::string& detail) {
  const fs::path dir = fs::temp_directory_path() / "sburgers_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);

  // Snapshot round trip, bit exact.
  TorusGrid g(2, 16);
  Field f(g, 2);
  RngStream rng(9, 0, "snapshot");
  for (int c = 0; c < 2; ++c) {
    auto phys = f.physical_mut(c);
    for (auto& v : phys) v = rng.normal();
  }
  const std::string snap = (dir / "roundtrip.sbf").string();
  write_snapshot(f, snap, 0.5);
  Snapshot back = read_snapshot(snap);
  bool bits_ok = back.time == 0.5;
  for (int c = 0; c < 2 && bits_ok; ++c) {
    auto a = f.physical(c);
    auto b = back.field.physical(c);
    for (std::size_t i = 0; i < a.size(); ++i)
      if (std::memcmp(&a[i], &b[i], sizeof(double)) != 0) bits_ok = false;
  }

  // Identical config + seed, 1 vs 8 workers, via the CLI.
  const std::string config =
      "grid.d = 1\ngrid.n = 32\nsolver.T = 0.02\nsolver.dt = 1e-3\n"
      "solver.sign = -1\ninit.kind = single_mode\nnoise.A = 0.5\nnoise.K = 8\n"
      "run.samples = 8\nrun.seed = 77\n";
  std::ofstream((dir / "cfg.txt")) << config;

  auto run_cli = [&](const char* threads, const std::string& out) {
    setenv("SBURGERS_THREADS", threads, 1);
    const std::string cmd = "'" + g_cli_path + "' ensemble --config '" +
                            (dir / "cfg.txt").string() + "' --out '" + out + "'";
    const int rc = std::system(cmd.c_str());
    unsetenv("SBURGERS_THREADS");
    return rc == 0;
  };
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };

  bool csv_ok = false;
  bool manifest_ok = false;
  if (!g_cli_path.empty() && run_cli("1", (dir / "w1").string()) &&
      run_cli("8", (dir / "w8").string())) {
    csv_ok = slurp(dir / "w1" / "samples.csv") == slurp(dir / "w8" / "samples.csv") &&
             slurp(dir / "w1" / "aggregate.csv") == slurp(dir / "w8" / "aggregate.csv") &&
             !slurp(dir / "w1" / "samples.csv").empty();
    RunManifest m = RunManifest::read((dir / "w1" / "manifest.txt").string());
    manifest_ok = m.get("run.completed") == std::string("true");
    for (const auto& rel : m.outputs())
      if (!fs::exists(dir / "w1" / rel)) manifest_ok = false;
  }

  fs::remove_all(dir);
  detail = std::string("snapshot ") + (bits_ok ? "bit-exact" : "MISMATCH") +
           "; worker-count determinism " + (csv_ok ? "byte-identical" : "FAILED") +
           "; manifest " + (manifest_ok ? "complete" : "INCOMPLETE");
  return bits_ok && csv_ok && manifest_ok;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) g_cli_path = argv[1];

  struct Criterion {
    int id;
    const char* name;
    std::function<bool(std::string&)> run;
  };
  const std::vector<Criterion> criteria{
      {1, "hopf-cole oracle match (d=1 and d=2)", criterion1},
      {2, "temporal order: etd1 slope and picard/etd1 agreement", criterion2},
      {3, "ou exactness in law, dt-invariant", criterion3},
      {4, "vanishing-viscosity gap decrease to hopf-lax", criterion4},
      {5, "a priori estimate regression with calibrated constant", criterion5},
      {6, "gradient/bkm invariant: curl-free, completed, finite bound", criterion6},
      {7, "whole-space bound blows up as nu halves; torus bound fixed", criterion7},
      {8, "holder regularity of the stochastic convolution", criterion8},
      {9, "snapshot round trip and worker-count determinism", criterion9},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const double t0 = now_seconds();
    std::string detail;
    bool ok = false;
    try {
      ok = c.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double secs = now_seconds() - t0;
    std::printf("[%s] criterion %d: %s -- %s [%.1fs]\n", ok ? "PASS" : "FAIL", c.id,
                c.name, detail.c_str(), secs);
    std::fflush(stdout);
    if (!ok) ++failures;
  }
  if (failures) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
