#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "sburgers/config.hpp"
#include "sburgers/manifest.hpp"
#include "sburgers/runner.hpp"
#include "sburgers/snapshot.hpp"
#include "sburgers/spectral.hpp"
#include "test_util.hpp"

using namespace sburgers;
using namespace sburgers::testutil;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& tag) {
  fs::path dir = fs::temp_directory_path() / ("sburgers_test_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("config: defaults and validation") {
  ParsedConfig parsed = parse_config("grid.d = 1\ngrid.n = 64\nsolver.nu = 0.1\n");
  CHECK(parsed.config.d == 1);
  CHECK(parsed.config.n == 64);
  CHECK(parsed.config.solver.p == 2.0);
  CHECK(parsed.config.solver.scheme == Scheme::etd1);
  CHECK(parsed.config.solver.sign == 1.0);
  CHECK(parsed.config.samples == 1);
  CHECK(parsed.warnings.empty());

  // Comments and blank lines are fine; inline comments too.
  ParsedConfig c2 = parse_config("# header\n\ngrid.d = 2  # torus dim\nsolver.p = 3\n");
  CHECK(c2.config.d == 2);
}

TEST_CASE("config: rejects unknown keys with the line number") {
  try {
    parse_config("grid.d = 1\nsolvr.nu = 0.1\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.line() == 2);
    CHECK(e.field() == "solvr.nu");
  }
}

TEST_CASE("config: constraint p > d is named") {
  try {
    parse_config("grid.d = 1\nsolver.p = 1\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.field() == "solver.p");
    CHECK(std::string(e.what()).find("p > d") != std::string::npos);
  }
  CHECK_NOTHROW(parse_config("grid.d = 1\nsolver.p = 2\n"));
  CHECK_THROWS_AS(parse_config("grid.d = 2\nsolver.p = 2\n"), ConfigError);
}

TEST_CASE("config: admissibility warning is recorded, not fatal") {
  ParsedConfig parsed = parse_config(
      "grid.d = 1\nnoise.A = 1.0\nnoise.gamma = 4.0\nnoise.target_order = 4\n");
  REQUIRE(parsed.warnings.size() == 1);
  CHECK(parsed.warnings[0].find("noise.gamma") != std::string::npos);
  CHECK(parsed.warnings[0].find("4.5") != std::string::npos);

  ParsedConfig ok = parse_config(
      "grid.d = 1\nnoise.A = 1.0\nnoise.gamma = 4.6\nnoise.target_order = 4\n");
  CHECK(ok.warnings.empty());
}

TEST_CASE("config: malformed input") {
  CHECK_THROWS_AS(parse_config("grid.d 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("grid.d =\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("grid.d = one\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("grid.d = 1\ngrid.d = 2\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("solver.scheme = rk4\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("solver.sign = 2\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("grid.n = 63\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("noise.K = 30\n"), ConfigError);  // K > n/3 with n=64
  CHECK_THROWS_AS(parse_config("init.kind = single_mode\ninit.k = 40\n"), ConfigError);
}

TEST_CASE("config: special solver values") {
  ParsedConfig inf_cfg = parse_config("solver.blowup_threshold = inf\n");
  CHECK(std::isinf(inf_cfg.config.solver.blow_up_threshold));
  ParsedConfig auto_cfg = parse_config("solver.blowup_threshold = auto\n");
  CHECK(auto_cfg.config.solver.blow_up_threshold == 0.0);
  ParsedConfig picard = parse_config("solver.scheme = picard\nsolver.sign = -1\n");
  CHECK(picard.config.solver.scheme == Scheme::picard);
  CHECK(picard.config.solver.sign == -1.0);
}

TEST_CASE("config: serialize/parse round trip") {
  ParsedConfig first = parse_config(
      "grid.d = 2\ngrid.n = 32\nsolver.p = 3\nsweep.nu = 0.4,0.2,0.1\n"
      "init.kind = gradient\ninit.potential_kind = random_smooth\n"
      "noise.gradient = true\nrun.samples = 4\n");
  const std::string echo = first.config.serialize();
  ParsedConfig second = parse_config(echo);
  CHECK(second.config.serialize() == echo);
  CHECK(second.config.sweep_nu == first.config.sweep_nu);
  CHECK(second.config.noise.gradient);
}

TEST_CASE("config: field builders") {
  ParsedConfig parsed = parse_config(
      "grid.d = 1\ngrid.n = 64\ninit.kind = gradient\n"
      "init.potential_kind = single_mode\ninit.potential_k = 1\n");
  const TorusGrid grid = parsed.config.make_grid();
  Field u0 = parsed.config.make_initial(grid);
  // ψ0 = cos x so u0 = -sin x.
  Field expected = from_function(grid, 1, [](int, const auto& x) { return -std::sin(x[0]); });
  CHECK(max_abs_diff(u0, expected) <= 1e-12);

  ParsedConfig rnd = parse_config(
      "grid.d = 2\ngrid.n = 32\nsolver.p = 3\ninit.kind = random_smooth\ninit.seed = 5\n");
  const TorusGrid g2 = rnd.config.make_grid();
  Field a = rnd.config.make_initial(g2);
  Field b = rnd.config.make_initial(g2);
  CHECK(max_abs_diff(a, b) == 0.0);  // same seed, same field
  CHECK(max_abs(a) > 0.0);
  CHECK(conjugate_asymmetry(a) <= 1e-12);
}

TEST_CASE("snapshot: bit-exact round trip") {
  TorusGrid g(2, 16);
  Field f = from_function(g, 2, [](int c, const auto& x) {
    return std::sin(x[0] + c) + 0.25 * std::cos(2 * x[1]);
  });
  const fs::path dir = temp_dir("snap");
  const std::string path = (dir / "field.sbf").string();
  write_snapshot(f, path, 1.25);
  Snapshot back = read_snapshot(path);
  CHECK(back.time == 1.25);
  CHECK(back.field.grid().dim() == 2);
  CHECK(back.field.grid().n() == 16);
  CHECK(back.field.components() == 2);
  for (int c = 0; c < 2; ++c) {
    auto a = f.physical(c);
    auto b = back.field.physical(c);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
  }
  fs::remove_all(dir);
}

TEST_CASE("snapshot: n=8 sine is a 96-byte file") {
  TorusGrid g(1, 8);
  Field f = scalar_from(g, [](const auto& x) { return std::sin(x[0]); });
  const fs::path dir = temp_dir("snap96");
  const std::string path = (dir / "sine.sbf").string();
  write_snapshot(f, path);
  CHECK(fs::file_size(path) == 96);  // 32-byte header + 8 × f64
  fs::remove_all(dir);
}

TEST_CASE("snapshot: malformed files carry byte offsets") {
  TorusGrid g(1, 8);
  Field f = scalar_from(g, [](const auto& x) { return std::sin(x[0]); });
  const fs::path dir = temp_dir("snapbad");
  const std::string good = (dir / "good.sbf").string();
  write_snapshot(f, good);

  const std::string data = slurp(good);

  auto write_bytes = [&](const std::string& name, const std::string& bytes) {
    std::ofstream out(dir / name, std::ios::binary);
    out << bytes;
    return (dir / name).string();
  };

  const std::string truncated = write_bytes("trunc.sbf", data.substr(0, 48));
  try {
    read_snapshot(truncated);
    FAIL("expected FormatError");
  } catch (const FormatError& e) {
    CHECK(e.byte_offset() == 48);
  }

  std::string corrupted = data;
  corrupted[0] = 'X';
  const std::string badmagic = write_bytes("magic.sbf", corrupted);
  try {
    read_snapshot(badmagic);
    FAIL("expected FormatError");
  } catch (const FormatError& e) {
    CHECK(e.byte_offset() == 0);
  }

  const std::string trailing = write_bytes("trail.sbf", data + "zz");
  CHECK_THROWS_AS(read_snapshot(trailing), FormatError);
  fs::remove_all(dir);
}

TEST_CASE("manifest: write, atomic rewrite, read back") {
  const fs::path dir = temp_dir("manifest");
  RunManifest m;
  m.set("run.completed", "false");
  m.set("config.grid.d", 1);
  m.write((dir / "manifest.txt").string());

  m.set("run.completed", "true");
  m.add_output("diagnostics.csv");
  m.write((dir / "manifest.txt").string());

  RunManifest back = RunManifest::read((dir / "manifest.txt").string());
  CHECK(back.get("run.completed") == std::string("true"));
  CHECK(back.get("config.grid.d") == std::string("1"));
  REQUIRE(back.outputs().size() == 1);
  CHECK(back.outputs()[0] == "diagnostics.csv");
  CHECK(!fs::exists(dir / "manifest.txt.tmp"));
  fs::remove_all(dir);
}

TEST_CASE("simulate run: manifest lists exactly the files it wrote") {
  const fs::path dir = temp_dir("simrun");
  ParsedConfig parsed = parse_config(
      "grid.d = 1\ngrid.n = 32\nsolver.T = 0.01\nsolver.dt = 1e-3\n"
      "init.kind = single_mode\nrun.snapshot_every = 5\nrun.out_dir = " +
      (dir / "out").string() + "\n");
  CHECK(run_simulate(parsed.config) == 0);

  RunManifest m = RunManifest::read((dir / "out" / "manifest.txt").string());
  CHECK(m.get("run.completed") == std::string("true"));
  CHECK(m.get("sample.0.status") == std::string("completed"));
  CHECK(!m.outputs().empty());
  for (const auto& rel : m.outputs()) CHECK(fs::exists(dir / "out" / rel));

  const std::string header = slurp(dir / "out" / "diagnostics.csv").substr(0, 200);
  CHECK(header.rfind("t,lp_norm_u,sob1p_u,sob2p_z,grad_z_inf,curl_inf,div_inf,"
                     "apriori_torus_rhs,apriori_rd_rhs,ratio_torus,picard_iters\n",
                     0) == 0);
  fs::remove_all(dir);
}

TEST_CASE("blow-up is a reported result, not a failure exit") {
  const fs::path dir = temp_dir("blowup");
  ParsedConfig parsed = parse_config(
      "grid.d = 1\ngrid.n = 64\nsolver.T = 2.0\nsolver.dt = 1e-2\n"
      "solver.nu = 0.01\nsolver.sign = +1\ninit.kind = single_mode\n"
      "init.amp = 500\nrun.out_dir = " +
      (dir / "out").string() + "\n");
  CHECK(run_simulate(parsed.config) == 0);  // a result, not a crash
  RunManifest m = RunManifest::read((dir / "out" / "manifest.txt").string());
  CHECK(m.get("sample.0.status") == std::string("blow_up"));
  CHECK(m.get("run.completed") == std::string("true"));
  fs::remove_all(dir);
}

TEST_CASE("ensemble CSVs are byte-identical across worker counts") {
  const fs::path dir = temp_dir("det");
  auto run_with_threads = [&](const char* threads, const std::string& out) {
    setenv("SBURGERS_THREADS", threads, 1);
    ParsedConfig parsed = parse_config(
        "grid.d = 1\ngrid.n = 32\nsolver.T = 0.02\nsolver.dt = 1e-3\n"
        "solver.sign = -1\ninit.kind = single_mode\nnoise.A = 0.5\nnoise.K = 8\n"
        "run.samples = 6\nrun.seed = 99\nrun.out_dir = " +
        out + "\n");
    REQUIRE(run_ensemble(parsed.config) == 0);
    unsetenv("SBURGERS_THREADS");
  };
  run_with_threads("1", (dir / "serial").string());
  run_with_threads("8", (dir / "parallel").string());

  CHECK(slurp(dir / "serial" / "samples.csv") == slurp(dir / "parallel" / "samples.csv"));
  CHECK(slurp(dir / "serial" / "aggregate.csv") ==
        slurp(dir / "parallel" / "aggregate.csv"));
  CHECK(slurp(dir / "serial" / "samples.csv").find("completed") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("sweep-nu run writes per-nu tables and a fit summary") {
  const fs::path dir = temp_dir("sweeprun");
  ParsedConfig parsed = parse_config(
      "grid.d = 1\ngrid.n = 128\nsolver.T = 0.25\nsolver.dt = 1e-3\n"
      "solver.sign = -1\ninit.kind = gradient\ninit.potential_kind = single_mode\n"
      "sweep.nu = 0.4,0.2,0.1\nrun.out_dir = " +
      (dir / "out").string() + "\n");
  CHECK(run_sweep_nu(parsed.config) == 0);
  const std::string sweep = slurp(dir / "out" / "sweep.csv");
  CHECK(sweep.rfind("sample,nu,sup_h1p,gap_next,gap_hopf_lax,status\n", 0) == 0);
  CHECK(std::count(sweep.begin(), sweep.end(), '\n') == 4);  // header + 3 nu rows
  const std::string summary = slurp(dir / "out" / "summary.csv");
  CHECK(summary.find("0,") != std::string::npos);

  // Non-gradient initial data is rejected with the field path.
  ParsedConfig bad = parse_config("init.kind = zero\nrun.out_dir = " +
                                  (dir / "bad").string() + "\n");
  CHECK_THROWS_AS(run_sweep_nu(bad.config), ConfigError);
  fs::remove_all(dir);
}

TEST_CASE("oracle-compare run reports solver-versus-oracle errors") {
  const fs::path dir = temp_dir("oraclerun");
  ParsedConfig parsed = parse_config(
      "grid.d = 1\ngrid.n = 64\nsolver.T = 0.1\nsolver.dt = 1e-3\n"
      "solver.nu = 0.1\nsolver.sign = -1\nsolver.scheme = picard\n"
      "init.kind = gradient\ninit.potential_kind = single_mode\n"
      "run.out_dir = " +
      (dir / "out").string() + "\n");
  CHECK(run_oracle_compare(parsed.config) == 0);
  RunManifest m = RunManifest::read((dir / "out" / "manifest.txt").string());
  const double max_rel = std::stod(*m.get("result.max_rel_l2_u"));
  CHECK(max_rel <= 1e-6);
  const std::string csv = slurp(dir / "out" / "compare.csv");
  CHECK(csv.rfind("t,rel_l2_u,linf_diff_u,rel_l2_psi,linf_psi_hopf_lax\n", 0) == 0);

  ParsedConfig noisy = parse_config(
      "init.kind = gradient\nnoise.A = 0.1\nrun.out_dir = " + (dir / "bad").string() +
      "\n");
  CHECK_THROWS_AS(run_oracle_compare(noisy.config), ConfigError);
  fs::remove_all(dir);
}

TEST_CASE("convergence run fits a first-order dt slope") {
  const fs::path dir = temp_dir("convrun");
  ParsedConfig parsed = parse_config(
      "grid.d = 1\ngrid.n = 64\nsolver.T = 0.1\nsolver.dt = 1e-3\n"
      "solver.nu = 0.1\nsolver.sign = -1\ninit.kind = single_mode\n"
      "convergence.dts = 4e-3,2e-3,1e-3,5e-4\nconvergence.ns = 32,64\n"
      "run.out_dir = " +
      (dir / "out").string() + "\n");
  CHECK(run_convergence(parsed.config) == 0);
  RunManifest m = RunManifest::read((dir / "out" / "manifest.txt").string());
  const double slope = std::stod(*m.get("result.slope_dt"));
  CHECK(slope >= 0.8);
  CHECK(slope <= 1.2);
  const std::string csv = slurp(dir / "out" / "convergence.csv");
  CHECK(csv.find("slope_dt,") != std::string::npos);
  CHECK(csv.find("n,32,") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("pairwise sum is order-deterministic and accurate") {
  std::vector<double> xs(1001);
  for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = 1.0 / (1.0 + static_cast<double>(i));
  const double a = pairwise_sum(xs);
  const double b = pairwise_sum(xs);
  CHECK(a == b);
  double naive = 0.0;
  for (double x : xs) naive += x;
  CHECK(a == doctest::Approx(naive).epsilon(1e-12));
}
