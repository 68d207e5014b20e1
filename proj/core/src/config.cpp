#include "sburgers/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "sburgers/rng.hpp"
#include "sburgers/spectral.hpp"

namespace sburgers {
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

struct RawEntry {
  std::string value;
  int line;
};

double parse_double(const std::string& v, const std::string& key, int line) {
  if (v == "inf" || v == "+inf") return std::numeric_limits<double>::infinity();
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("expected a real number, got '" + v + "'", line, key);
  }
}

long long parse_int(const std::string& v, const std::string& key, int line) {
  try {
    std::size_t pos = 0;
    const long long x = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("expected an integer, got '" + v + "'", line, key);
  }
}

bool parse_bool(const std::string& v, const std::string& key, int line) {
  if (v == "true" || v == "on" || v == "1") return true;
  if (v == "false" || v == "off" || v == "0") return false;
  throw ConfigError("expected true/false, got '" + v + "'", line, key);
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

std::array<int, 3> parse_mode(const std::string& v, const std::string& key, int line) {
  std::array<int, 3> k{0, 0, 0};
  const auto items = split_list(v);
  if (items.empty() || items.size() > 3)
    throw ConfigError("expected 1-3 comma-separated integers", line, key);
  for (std::size_t i = 0; i < items.size(); ++i)
    k[i] = static_cast<int>(parse_int(items[i], key, line));
  return k;
}

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string format_list(const std::vector<double>& vs) {
  std::string out;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) out += ",";
    out += format_double(vs[i]);
  }
  return out;
}

std::string format_mode(const std::array<int, 3>& k, int d) {
  std::string out;
  for (int i = 0; i < d; ++i) {
    if (i) out += ",";
    out += std::to_string(k[i]);
  }
  return out;
}

class KeyReader {
public:
  KeyReader(std::map<std::string, RawEntry> entries) : entries_(std::move(entries)) {}

  bool has(const std::string& key) {
    consumed_.insert(key);
    return entries_.count(key) > 0;
  }
  std::string raw(const std::string& key) { return entries_.at(key).value; }
  int line(const std::string& key) { return entries_.at(key).line; }

  void read(const std::string& key, double& out) {
    if (has(key)) out = parse_double(raw(key), key, line(key));
  }
  void read(const std::string& key, int& out) {
    if (has(key)) out = static_cast<int>(parse_int(raw(key), key, line(key)));
  }
  void read(const std::string& key, std::uint64_t& out) {
    if (has(key)) out = static_cast<std::uint64_t>(parse_int(raw(key), key, line(key)));
  }
  void read(const std::string& key, bool& out) {
    if (has(key)) out = parse_bool(raw(key), key, line(key));
  }
  void read(const std::string& key, std::string& out) {
    if (has(key)) out = raw(key);
  }
  void read(const std::string& key, std::array<int, 3>& out) {
    if (has(key)) out = parse_mode(raw(key), key, line(key));
  }
  void read_list(const std::string& key, std::vector<double>& out) {
    if (!has(key)) return;
    out.clear();
    for (const auto& item : split_list(raw(key)))
      out.push_back(parse_double(item, key, line(key)));
  }
  void read_list(const std::string& key, std::vector<int>& out) {
    if (!has(key)) return;
    out.clear();
    for (const auto& item : split_list(raw(key)))
      out.push_back(static_cast<int>(parse_int(item, key, line(key))));
  }

  void check_all_consumed() const {
    for (const auto& [key, entry] : entries_)
      if (!consumed_.count(key))
        throw ConfigError("unknown key", entry.line, key);
  }

private:
  std::map<std::string, RawEntry> entries_;
  std::set<std::string> consumed_;
};

PotentialSpec read_potential(KeyReader& r, const std::string& prefix) {
  PotentialSpec spec;
  std::string kind = "single_mode";
  r.read(prefix + "_kind", kind);
  if (kind == "single_mode")
    spec.kind = PotentialSpec::Kind::single_mode;
  else if (kind == "random_smooth")
    spec.kind = PotentialSpec::Kind::random_smooth;
  else
    throw ConfigError("expected single_mode|random_smooth, got '" + kind + "'",
                      r.has(prefix + "_kind") ? r.line(prefix + "_kind") : 0,
                      prefix + "_kind");
  r.read(prefix + "_k", spec.k);
  r.read(prefix + "_amp", spec.amp);
  r.read(prefix + "_seed", spec.seed);
  r.read(prefix + "_decay", spec.decay);
  return spec;
}

void validate(const ExperimentConfig& cfg, std::vector<std::string>& warnings,
              bool noise_configured) {
  auto fail = [](const std::string& field, const std::string& msg) {
    throw ConfigError(msg, 0, field);
  };

  if (cfg.d < 1 || cfg.d > 3) fail("grid.d", "dimension must be 1, 2 or 3");
  if (cfg.n < 4 || cfg.n % 2 != 0) fail("grid.n", "points per axis must be even and >= 4");
  if (!(cfg.period > 0.0)) fail("grid.period", "period must be positive");

  if (!(cfg.solver.nu > 0.0)) fail("solver.nu", "viscosity must be positive");
  if (!(cfg.solver.p > cfg.d))
    fail("solver.p", "constraint p > d violated: p = " + format_double(cfg.solver.p) +
                         ", d = " + std::to_string(cfg.d));
  if (!(cfg.solver.dt > 0.0)) fail("solver.dt", "time step must be positive");
  if (!(cfg.solver.T > 0.0)) fail("solver.T", "horizon must be positive");
  if (!(cfg.solver.picard_tol > 0.0)) fail("solver.picard_tol", "tolerance must be positive");
  if (cfg.solver.picard_max_iters < 1)
    fail("solver.picard_max_iters", "must be at least 1");
  if (cfg.solver.blow_up_threshold < 0.0)
    fail("solver.blowup_threshold", "must be nonnegative (0 = automatic)");
  if (cfg.solver.sign != 1.0 && cfg.solver.sign != -1.0)
    fail("solver.sign", "must be +1 or -1");
  if (cfg.solver.picard_window < 0.0) fail("solver.picard_window", "must be nonnegative");

  if (cfg.noise.A < 0.0) fail("noise.A", "amplitude must be nonnegative");
  if (cfg.noise.K < 0) fail("noise.K", "rank cutoff must be nonnegative");
  if (3 * cfg.noise.K > cfg.n)
    fail("noise.K", "rank cutoff K = " + std::to_string(cfg.noise.K) +
                        " exceeds the dealiasing-safe range K <= n/3 with n = " +
                        std::to_string(cfg.n));
  if (cfg.noise.target_order < 0) fail("noise.target_order", "must be nonnegative");
  if (noise_configured && !(cfg.noise.gamma > cfg.noise.target_order + 0.5 * cfg.d))
    warnings.push_back(
        "noise.gamma = " + format_double(cfg.noise.gamma) +
        ": admissibility predicate gamma > target_order + d/2 = " +
        format_double(cfg.noise.target_order + 0.5 * cfg.d) +
        " fails; the noise does not stay bounded at the target order as K grows");

  if (cfg.init.component < 0 ||
      cfg.init.component >= (cfg.init.kind == InitSpec::Kind::zero ? 1 : cfg.d) + 1)
    fail("init.component", "component out of range");
  auto check_mode = [&](const std::array<int, 3>& k, const std::string& field) {
    for (int a = 0; a < cfg.d; ++a)
      if (std::abs(k[a]) > cfg.n / 2 - 1)
        fail(field, "mode exceeds the representable range |k| <= n/2 - 1");
  };
  if (cfg.init.kind == InitSpec::Kind::single_mode) check_mode(cfg.init.k, "init.k");
  if (cfg.init.kind == InitSpec::Kind::gradient &&
      cfg.init.potential.kind == PotentialSpec::Kind::single_mode)
    check_mode(cfg.init.potential.k, "init.potential_k");
  if (cfg.forcing.kind == ForcingSpec::Kind::gradient_potential &&
      cfg.forcing.potential.kind == PotentialSpec::Kind::single_mode)
    check_mode(cfg.forcing.potential.k, "forcing.potential_k");

  if (cfg.noise.gradient && cfg.noise.A > 0.0 &&
      cfg.forcing.kind != ForcingSpec::Kind::none &&
      cfg.forcing.kind != ForcingSpec::Kind::gradient_potential)
    fail("forcing.kind", "gradient-form noise requires gradient (or no) forcing");

  if (cfg.samples < 1) fail("run.samples", "must run at least one sample");
  if (cfg.snapshot_every < 0) fail("run.snapshot_every", "must be nonnegative");

  if (cfg.sweep_nu.size() >= 2)
    for (std::size_t i = 1; i < cfg.sweep_nu.size(); ++i)
      if (!(cfg.sweep_nu[i] < cfg.sweep_nu[i - 1]) || !(cfg.sweep_nu[i] > 0.0))
        fail("sweep.nu", "viscosities must be positive and strictly decreasing");
  if (!(cfg.estimates_C > 0.0)) fail("estimates.C", "must be positive");
  if (cfg.oracle_hc_steps < 0) fail("oracle.hc_steps", "must be nonnegative");
}

}  // namespace

ParsedConfig parse_config(std::string_view text) {
  std::map<std::string, RawEntry> entries;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    const auto hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;

    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw ConfigError("expected 'key = value'", line_no);
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty()) throw ConfigError("missing key before '='", line_no);
    if (value.empty()) throw ConfigError("missing value", line_no, key);
    if (entries.count(key))
      throw ConfigError("duplicate key (first at line " +
                            std::to_string(entries[key].line) + ")",
                        line_no, key);
    entries[key] = RawEntry{value, line_no};
  }

  KeyReader r(std::move(entries));
  ParsedConfig out;
  ExperimentConfig& cfg = out.config;

  r.read("grid.d", cfg.d);
  r.read("grid.n", cfg.n);
  r.read("grid.period", cfg.period);

  r.read("solver.nu", cfg.solver.nu);
  r.read("solver.p", cfg.solver.p);
  r.read("solver.dt", cfg.solver.dt);
  r.read("solver.T", cfg.solver.T);
  if (r.has("solver.scheme")) {
    const std::string s = r.raw("solver.scheme");
    if (s == "etd1")
      cfg.solver.scheme = Scheme::etd1;
    else if (s == "picard")
      cfg.solver.scheme = Scheme::picard;
    else
      throw ConfigError("expected etd1|picard, got '" + s + "'", r.line("solver.scheme"),
                        "solver.scheme");
  }
  r.read("solver.picard_tol", cfg.solver.picard_tol);
  r.read("solver.picard_max_iters", cfg.solver.picard_max_iters);
  r.read("solver.picard_window", cfg.solver.picard_window);
  if (r.has("solver.blowup_threshold")) {
    const std::string s = r.raw("solver.blowup_threshold");
    cfg.solver.blow_up_threshold =
        s == "auto" ? 0.0 : parse_double(s, "solver.blowup_threshold",
                                         r.line("solver.blowup_threshold"));
  }
  if (r.has("solver.sign")) {
    const std::string s = r.raw("solver.sign");
    if (s == "+1" || s == "1")
      cfg.solver.sign = 1.0;
    else if (s == "-1")
      cfg.solver.sign = -1.0;
    else
      throw ConfigError("expected +1 or -1, got '" + s + "'", r.line("solver.sign"),
                        "solver.sign");
  }
  r.read("solver.dealias", cfg.solver.dealias);

  if (r.has("init.kind")) {
    const std::string s = r.raw("init.kind");
    if (s == "zero")
      cfg.init.kind = InitSpec::Kind::zero;
    else if (s == "single_mode")
      cfg.init.kind = InitSpec::Kind::single_mode;
    else if (s == "gradient")
      cfg.init.kind = InitSpec::Kind::gradient;
    else if (s == "random_smooth")
      cfg.init.kind = InitSpec::Kind::random_smooth;
    else
      throw ConfigError("expected zero|single_mode|gradient|random_smooth, got '" + s + "'",
                        r.line("init.kind"), "init.kind");
  }
  r.read("init.k", cfg.init.k);
  r.read("init.amp", cfg.init.amp);
  r.read("init.component", cfg.init.component);
  r.read("init.seed", cfg.init.seed);
  r.read("init.decay", cfg.init.decay);
  cfg.init.potential = read_potential(r, "init.potential");

  if (r.has("forcing.kind")) {
    const std::string s = r.raw("forcing.kind");
    if (s == "none")
      cfg.forcing.kind = ForcingSpec::Kind::none;
    else if (s == "gradient_potential")
      cfg.forcing.kind = ForcingSpec::Kind::gradient_potential;
    else
      throw ConfigError("expected none|gradient_potential, got '" + s + "'",
                        r.line("forcing.kind"), "forcing.kind");
  }
  cfg.forcing.potential = read_potential(r, "forcing.potential");

  r.read("noise.A", cfg.noise.A);
  r.read("noise.gamma", cfg.noise.gamma);
  r.read("noise.K", cfg.noise.K);
  r.read("noise.target_order", cfg.noise.target_order);
  r.read("noise.gradient", cfg.noise.gradient);
  r.read("noise.include_mean", cfg.noise.include_mean);

  r.read("run.seed", cfg.seed);
  r.read("run.samples", cfg.samples);
  r.read("run.out_dir", cfg.out_dir);
  r.read("run.snapshot_every", cfg.snapshot_every);

  r.read_list("sweep.nu", cfg.sweep_nu);
  r.read("estimates.C", cfg.estimates_C);
  r.read("estimates.C_rd", cfg.estimates_C_rd);
  r.read("estimates.C_bkm", cfg.estimates_C_bkm);
  r.read_list("convergence.dts", cfg.convergence_dts);
  r.read_list("convergence.ns", cfg.convergence_ns);
  r.read("oracle.hc_steps", cfg.oracle_hc_steps);
  if (r.has("oracle.hj_factor")) {
    const std::string s = r.raw("oracle.hj_factor");
    if (s != "auto")
      cfg.hj_factor = parse_double(s, "oracle.hj_factor", r.line("oracle.hj_factor"));
  }

  const bool noise_configured =
      cfg.noise.A > 0.0 || r.has("noise.gamma") || r.has("noise.target_order");
  r.check_all_consumed();
  validate(cfg, out.warnings, noise_configured);
  return out;
}

ParsedConfig parse_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

TorusGrid ExperimentConfig::make_grid() const { return TorusGrid(d, n, period); }

Field build_potential(const TorusGrid& grid, const PotentialSpec& spec,
                      std::string_view rng_purpose) {
  Field psi = Field::scalar(grid);
  if (spec.kind == PotentialSpec::Kind::single_mode) {
    auto phys = psi.physical_mut(0);
    for (std::size_t flat = 0; flat < grid.total_points(); ++flat) {
      auto idx = grid.unflatten(flat);
      double phase = 0.0;
      for (int a = 0; a < grid.dim(); ++a)
        phase += spec.k[a] * grid.wavenumber_scale() * grid.coordinate(idx[a]);
      phys[flat] = spec.amp * std::cos(phase);
    }
    return psi;
  }

  // random_smooth: zero-mean coefficients with power-law decay, dealias-safe.
  RngStream rng(spec.seed, 0, rng_purpose);
  auto spec_vals = psi.spectral_mut(0);
  const int n = grid.n();
  for_each_mode(grid, [&](std::size_t flat, const WaveIndex& w) {
    const std::array<int, 3> k = w.k;
    bool canonical = false;
    bool zero = true;
    for (int a = 0; a < grid.dim(); ++a) {
      if (k[a] != 0) zero = false;
      if (3 * std::abs(k[a]) > n) return;
    }
    for (int a = 0; a < grid.dim(); ++a) {
      if (k[a] > 0) {
        canonical = true;
        break;
      }
      if (k[a] < 0) break;
    }
    if (zero || !canonical) return;
    const double mag = spec.amp * std::pow(1.0 + w.k_squared, -0.5 * spec.decay);
    const std::complex<double> coeff(mag * rng.normal() * std::sqrt(0.5),
                                     mag * rng.normal() * std::sqrt(0.5));
    spec_vals[flat] = coeff;
    std::size_t mirror = 0;
    for (int a = 0; a < grid.dim(); ++a) {
      auto idx = grid.unflatten(flat);
      mirror = mirror * n + static_cast<std::size_t>((n - idx[a]) % n);
    }
    spec_vals[mirror] = std::conj(coeff);
  });
  return psi;
}

Field ExperimentConfig::make_initial(const TorusGrid& grid) const {
  Field u0 = Field::vector(grid);
  switch (init.kind) {
    case InitSpec::Kind::zero:
      return u0;
    case InitSpec::Kind::single_mode: {
      if (init.component >= grid.dim())
        throw ConfigError("component out of range for d = " + std::to_string(grid.dim()),
                          0, "init.component");
      auto phys = u0.physical_mut(init.component);
      for (std::size_t flat = 0; flat < grid.total_points(); ++flat) {
        auto idx = grid.unflatten(flat);
        double phase = 0.0;
        for (int a = 0; a < grid.dim(); ++a)
          phase += init.k[a] * grid.wavenumber_scale() * grid.coordinate(idx[a]);
        phys[flat] = init.amp * std::sin(phase);
      }
      return u0;
    }
    case InitSpec::Kind::gradient:
      return gradient(make_initial_potential(grid));
    case InitSpec::Kind::random_smooth: {
      for (int c = 0; c < grid.dim(); ++c) {
        PotentialSpec s;
        s.kind = PotentialSpec::Kind::random_smooth;
        s.amp = init.amp;
        s.seed = init.seed + static_cast<std::uint64_t>(c);
        s.decay = init.decay;
        Field comp = build_potential(grid, s, "init");
        auto dst = u0.spectral_mut(c);
        auto src = comp.spectral(0);
        for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = src[i];
      }
      return u0;
    }
  }
  throw ConfigError("unsupported init kind", 0, "init.kind");
}

Field ExperimentConfig::make_initial_potential(const TorusGrid& grid) const {
  if (init.kind != InitSpec::Kind::gradient)
    throw ConfigError("initial data is not of gradient type", 0, "init.kind");
  return build_potential(grid, init.potential, "init-potential");
}

std::optional<Field> ExperimentConfig::make_forcing_potential(const TorusGrid& grid) const {
  if (forcing.kind == ForcingSpec::Kind::none) return std::nullopt;
  return build_potential(grid, forcing.potential, "forcing-potential");
}

std::optional<Field> ExperimentConfig::make_ou_forcing(const TorusGrid& grid) const {
  auto potential = make_forcing_potential(grid);
  if (!potential) return std::nullopt;
  if (noise.gradient) return potential;
  return gradient(*potential);
}

NoiseOperator ExperimentConfig::make_noise(const TorusGrid& grid) const {
  NoiseOptions options;
  options.gradient_form = noise.gradient;
  options.include_mean = noise.include_mean;
  return build_noise(grid, noise.A, noise.gamma, noise.K, noise.target_order, solver.p,
                     options);
}

std::string ExperimentConfig::serialize() const {
  std::map<std::string, std::string> kv;
  kv["grid.d"] = std::to_string(d);
  kv["grid.n"] = std::to_string(n);
  kv["grid.period"] = format_double(period);
  kv["solver.nu"] = format_double(solver.nu);
  kv["solver.p"] = format_double(solver.p);
  kv["solver.dt"] = format_double(solver.dt);
  kv["solver.T"] = format_double(solver.T);
  kv["solver.scheme"] = solver.scheme == Scheme::etd1 ? "etd1" : "picard";
  kv["solver.picard_tol"] = format_double(solver.picard_tol);
  kv["solver.picard_max_iters"] = std::to_string(solver.picard_max_iters);
  kv["solver.picard_window"] = format_double(solver.picard_window);
  kv["solver.blowup_threshold"] =
      solver.blow_up_threshold == 0.0 ? "auto" : format_double(solver.blow_up_threshold);
  kv["solver.sign"] = solver.sign > 0 ? "+1" : "-1";
  kv["solver.dealias"] = solver.dealias ? "true" : "false";

  const char* init_kind = "zero";
  if (init.kind == InitSpec::Kind::single_mode) init_kind = "single_mode";
  if (init.kind == InitSpec::Kind::gradient) init_kind = "gradient";
  if (init.kind == InitSpec::Kind::random_smooth) init_kind = "random_smooth";
  kv["init.kind"] = init_kind;
  kv["init.k"] = format_mode(init.k, d);
  kv["init.amp"] = format_double(init.amp);
  kv["init.component"] = std::to_string(init.component);
  kv["init.seed"] = std::to_string(init.seed);
  kv["init.decay"] = format_double(init.decay);
  kv["init.potential_kind"] =
      init.potential.kind == PotentialSpec::Kind::single_mode ? "single_mode"
                                                              : "random_smooth";
  kv["init.potential_k"] = format_mode(init.potential.k, d);
  kv["init.potential_amp"] = format_double(init.potential.amp);
  kv["init.potential_seed"] = std::to_string(init.potential.seed);
  kv["init.potential_decay"] = format_double(init.potential.decay);

  kv["forcing.kind"] =
      forcing.kind == ForcingSpec::Kind::none ? "none" : "gradient_potential";
  kv["forcing.potential_kind"] =
      forcing.potential.kind == PotentialSpec::Kind::single_mode ? "single_mode"
                                                                 : "random_smooth";
  kv["forcing.potential_k"] = format_mode(forcing.potential.k, d);
  kv["forcing.potential_amp"] = format_double(forcing.potential.amp);
  kv["forcing.potential_seed"] = std::to_string(forcing.potential.seed);
  kv["forcing.potential_decay"] = format_double(forcing.potential.decay);

  kv["noise.A"] = format_double(noise.A);
  kv["noise.gamma"] = format_double(noise.gamma);
  kv["noise.K"] = std::to_string(noise.K);
  kv["noise.target_order"] = std::to_string(noise.target_order);
  kv["noise.gradient"] = noise.gradient ? "true" : "false";
  kv["noise.include_mean"] = noise.include_mean ? "true" : "false";

  kv["run.seed"] = std::to_string(seed);
  kv["run.samples"] = std::to_string(samples);
  kv["run.out_dir"] = out_dir;
  kv["run.snapshot_every"] = std::to_string(snapshot_every);

  kv["sweep.nu"] = format_list(sweep_nu);
  kv["estimates.C"] = format_double(estimates_C);
  kv["estimates.C_rd"] = format_double(estimates_C_rd);
  kv["estimates.C_bkm"] = format_double(estimates_C_bkm);
  kv["convergence.dts"] = format_list(convergence_dts);
  if (!convergence_ns.empty()) {
    std::string ns;
    for (std::size_t i = 0; i < convergence_ns.size(); ++i) {
      if (i) ns += ",";
      ns += std::to_string(convergence_ns[i]);
    }
    kv["convergence.ns"] = ns;
  }
  kv["oracle.hc_steps"] = std::to_string(oracle_hc_steps);
  kv["oracle.hj_factor"] = std::isnan(hj_factor) ? "auto" : format_double(hj_factor);

  std::string out;
  for (const auto& [key, value] : kv) out += key + " = " + value + "\n";
  return out;
}

}  // namespace sburgers
