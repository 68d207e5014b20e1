#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "sburgers/field.hpp"
#include "sburgers/noise.hpp"
#include "sburgers/solver.hpp"

namespace sburgers {

/// Scalar potential recipe shared by initial data and forcing.
struct PotentialSpec {
  enum class Kind { single_mode, random_smooth };
  Kind kind = Kind::single_mode;
  std::array<int, 3> k{1, 0, 0};  // single_mode: ψ = amp·cos(k·x)
  double amp = 1.0;
  std::uint64_t seed = 20;        // random_smooth
  double decay = 4.0;             // random_smooth spectral decay exponent
};

struct InitSpec {
  enum class Kind { zero, single_mode, gradient, random_smooth };
  Kind kind = Kind::zero;
  std::array<int, 3> k{1, 0, 0};  // single_mode: component gets amp·sin(k·x)
  double amp = 1.0;
  int component = 0;
  std::uint64_t seed = 20;
  double decay = 4.0;
  PotentialSpec potential;        // gradient kind: u0 = ∇ψ0
};

struct ForcingSpec {
  enum class Kind { none, gradient_potential };
  Kind kind = Kind::none;
  PotentialSpec potential;
};

struct NoiseSpec {
  double A = 0.0;
  double gamma = 3.0;
  int K = 8;
  int target_order = 4;
  bool gradient = false;
  bool include_mean = true;
};

/// Fully validated experiment description; one flat key-value file maps onto
/// exactly these fields (see README for the key list).
struct ExperimentConfig {
  int d = 1;
  int n = 64;
  double period = kTwoPi;

  SolverConfig solver;
  InitSpec init;
  ForcingSpec forcing;
  NoiseSpec noise;

  std::uint64_t seed = 1;
  int samples = 1;
  std::string out_dir = "out";
  int snapshot_every = 0;

  std::vector<double> sweep_nu{0.4, 0.2, 0.1, 0.05};
  double estimates_C = 1.0;
  double estimates_C_rd = 1.0;
  double estimates_C_bkm = 1.0;
  std::vector<double> convergence_dts{4e-3, 2e-3, 1e-3, 5e-4};
  std::vector<int> convergence_ns;
  int oracle_hc_steps = 0;
  double hj_factor = std::numeric_limits<double>::quiet_NaN();

  TorusGrid make_grid() const;
  Field make_initial(const TorusGrid& grid) const;
  /// ψ0 when the initial data is of gradient type (ConfigError otherwise).
  Field make_initial_potential(const TorusGrid& grid) const;
  /// The scalar forcing potential U, when forcing is gradient_potential.
  std::optional<Field> make_forcing_potential(const TorusGrid& grid) const;
  /// The forcing in the layout the OU process expects: scalar U for
  /// gradient-form noise, the velocity ∇U otherwise.
  std::optional<Field> make_ou_forcing(const TorusGrid& grid) const;
  NoiseOperator make_noise(const TorusGrid& grid) const;

  /// Canonical flat key-value echo (all keys, sorted) for manifests.
  std::string serialize() const;
};

struct ParsedConfig {
  ExperimentConfig config;
  std::vector<std::string> warnings;
};

/// Parses and validates a flat `section.key = value` document (# comments,
/// unknown keys are errors). Constraint violations carry the field path.
ParsedConfig parse_config(std::string_view text);
ParsedConfig parse_config_file(const std::string& path);

/// Builds a scalar potential field from a spec (used for ψ0 and U).
Field build_potential(const TorusGrid& grid, const PotentialSpec& spec,
                      std::string_view rng_purpose);

}  // namespace sburgers
