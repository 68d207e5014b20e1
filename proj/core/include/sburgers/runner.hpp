#pragma once

#include "sburgers/config.hpp"

namespace sburgers {

/// Experiment drivers behind the CLI subcommands. Each creates the output
/// directory, writes the manifest before any output, runs, then atomically
/// rewrites the manifest with the output inventory. Returns the process exit
/// status: run outcomes (completed, blow_up, picard_failure) are results and
/// exit 0; environment and configuration problems throw.
int run_simulate(const ExperimentConfig& cfg);
int run_ensemble(const ExperimentConfig& cfg);
int run_sweep_nu(const ExperimentConfig& cfg);
int run_oracle_compare(const ExperimentConfig& cfg);
int run_convergence(const ExperimentConfig& cfg);

/// %.17g rendering used for every CSV number (byte-stable across runs).
std::string csv_double(double v);

/// Fixed-order pairwise summation (deterministic independent of worker count).
double pairwise_sum(std::span<const double> values);

}  // namespace sburgers
