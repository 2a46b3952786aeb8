#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "catq/models.hpp"

namespace catq {

enum class ExperimentKind { reality_sweep, max_bound, oracle_compare, oscillator, continuity, demo };
enum class HamiltonianSource { random, file, oscillator, triangular };

struct HamiltonianConfig {
  HamiltonianSource source = HamiltonianSource::random;
  RandomSpec random;                 // seed filled from the experiment seed unless given
  std::optional<std::uint64_t> random_seed;
  std::string path;                  // source = file
  OscillatorSpec oscillator;         // source = oscillator
};

/// Knobs of the individual suites; each has a default.
struct SuiteParams {
  int n_observables = 32;
  int n_times = 16;
  int restarts = 64;
  int iters = 2000;
  Index n_check = 8;
  double dt = 1e-3;
  int steps = 1000;
  double q0 = 1.0;
  double p0 = 0.0;
};

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::demo;
  HamiltonianConfig hamiltonian;
  double t_a = 0.0;
  double t_b = 1.0;
  double hbar = 1.0;
  std::uint64_t seed = 1;
  std::map<std::string, double> tolerances;  // merged over the suite defaults
  std::string output_path;                   // directory; empty = no files
  SuiteParams params;
};

/// Parses and validates a JSON config. Unknown keys, unknown tolerance names
/// and t_b <= t_a raise Error{ConfigParse}.
ExperimentConfig parse_config(const nlohmann::ordered_json& j);
ExperimentConfig load_config(const std::string& path);

/// Applies CATQ_SEED from the environment, if set.
void apply_seed_override(ExperimentConfig& cfg);

nlohmann::ordered_json to_json(const ExperimentConfig& cfg);

/// Default tolerances for a suite.
std::map<std::string, double> default_tolerances(ExperimentKind kind);

struct ExperimentResult {
  int exit_code = 0;                  // 0 all pass, 1 tolerance/numerical failure
  nlohmann::ordered_json summary;     // deterministic for a given config
  std::string csv;                    // time series / samples, may be empty
  std::string report;                 // human-readable lines for stdout
};

/// Runs one suite. Numerical errors are caught and reported with exit 1.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// Writes summary.json, series.csv (if any) and metadata.json under
/// cfg.output_path. Only metadata.json carries a timestamp.
void write_artifacts(const std::string& output_dir, const ExperimentResult& result);

/// `catq verify` bundle: reality_sweep, max_bound and oracle_compare on one
/// seeded random H.
ExperimentResult run_verify(Index dim, std::uint64_t seed, double duration);

std::string to_string(ExperimentKind kind);

}  // namespace catq
