#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "heraldsim/protocol.hpp"

namespace heraldsim {

// Run configuration: Table-style physical defaults plus campaign settings.
// Serialized as JSON; every physical parameter lives under "physical" (with
// the cavity parameters under "cavity") so configs stay self-documenting.
struct RunConfig {
  uint64_t seed = 1;
  long shots = 100000;
  std::string out_dir = "out";
  std::string format = "csv";

  // Sweep settings (axis values are p_err or xi depending on subcommand).
  std::vector<double> grid;  // default: 8-point log grid over [1e-4, 1e-2]
  std::vector<double> xi_grid;  // default: 8-point log grid over [0.1, 10]
  std::vector<CodeSpec> codes;  // default: rotated/planar/baconshor at d=3
  int memory_rounds = 1;
  bool perfect_prep = false;

  // Protocol, link, and physical-model parameters.
  ProtocolConfig protocol;
  double tau_single_mode = 0.17;  // dB/km, protocol 2
  double tau_multi_mode = 0.70;   // dB/km, protocol 1
  double r_glass = 1.44;
  double source_wavelength_nm = 1550.0;  // reference metadata only

  // Rate-vs-distance settings.
  std::vector<double> distances;  // default: log grid over [1, 80] km
  int rate_reps = 5;
  int rate_trials = 400;
};

RunConfig default_run_config();

// Parses a JSON config file; unknown keys are rejected, missing keys keep
// their defaults.  Throws std::runtime_error with the offending path.
RunConfig load_run_config(const std::string& path);

// Canonical JSON serialization of a config (round-trips through
// load_run_config).
std::string run_config_json(const RunConfig& config);

// HERALDSIM_SEED overrides the master seed when set.
void apply_env_overrides(RunConfig& config);

// "rotated:3", "planar:5", "baconshor:3".
CodeSpec parse_code_spec(const std::string& text);
std::string code_spec_name(const CodeSpec& spec);

}  // namespace heraldsim
