#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "heraldsim/code.hpp"
#include "heraldsim/protocol.hpp"

namespace heraldsim {

enum class SweepAxis : uint8_t { PErr, Xi };

struct SweepConfig {
  SweepAxis axis = SweepAxis::PErr;
  std::vector<double> grid;
  long shots = 100000;
  std::vector<CodeSpec> codes;
  int memory_rounds = 1;
  bool perfect_prep = false;
  bool include_baseline = true;
  PhysicalParams physical;  // base parameters for the xi axis
  uint64_t seed = 1;
  int threads = 0;  // 0 -> hardware concurrency
};

struct SweepRow {
  double axis_value = 0.0;
  std::string code;  // "rotated:3", ..., or "baseline:<family>"
  long shots = 0;
  long fail_zz = 0, fail_xx = 0, fail_any = 0;
  double p_l = 0.0;       // fail_any / shots
  double std_err = 0.0;   // binomial
  double wilson_low = 0.0, wilson_high = 0.0;
  bool flagged = false;   // zero failures at a nonzero axis value
};

struct SweepTable {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<SweepRow> rows;
};

// Monte Carlo campaign: for every code and axis value, build the full noisy
// merge/split Bell circuit (plus the unencoded baseline spanning one QEC
// cycle of each family) and estimate P(zz or xx logical error).
SweepTable sweep_logical_error(const SweepConfig& config);

struct Wilson {
  double low = 0.0, high = 0.0;
};
Wilson wilson_interval(long failures, long shots, double z = 1.959963985);

// A logical-error curve over the sweep axis.  Counts enable bootstrap
// resampling; points without counts (shots == 0) are treated as exact.
struct CurvePoint {
  double x = 0.0;
  double p = 0.0;
  long failures = 0;
  long shots = 0;
};
using Curve = std::vector<CurvePoint>;

Curve curve_for(const SweepTable& table, const std::string& code);

struct ThresholdEstimate {
  bool found = false;
  double value = 0.0;
  double ci_low = 0.0, ci_high = 0.0;
  // When no crossing exists: +1 if the first curve sits above the second
  // everywhere, -1 if below, 0 if undefined.
  int direction = 0;
  std::string method;
};

// Crossing of two curves by linear interpolation in log-log space; 95% CI
// from per-point binomial bootstrap (default 1000 resamples).
ThresholdEstimate estimate_crossing(const Curve& a, const Curve& b,
                                    uint64_t seed, int resamples = 1000);
ThresholdEstimate estimate_pseudo_threshold(const Curve& code,
                                            const Curve& baseline,
                                            uint64_t seed);
ThresholdEstimate estimate_family_threshold(const Curve& d3, const Curve& d5,
                                            uint64_t seed);

struct RatePoint {
  double distance_km = 0.0;
  double rate_hz = 0.0;
  double stddev = 0.0;
  int reps = 0;
};

// Protocol 2 rate over a distance grid: rate = successful trials / total
// simulated wall time, mean and std over `reps` reseeded repetitions.
std::vector<RatePoint> rate_vs_distance(const ProtocolConfig& base,
                                        const std::vector<double>& distances,
                                        int trials_per_rep, int reps,
                                        uint64_t seed);

}  // namespace heraldsim
