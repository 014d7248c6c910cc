#pragma once

#include <cstdint>
#include <memory>

#include "heraldsim/code.hpp"
#include "heraldsim/decoder.hpp"
#include "heraldsim/detector_graph.hpp"
#include "heraldsim/frame.hpp"
#include "heraldsim/noise.hpp"
#include "heraldsim/photonics.hpp"
#include "heraldsim/rng.hpp"
#include "heraldsim/surgery.hpp"

namespace heraldsim {

// Source / detector / memory-interface timing.
struct SchedulerParams {
  double t_range_q = 400e-6;  // acceptance window per merging cycle
  double t_transfer = 100e-6; // photon-to-memory state transfer
  double t_qndm = 10e-6;      // non-demolition detection
  double t_readout = 1e-6;    // detector readout
  double f_source = 33e6;     // photon-pair source attempt rate (Hz)
};

struct ProtocolConfig {
  Protocol protocol = Protocol::Two;
  CodeSpec code;
  double distance_km = 1.0;
  int m1 = 1;  // post-storage QEC cycles
  SchedulerParams scheduler;
  PhysicalParams physical;
  CavityParams cavity;
  double eta_conv = 0.9;
  double p_trs = 0.5;
  double p_dark = 0.03;
  // Seam-qubit depolarization per merged round standing in for the heralded
  // auxiliary-pair infidelity (false heralds included); exposed because no
  // first-principles map is available.
  double seam_depol = 0.03;
  // Auxiliary pairs acquired per merging cycle: d (so d^2 total) when true,
  // a single batch of d for the whole merge when false.
  bool aux_per_cycle = true;
  uint64_t seed = 1;
};

struct TimeBudget {
  double t_cycle = 0.0;
  double t_merge = 0.0;  // (d + 1) * t_cycle
  double t_trav = 0.0;   // one-way for protocol 1, d crossings for protocol 2
  double t_total = 0.0;  // t_merge + 2 t_cycle + t_m + t_trav
};

TimeBudget compute_time_budget(const CodeSpec& code, Protocol protocol,
                               double distance_km, const GateTimes& times);

enum class TrialStatus : uint8_t { Success, Aborted };

struct TrialOutcome {
  TrialStatus status = TrialStatus::Success;
  int zz_error = 0, xx_error = 0;  // valid on Success only
  double wall_time = 0.0;
  int retries = 0;  // regenerated acceptance windows (protocol 2)
};

struct AcquireResult {
  int n_ready = 0;
  double elapsed = 0.0;
  int retries = 0;
};

// Discrete-event acquisition of `d` ready auxiliary Bell pairs.  Attempts
// start on source ticks; the single-photon QNDM is busy for
// t_qndm + t_readout per attempted detection, so a 400 us window holds ~36
// serialized attempts.  A pair is ready when both halves survive the full
// link (probability eta_tot each).  Short windows regenerate (retries) up to
// `max_windows`; acquired pairs carry over.
AcquireResult scheduler_acquire(const SchedulerParams& params,
                                const LinkBudget& link, int d, Rng& rng,
                                int max_windows = 100000);

// Ready-pair count statistics over full (no early stop) acceptance windows.
struct WindowStats {
  double mean = 0.0;
  double stddev = 0.0;
};
WindowStats scheduler_window_stats(const SchedulerParams& params,
                                   const LinkBudget& link, int windows,
                                   Rng& rng);

// Reusable trial runner: builds the Bell circuit, noise binding, detector
// graph, and decoder once per configuration.
class ProtocolEngine {
 public:
  explicit ProtocolEngine(const ProtocolConfig& config);

  // Deterministic per-index trial via Rng substreams.
  TrialOutcome run_trial(uint64_t trial_index);

  const TimeBudget& budget() const { return budget_; }
  const LinkBudget& link() const { return link_; }
  const BellCircuit& bell() const { return bell_; }

 private:
  ProtocolConfig cfg_;
  LinkBudget link_;
  TimeBudget budget_;
  BellCircuit bell_;
  NoiseBinding binding_;
  DetectorGraph graph_;
  std::unique_ptr<Decoder> decoder_;
  std::unique_ptr<FrameSim> sim_;
  FrameSim::Shot shot_;
};

// Spec-shaped one-shot entry points (prefer ProtocolEngine in loops).
TrialOutcome run_protocol1_trial(const ProtocolConfig& config);
TrialOutcome run_protocol2_trial(const ProtocolConfig& config);

// A single physical Bell pair through the protocol-appropriate link with the
// same storage duration as one QEC iteration of the compared code.
TrialOutcome run_unencoded_baseline(const ProtocolConfig& config);

}  // namespace heraldsim
