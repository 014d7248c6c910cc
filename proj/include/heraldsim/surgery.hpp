#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "heraldsim/circuit.hpp"
#include "heraldsim/code.hpp"
#include "heraldsim/noise.hpp"

namespace heraldsim {

struct MergeConfig {
  char boundary = 'X';     // seam joins the X boundaries (side-by-side merge)
  int cycles = 0;          // merged syndrome rounds; 0 -> use d
  int init_rounds = 1;     // standalone rounds before the merge
  int settle_rounds = 1;   // standalone rounds absorbing the split
  int memory_rounds = 1;   // m1 storage rounds
  // Noiseless preparation: init/merge/split rounds run perfectly so only the
  // storage (memory) rounds accumulate noise, as in the stored-pair sweeps.
  bool perfect_prep = false;
  // Bacon-Shor gauges as native MXX/MZZ carrying transpiled-equivalent
  // durations; the explicit CX/H/MZ realization is available for inspection
  // but lets a single control-qubit fault copy along the gauge axis.
  bool native_parity = true;
  bool closure_round = true;   // final noiseless round closing the decode
  // Protocol-dependent extra noise hooks (0 = off):
  double seam_wait = 0.0;      // idle on all qubits before each merged round
  double seam_depol = 0.0;     // depolarization on seam qubits per merged round
  double transmit_idle = 0.0;  // idle on data after the split (transfer+travel)
  double readout_idle = 0.0;   // trailing idle standing in for final readout
};

struct ByproductPlan {
  std::vector<uint32_t> split_measurements;  // b_i measurement indices
  char correction_logical = 'Z';  // logical recorded on patch A when b = -1
  int obs_index = 1;              // observable the correction feeds (XX)
};

struct MergeOutcome {
  std::vector<uint8_t> b_i;
  int b = +1;  // product of (-1)^{b_i}
};

// Recorded logical corrections on patch A (frame update, no physical gates).
struct LogicalFrame {
  uint8_t z_on_a = 0;
  uint8_t x_on_a = 0;
};

MergeOutcome collect_outcome(const ByproductPlan& plan,
                             const std::vector<uint8_t>& outcomes);
LogicalFrame apply_byproduct(LogicalFrame frame, const MergeOutcome& outcome,
                             const ByproductPlan& plan);

struct BellCircuit {
  Circuit circuit;  // finalized: detectors + observables filled
  uint32_t num_qubits = 0;
  ByproductPlan plan;
  std::vector<uint32_t> a_data, b_data, seam;
  double t_cycle = 0.0;
  double t_merge = 0.0;  // (cycles + settle) * t_cycle
  int obs_zz = 0, obs_xx = 1;
};

// Full logical-Bell-pair circuit: standalone init round(s), seam
// initialization, merged rounds, split, settle and memory rounds, and an
// optional noiseless closure round for decoding.  Works for all families.
BellCircuit build_bell_circuit(const CodeSpec& spec, const GateTimes& times,
                               const MergeConfig& config);

// Spec-shaped entry points (surface families vs Bacon-Shor).
BellCircuit build_merge_split(const CodeSpec& spec, const GateTimes& times,
                              const MergeConfig& config);
BellCircuit build_baconshor_merge(const CodeSpec& spec, const GateTimes& times,
                                  const MergeConfig& config);

// Single-patch Z-basis memory experiment: |0>_L, `rounds` noisy syndrome
// rounds, closure; observable 0 is Z_L.
struct MemoryCircuit {
  Circuit circuit;
  uint32_t num_qubits = 0;
};
MemoryCircuit build_memory_circuit(const CodeSpec& spec, const GateTimes& times,
                                   int rounds, bool native_parity);

// Unencoded two-qubit Bell baseline: one idle layer per layer of the
// compared code's cycle plan, optional link idles, and an optional final
// layer standing in for readout error.  With noiseless_prep the two
// preparation gates are tagged perfect, making the comparison storage-only.
// Observables: ZZ then XX.
Circuit build_baseline_circuit(const CyclePlan& plan, const GateTimes& times,
                               double transmit_idle, double readout_depol,
                               bool noiseless_prep = false);

}  // namespace heraldsim
