#pragma once

#include <cstdint>
#include <vector>

#include "heraldsim/circuit.hpp"
#include "heraldsim/noise.hpp"
#include "heraldsim/rng.hpp"

namespace heraldsim {

// Pauli-frame Monte Carlo backend.  Tracks the error frame relative to a
// fixed noiseless reference execution, so one shot costs O(circuit) bit
// operations.  Raw outcomes are reference XOR frame flip; measurement
// collapse randomness is reproduced by XORing the measured Pauli into the
// frame with probability 1/2 and by a random Z on every initialization and
// reset, which leaves all detectors and observables invariant.
class FrameSim {
 public:
  // The circuit must already be finalized (detectors/observables filled) if
  // detector or observable outputs are wanted.
  explicit FrameSim(const Circuit& circuit);

  struct Shot {
    std::vector<uint8_t> flips;        // per measurement, vs. reference
    std::vector<uint8_t> detectors;    // detector violation bits
    uint8_t obs_mask = 0;              // raw observable error bits (bit i)
  };

  // One noisy sample.  Buffers inside `shot` are reused across calls.
  void sample(const NoiseBinding& binding, Rng& rng, Shot& shot);

  // Deterministic propagation of a single Pauli fault injected before or
  // after instruction `instr_index`.  `letters` has one of IXYZ per target.
  struct FaultEffect {
    std::vector<uint32_t> detectors;   // flipped detector indices, sorted
    uint8_t obs_mask = 0;
  };
  FaultEffect propagate_fault(size_t instr_index, bool before,
                              const std::vector<uint32_t>& targets,
                              const std::string& letters);

  // Reference outcomes from one noiseless tableau run (fixed at
  // construction); raw sample outcome i is reference[i] ^ shot.flips[i].
  const std::vector<uint8_t>& reference() const { return reference_; }

 private:
  void run(const NoiseBinding* binding, Rng* rng, Shot& shot, bool randomize,
           size_t start_index, const std::vector<uint32_t>* fault_targets,
           const std::string* fault_letters, bool fault_before);
  void xor_pauli(uint32_t q, char letter);

  const Circuit& circuit_;
  uint32_t num_meas_ = 0;
  std::vector<uint8_t> reference_;
  std::vector<uint8_t> fx_, fz_;                    // frame bits per qubit
  std::vector<std::vector<uint32_t>> meas_to_det_;  // measurement -> detectors
  std::vector<uint8_t> meas_obs_mask_;              // measurement -> obs bits
  // Observable Pauli support as per-qubit letters for the end-of-circuit
  // symplectic product.
  std::vector<std::vector<uint8_t>> obs_x_, obs_z_;
};

}  // namespace heraldsim
