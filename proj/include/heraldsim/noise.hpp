#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "heraldsim/circuit.hpp"
#include "heraldsim/rng.hpp"

namespace heraldsim {

// Table I gate durations (seconds).
struct GateTimes {
  double t_h = 150e-6;
  double t_cx = 970e-6;
  double t_m = 130e-6;
};

struct DepolarizingParams {
  double p_err = 0.0;
};

// Table I physical noise parameters.  `xi` scales the three gate errors
// (and only those), as in the gate-error-ratio threshold analysis.
struct PhysicalParams {
  double t1 = 3.0;
  double t2 = 0.5;
  double p_err_h = 2.1e-4;
  double p_err_cx = 8.3e-3;
  double p_err_m = 7.7e-3;
  GateTimes times;
  double xi = 1.0;
};

enum class ChannelKind : uint8_t {
  Depolarize1,  // p split uniformly over {X,Y,Z}
  Depolarize2,  // p split uniformly over the 15 non-identity pairs
  PauliXYZ,     // explicit px, py, pz on one qubit
  MeasureFlip,  // classical readout flip
};

struct NoiseChannel {
  ChannelKind kind;
  double p = 0.0;          // total error probability (or flip probability)
  double px = 0.0, py = 0.0, pz = 0.0;  // PauliXYZ only
  bool before = false;     // placement relative to the instruction
};

// Per-instruction error injection plan; indices parallel the circuit.
struct NoiseBinding {
  std::vector<std::vector<NoiseChannel>> channels;

  static NoiseBinding none(const Circuit& circuit);
};

// Depolarizing model: channel after each gate, before each measurement,
// and on idle qubits per gate layer.  Two-qubit parity measurements get the
// two-qubit channel.
NoiseBinding bind_depolarizing(const Circuit& circuit,
                               const DepolarizingParams& params);

// Physical model: depolarizing gate errors scaled by xi, classical readout
// flips, and Pauli-twirled T1/T2 damping on every idle interval.
NoiseBinding bind_physical(const Circuit& circuit, const PhysicalParams& params);

// Pauli-twirled amplitude/phase damping probabilities for an idle of
// duration t: px = py = (1 - exp(-t/T1))/4, pz per the dephasing remainder.
struct IdleChannel {
  double px, py, pz;
};
IdleChannel idle_pauli_twirl(double t, double t1, double t2);

// Explicit Kraus probability vector of a channel, identity term first.  The
// identity entry is computed as the exact complement of the running sum of
// the non-identity terms, so summing those terms in order and adding the
// identity entry yields exactly 1.
std::vector<double> channel_probabilities(const NoiseChannel& channel);

// Draws one sample from a depolarizing channel: empty string means identity,
// otherwise one letter per target qubit (identity letters included for the
// two-qubit channel).
std::string sample_depolarizing(double p_err, int arity, Rng& rng);

// Appendix-style transpilation of a two-qubit parity measurement into
// H/CX/MZ for hardware without native parity gates.  `basis` is 'X' or 'Z'.
// Returns the instruction fragment (targets q0, q1; the Z-basis readout
// lands on q1 for 'Z' and on q0 for 'X').
std::vector<CircuitInstruction> transpile_parity_measurement(
    char basis, uint32_t q0, uint32_t q1, const GateTimes& times,
    const std::string& tag);

}  // namespace heraldsim
