#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "heraldsim/pauli.hpp"

namespace heraldsim {

enum class InstrKind : uint8_t {
  H,
  CX,
  X,
  Z,
  MeasureZ,
  MeasureXX,
  MeasureZZ,
  Reset,
  PauliError,
  Idle,
};

bool is_measurement(InstrKind k);
bool is_unitary(InstrKind k);
const char* kind_name(InstrKind k);

struct CircuitInstruction {
  InstrKind kind;
  std::vector<uint32_t> targets;
  double duration = 0.0;       // seconds
  std::string tag;             // detector bookkeeping label
  std::string paulis;          // letters per target, PauliError only
};

// A deterministic parity of measurement outcomes: flips indicate faults.
struct Detector {
  std::vector<uint32_t> measurements;  // XOR of these outcome indices
  std::string tag;                     // inherited from the base measurement
};

// Logical observable scored at the end of a run: the value of `pauli` on the
// final state times the parity of the listed measurement outcomes is
// noiselessly deterministic.
struct Observable {
  PauliString pauli;
  std::vector<uint32_t> measurements;
  std::string name;
};

struct Circuit {
  uint32_t num_qubits = 0;
  std::vector<CircuitInstruction> instructions;

  // Filled by finalize_semantics().
  std::vector<Detector> detectors;
  std::vector<Observable> observables;

  // Builder-declared detector chains: for one check, the time-ordered list
  // of measurement sets that each evaluate it (a set has several indices
  // when the check is reconstructed as a product, e.g. of gauge outcomes or
  // of a settle-round check with seam split bits).  finalize_semantics()
  // turns chains into detectors, preferring consecutive-round differences.
  struct DetectorChain {
    std::string tag;  // "<X|Z>:<anchor>" - leading letter names the sector
    std::vector<std::vector<uint32_t>> rounds;
  };
  std::vector<DetectorChain> detector_chains;

  uint32_t num_measurements() const;

  void append(InstrKind kind, std::initializer_list<uint32_t> targets,
              double duration = 0.0, std::string tag = {});
  void append(CircuitInstruction instr);

  // Line-oriented text form; round-trips exactly.
  std::string to_text() const;
  static Circuit from_text(const std::string& text);
};

// Runs the symbolic determinism analysis and fills circuit.detectors and the
// measurement sets of circuit.observables.  Throws if an observable Pauli is
// not deterministic at the end of the circuit.
void finalize_semantics(Circuit& circuit);

}  // namespace heraldsim
