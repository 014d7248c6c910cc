#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "heraldsim/circuit.hpp"
#include "heraldsim/pauli.hpp"
#include "heraldsim/rng.hpp"

namespace heraldsim {

// Aaronson-Gottesman stabilizer tableau with destabilizer rows.  Exact
// reference backend for all circuit simulation.
//
// In symbolic mode every random measurement outcome becomes a fresh symbol
// and the tableau tracks, for each generator sign, the GF(2) set of symbols
// it depends on.  Deterministic measurements then report exactly which prior
// outcomes their value is the parity of.  This is how detector sets and
// lattice-surgery byproduct plans are derived mechanically from a circuit.
class TableauSim {
 public:
  struct MeasurementInfo {
    bool random = false;
    // For deterministic measurements: prior measurement indices whose parity
    // (XORed with a constant) equals this outcome.
    std::vector<uint32_t> depends_on;
  };

  TableauSim(uint32_t n, Rng rng, bool track_symbols = false,
             uint32_t max_symbols = 0);

  uint32_t num_qubits() const { return n_; }

  void h(uint32_t q);
  void cx(uint32_t c, uint32_t t);
  void x(uint32_t q);
  void z(uint32_t q);
  void apply_pauli(const PauliString& p);
  void reset(uint32_t q);

  int measure_z(uint32_t q);
  int measure_pauli(const PauliString& p);

  // Executes one instruction (Idle is a no-op here).
  void apply(const CircuitInstruction& instr);

  // Sign of p if p is in the +/- stabilizer group, nullopt otherwise.
  std::optional<int> peek_sign(const PauliString& p);

  // Symbolic mode only: measurement set whose parity determines the sign of
  // p at the current time.  Fails (nullopt) if p is not deterministic.
  std::optional<std::vector<uint32_t>> peek_dependencies(const PauliString& p);

  const std::vector<uint8_t>& record() const { return record_; }
  const std::vector<MeasurementInfo>& measurement_info() const { return info_; }

  // Debug check: stabilizer generators pairwise commute and the tableau has
  // full rank.
  bool check_invariants() const;

  // Current stabilizer row as a PauliString (row < n: destabilizer,
  // row >= n: stabilizer index row-n).
  PauliString stabilizer(uint32_t index) const;

 private:
  bool row_anticommutes(uint32_t row, const PauliString& p) const;
  void rowsum(uint32_t h, uint32_t i);
  void row_set_pauli(uint32_t row, const PauliString& p);
  void row_clear(uint32_t row);
  uint64_t* xw(uint32_t row) { return xs_.data() + row * words_; }
  uint64_t* zw(uint32_t row) { return zs_.data() + row * words_; }
  const uint64_t* xw(uint32_t row) const { return xs_.data() + row * words_; }
  const uint64_t* zw(uint32_t row) const { return zs_.data() + row * words_; }
  uint64_t* sw(uint32_t row) { return syms_.data() + row * symwords_; }

  uint32_t n_;
  uint32_t words_;
  Rng rng_;
  std::vector<uint64_t> xs_;  // (2n+1) x words_
  std::vector<uint64_t> zs_;
  std::vector<uint8_t> phase_;  // i exponent mod 4 per row

  bool track_symbols_;
  uint32_t symwords_ = 0;
  uint32_t num_symbols_ = 0;
  std::vector<uint64_t> syms_;               // (2n+1) x symwords_
  std::vector<uint32_t> symbol_measurement_;  // symbol -> measurement index

  std::vector<uint8_t> record_;
  std::vector<MeasurementInfo> info_;
};

}  // namespace heraldsim
