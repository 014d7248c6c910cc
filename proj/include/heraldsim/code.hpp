#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "heraldsim/noise.hpp"
#include "heraldsim/pauli.hpp"

namespace heraldsim {

enum class CodeFamily : uint8_t { RotatedSurface, PlanarSurface, BaconShor };

const char* family_name(CodeFamily f);

struct CodeSpec {
  CodeFamily family = CodeFamily::RotatedSurface;
  int d = 3;
};

// Assigns global qubit ids to grid coordinates so that standalone and merged
// layouts built over the same plane share qubits.
class QubitAlloc {
 public:
  uint32_t data(int r, int c);
  uint32_t ancilla(int r, int c);
  uint32_t count() const { return next_; }
  const std::map<std::pair<int, int>, uint32_t>& data_ids() const {
    return data_;
  }

 private:
  uint32_t next_ = 0;
  std::map<std::pair<int, int>, uint32_t> data_;
  std::map<std::pair<int, int>, uint32_t> anc_;
};

struct Check {
  char type;                    // 'X' or 'Z'
  std::pair<int, int> anchor;   // plaquette anchor / check site (global)
  std::vector<uint32_t> data;   // entry per schedule slot; UINT32_MAX = skip
  uint32_t ancilla;
  std::string tag;              // "<type>:<r>.<c>"
};

struct GaugeOp {
  char type;      // 'X' (horizontal pair) or 'Z' (vertical pair)
  uint32_t q0, q1;
  int group;      // sub-layer index within the cycle
  std::pair<int, int> site;
};

struct PatchLayout {
  CodeFamily family;
  int rows = 0, cols = 0;  // grid extent (see make_layout)
  int row0 = 0, col0 = 0;  // global offset
  std::vector<uint32_t> data;
  std::vector<Check> checks;
  std::vector<GaugeOp> gauges;
  // Bacon-Shor stabilizers as gauge-index products, with bookkeeping tags.
  struct GaugeProduct {
    char type;
    std::vector<uint32_t> gauge_indices;
    std::string tag;
  };
  std::vector<GaugeProduct> stabilizers;
  // Logical representatives as data-qubit id lists.
  std::vector<uint32_t> logical_x_qubits, logical_z_qubits;

  PauliString logical_x(uint32_t total_qubits) const;
  PauliString logical_z(uint32_t total_qubits) const;
};

// Lays out a patch over grid cells [row0,row0+rows) x [col0,col0+cols).
// Rotated surface / Bacon-Shor: every cell is a data qubit (standalone
// rows=cols=d; merged rows=d, cols=2d+1).  Planar surface: data on cells
// with even global (r+c) parity (standalone rows=cols=2d-1; merged
// cols=4d-1).  Check types follow global coordinate parity so that
// sub-patches of a merged plane match their standalone layouts.
PatchLayout make_layout(CodeFamily family, QubitAlloc& alloc, int row0,
                        int col0, int rows, int cols);

// Standalone patch per the public CodeSpec interface (fresh allocator).
struct BuiltPatch {
  PatchLayout layout;
  uint32_t num_qubits;
};
BuiltPatch build_patch(const CodeSpec& spec);

// One syndrome-extraction round as layer durations.
struct CyclePlan {
  std::vector<double> layer_durations;  // noisy layers only
  double t_cycle = 0.0;
};
// native_parity: Bacon-Shor gauge ops as native MXX/MZZ (depolarizing-model
// convention) instead of the transpiled CX/H/MZ sequence.
CyclePlan cycle_plan(const CodeSpec& spec, const GateTimes& times,
                     bool native_parity);

// Logical Bell error bits given the raw observable parities (frame values of
// Z_L1 Z_L2 and X_L1 X_L2 relative to noiseless) and decoder corrections.
std::pair<int, int> logical_bell_error(int zz_raw, int xx_raw,
                                       int zz_correction, int xx_correction);

}  // namespace heraldsim
