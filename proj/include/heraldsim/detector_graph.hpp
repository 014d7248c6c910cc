#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "heraldsim/circuit.hpp"
#include "heraldsim/noise.hpp"

namespace heraldsim {

// Space-time decoding graph derived mechanically from a circuit plus a noise
// binding by exhaustive single-fault propagation.  Faults whose x- and z-part
// flips cannot be expressed over 1- and 2-detector edges are counted in the
// undecomposable statistics instead of being silently dropped.
struct DetectorGraph {
  static constexpr uint32_t kBoundary = UINT32_MAX;

  struct Edge {
    uint32_t u = 0;
    uint32_t v = kBoundary;  // kBoundary for boundary edges
    double p = 0.0;          // combined flip probability
    double weight = 0.0;     // -ln(p / (1 - p))
    uint8_t obs_mask = 0;    // observables flipped when this edge fires
  };

  uint32_t num_detectors = 0;
  std::vector<Edge> edges;
  std::vector<char> sector;  // per detector: leading letter of its tag

  uint64_t num_undecomposable = 0;
  double undecomposable_prob = 0.0;  // summed probability of such faults
  uint64_t num_undetected_logical = 0;  // faults flipping only observables
};

DetectorGraph build_detector_graph(const Circuit& circuit,
                                   const NoiseBinding& binding);

// DIMACS-like edge list ("p det <nodes> <edges>" header, one "e u v p w obs"
// line per edge, boundary printed as -1) for external inspection.
std::string dump_edges(const DetectorGraph& graph);

}  // namespace heraldsim
