#pragma once

#include <cstdint>
#include <vector>

#include "heraldsim/detector_graph.hpp"

namespace heraldsim {

struct MatchResult {
  // Matched detector pairs; kBoundary as second element for boundary matches.
  std::vector<std::pair<uint32_t, uint32_t>> pairs;
  double total_weight = 0.0;
  uint8_t obs_mask = 0;  // accumulated logical correction
  bool ok = true;        // false if a defect could not be matched
};

// MWPM decoder over a detector graph.  Construction precomputes all-pairs
// shortest paths (with the logical mask picked up along each path); decode()
// runs exact blossom matching on the defect set, using the standard reduction
// min(dist(i,j), boundary(i)+boundary(j)) so the matrix stays defect-sized.
class Decoder {
 public:
  explicit Decoder(const DetectorGraph& graph);

  MatchResult decode(const std::vector<uint32_t>& defects) const;
  // Convenience: defect extraction from a per-detector violation vector.
  MatchResult decode_shot(const std::vector<uint8_t>& detector_bits) const;

  double distance(uint32_t u, uint32_t v) const;
  double boundary_distance(uint32_t u) const;

 private:
  uint32_t n_ = 0;
  std::vector<double> dist_;       // n x n
  std::vector<uint8_t> path_obs_;  // n x n
  std::vector<double> bdist_;      // to boundary
  std::vector<uint8_t> bobs_;
  std::vector<int32_t> component_;  // without boundary edges
};

// One-shot convenience wrapper (builds a Decoder; prefer the class in loops).
MatchResult decode_mwpm(const DetectorGraph& graph,
                        const std::vector<uint32_t>& defects);

// Repetition-style majority decoding for a reconstructed Bacon-Shor
// stabilizer history: history[round][i] holds stabilizer i of one sector.
// Majority over rounds per stabilizer, then minimum-weight chain decoding;
// returns the logical correction bit (support includes position 0).
int decode_bacon_shor(const std::vector<std::vector<uint8_t>>& history);

}  // namespace heraldsim
