#include <vector>

#include "doctest.h"
#include "heraldsim/decoder.hpp"
#include "heraldsim/detector_graph.hpp"
#include "heraldsim/matching.hpp"
#include "heraldsim/noise.hpp"
#include "heraldsim/rng.hpp"
#include "heraldsim/surgery.hpp"

using namespace heraldsim;

namespace {

std::vector<std::vector<int64_t>> random_weights(int n, Rng& rng) {
  std::vector<std::vector<int64_t>> w(n, std::vector<int64_t>(n, 0));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      w[i][j] = w[j][i] = 1 + static_cast<int64_t>(rng.below(1000));
    }
  }
  return w;
}

}  // namespace

TEST_CASE("blossom matching equals brute force on random instances") {
  Rng rng(2024);
  for (int instance = 0; instance < 200; ++instance) {
    const int n = 2 * (1 + static_cast<int>(rng.below(5)));  // 2..10
    const auto w = random_weights(n, rng);
    const auto fast = min_weight_perfect_matching(w);
    const auto brute = brute_force_min_perfect(w);
    for (int i = 0; i < n; ++i) {
      CHECK(fast[i] >= 0);
      CHECK(fast[fast[i]] == i);
    }
    CHECK(matching_weight(w, fast) == matching_weight(w, brute));
  }
}

TEST_CASE("decoder matches empty and pairwise defect sets") {
  GateTimes times;
  BellCircuit bell =
      build_bell_circuit({CodeFamily::RotatedSurface, 3}, times, MergeConfig{});
  NoiseBinding binding = bind_depolarizing(bell.circuit, {1e-3});
  DetectorGraph graph = build_detector_graph(bell.circuit, binding);
  CHECK(graph.num_undecomposable == 0);
  Decoder dec(graph);
  const MatchResult empty = dec.decode({});
  CHECK(empty.ok);
  CHECK(empty.obs_mask == 0);
  CHECK(empty.pairs.empty());
  // Every single-detector defect must be matchable (to the boundary or not
  // at all only if disconnected, which the graph is not).
  for (uint32_t d = 0; d < graph.num_detectors; ++d) {
    const MatchResult one = dec.decode({d});
    CHECK(one.ok);
    REQUIRE(one.pairs.size() == 1);
    CHECK(one.pairs[0].second == DetectorGraph::kBoundary);
  }
  // Matching an adjacent pair never costs more than two boundary matches.
  for (const auto& e : graph.edges) {
    if (e.v == DetectorGraph::kBoundary) continue;
    const MatchResult two = dec.decode({std::min(e.u, e.v),
                                        std::max(e.u, e.v)});
    CHECK(two.ok);
    CHECK(two.total_weight <=
          dec.boundary_distance(e.u) + dec.boundary_distance(e.v) + 1e-9);
    CHECK(two.total_weight <= dec.distance(e.u, e.v) + 1e-9);
  }
}

TEST_CASE("bacon-shor majority decoding over a stabilizer history") {
  // Clean history: no correction.
  CHECK(decode_bacon_shor({{0, 0}, {0, 0}, {0, 0}}) == 0);
  // A persistent syndrome on stabilizer 0 flips the boundary-side chain,
  // which includes position 0, so a logical correction is reported.
  CHECK(decode_bacon_shor({{1, 0}, {1, 0}, {1, 0}}) == 1);
  // A single-round blip is outvoted.
  CHECK(decode_bacon_shor({{0, 0}, {1, 0}, {0, 0}}) == 0);
}
