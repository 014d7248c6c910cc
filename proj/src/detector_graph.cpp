#include "heraldsim/detector_graph.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "heraldsim/frame.hpp"

namespace heraldsim {

namespace {

using Key = std::pair<std::vector<uint32_t>, uint8_t>;  // (detectors, obs)

// p-combine: probability that an odd number of the two mechanisms fire.
double combine(double a, double b) { return a + b - 2.0 * a * b; }

struct Collector {
  std::map<Key, double> elementary;            // <=2 detector flips
  std::vector<std::pair<Key, double>> composite;  // >=3 detector flips
  uint64_t undetected_logical = 0;

  void add(std::vector<uint32_t> dets, uint8_t obs, double p) {
    if (p <= 0.0) return;
    if (dets.empty() && obs == 0) return;
    if (dets.empty()) {
      // Fault invisible to every detector but flipping an observable: no
      // edge can represent it; surfaced as a statistic.
      ++undetected_logical;
      return;
    }
    Key key{std::move(dets), obs};
    if (key.first.size() <= 2) {
      auto [it, fresh] = elementary.try_emplace(std::move(key), p);
      if (!fresh) it->second = combine(it->second, p);
    } else {
      composite.push_back({std::move(key), p});
    }
  }
};

// Splits a Pauli fault into its X-type and Z-type parts and accumulates the
// deterministic detector flips of each part.
void add_pauli_fault(Collector& out, FrameSim& fs, size_t instr_index,
                     bool before, const std::vector<uint32_t>& targets,
                     const std::string& letters, double p) {
  for (char part : {'X', 'Z'}) {
    std::vector<uint32_t> tq;
    std::string tl;
    for (size_t k = 0; k < letters.size(); ++k) {
      char L = letters[k];
      bool has = (part == 'X') ? (L == 'X' || L == 'Y')
                               : (L == 'Z' || L == 'Y');
      if (has) {
        tq.push_back(targets[k]);
        tl.push_back(part);
      }
    }
    if (tq.empty()) continue;
    auto eff = fs.propagate_fault(instr_index, before, tq, tl);
    out.add(std::move(eff.detectors), eff.obs_mask, p);
  }
}

// Tries to express a composite flip set as a disjoint union of existing
// elementary keys whose obs masks XOR to the composite's.  Pairs are
// preferred; singletons (boundary edges) allowed.  Returns chosen keys.
bool decompose(const std::map<Key, double>& elementary,
               const std::vector<uint32_t>& dets, uint8_t obs,
               std::vector<Key>& chosen) {
  if (dets.empty()) return obs == 0;
  uint32_t a = dets[0];
  // Try pairing a with each other detector first, then with the boundary.
  for (size_t j = 1; j <= dets.size(); ++j) {
    std::vector<uint32_t> part{a};
    std::vector<uint32_t> rest(dets.begin() + 1, dets.end());
    if (j < dets.size()) {
      part.push_back(dets[j]);
      rest.erase(rest.begin() + (j - 1));
      if (part[0] > part[1]) std::swap(part[0], part[1]);
    }
    // Any obs mask present for this detector set is a candidate.
    for (uint8_t m = 0; m < 8; ++m) {
      auto it = elementary.find({part, m});
      if (it == elementary.end()) continue;
      chosen.push_back(it->first);
      if (decompose(elementary, rest, obs ^ m, chosen)) return true;
      chosen.pop_back();
    }
  }
  return false;
}

}  // namespace

DetectorGraph build_detector_graph(const Circuit& circuit,
                                   const NoiseBinding& binding) {
  if (binding.channels.size() != circuit.instructions.size()) {
    throw std::invalid_argument("binding does not cover circuit");
  }
  FrameSim fs(circuit);
  Collector col;

  // Measurement index -> flipped detectors / observables, for MeasureFlip.
  const uint32_t num_meas = circuit.num_measurements();
  std::vector<std::vector<uint32_t>> meas_dets(num_meas);
  std::vector<uint8_t> meas_obs(num_meas, 0);
  for (uint32_t d = 0; d < circuit.detectors.size(); ++d) {
    for (uint32_t m : circuit.detectors[d].measurements) meas_dets[m].push_back(d);
  }
  for (size_t o = 0; o < circuit.observables.size(); ++o) {
    for (uint32_t m : circuit.observables[o].measurements) {
      meas_obs[m] |= static_cast<uint8_t>(1u << o);
    }
  }

  static const char* kPaulis1[] = {"X", "Y", "Z"};
  uint32_t meas_index = 0;
  for (size_t i = 0; i < circuit.instructions.size(); ++i) {
    const auto& in = circuit.instructions[i];
    for (const NoiseChannel& ch : binding.channels[i]) {
      switch (ch.kind) {
        case ChannelKind::Depolarize1:
          for (uint32_t q : in.targets) {
            for (const char* L : kPaulis1) {
              add_pauli_fault(col, fs, i, ch.before, {q}, L, ch.p / 3.0);
            }
          }
          break;
        case ChannelKind::Depolarize2:
          for (int a = 0; a < 4; ++a) {
            for (int b = 0; b < 4; ++b) {
              if (a == 0 && b == 0) continue;
              std::string L{"IXYZ"[a], "IXYZ"[b]};
              add_pauli_fault(col, fs, i, ch.before,
                              {in.targets[0], in.targets[1]}, L, ch.p / 15.0);
            }
          }
          break;
        case ChannelKind::PauliXYZ: {
          const double ps[3] = {ch.px, ch.py, ch.pz};
          for (uint32_t q : in.targets) {
            for (int k = 0; k < 3; ++k) {
              add_pauli_fault(col, fs, i, ch.before, {q}, kPaulis1[k], ps[k]);
            }
          }
          break;
        }
        case ChannelKind::MeasureFlip: {
          std::vector<uint32_t> dets = meas_dets[meas_index];
          std::sort(dets.begin(), dets.end());
          col.add(std::move(dets), meas_obs[meas_index], ch.p);
          break;
        }
      }
    }
    if (is_measurement(in.kind)) ++meas_index;
  }

  DetectorGraph g;
  g.num_detectors = static_cast<uint32_t>(circuit.detectors.size());
  g.sector.resize(g.num_detectors, '?');
  for (uint32_t d = 0; d < g.num_detectors; ++d) {
    if (!circuit.detectors[d].tag.empty()) g.sector[d] = circuit.detectors[d].tag[0];
  }
  g.num_undetected_logical = col.undetected_logical;

  // Fold composites into their components where a decomposition exists.
  for (auto& [key, p] : col.composite) {
    std::vector<Key> chosen;
    if (decompose(col.elementary, key.first, key.second, chosen)) {
      for (const Key& k : chosen) {
        double& ep = col.elementary[k];
        ep = combine(ep, p);
      }
    } else {
      ++g.num_undecomposable;
      g.undecomposable_prob += p;
    }
  }

  for (const auto& [key, p] : col.elementary) {
    DetectorGraph::Edge e;
    e.u = key.first[0];
    e.v = key.first.size() == 2 ? key.first[1] : DetectorGraph::kBoundary;
    e.p = p;
    const double q = std::min(p, 0.5 - 1e-12);
    e.weight = -std::log(q / (1.0 - q));
    e.obs_mask = key.second;
    g.edges.push_back(e);
  }
  return g;
}

std::string dump_edges(const DetectorGraph& graph) {
  std::ostringstream os;
  os << "p det " << graph.num_detectors << " " << graph.edges.size() << "\n";
  for (const auto& e : graph.edges) {
    os << "e " << e.u << " "
       << (e.v == DetectorGraph::kBoundary ? -1 : static_cast<int64_t>(e.v))
       << " " << e.p << " " << e.weight << " " << int(e.obs_mask) << "\n";
  }
  return os.str();
}

}  // namespace heraldsim
