#pragma once

// Independent reference implementations used to validate the fast paths:
// a dense state-vector simulator with exhaustive measurement branching, and
// small utilities for comparing sampled outcome distributions against it.

#include <cmath>
#include <complex>
#include <map>
#include <string>
#include <vector>

#include "heraldsim/circuit.hpp"
#include "heraldsim/rng.hpp"
#include "heraldsim/tableau.hpp"

namespace heraldsim::testing {

// Exact outcome distribution of a small circuit (H/CX/X/Z/MeasureZ) over
// measurement bitstrings, computed by branching the dense state vector at
// every measurement.  Intended for <= 4 qubits and a handful of
// measurements.
class DenseOracle {
 public:
  static std::map<std::string, double> distribution(const Circuit& circuit) {
    std::map<std::string, double> dist;
    std::vector<std::complex<double>> state(size_t(1) << circuit.num_qubits);
    state[0] = 1.0;
    branch(circuit, 0, std::move(state), 1.0, std::string(), dist);
    return dist;
  }

 private:
  static void branch(const Circuit& circuit, size_t index,
                     std::vector<std::complex<double>> state, double prob,
                     std::string outcomes,
                     std::map<std::string, double>& dist) {
    const size_t dim = state.size();
    for (size_t i = index; i < circuit.instructions.size(); ++i) {
      const auto& in = circuit.instructions[i];
      switch (in.kind) {
        case InstrKind::H: {
          const size_t bit = size_t(1) << in.targets[0];
          const double s = 1.0 / std::sqrt(2.0);
          for (size_t k = 0; k < dim; ++k) {
            if (k & bit) continue;
            const auto a = state[k], b = state[k | bit];
            state[k] = s * (a + b);
            state[k | bit] = s * (a - b);
          }
          break;
        }
        case InstrKind::CX: {
          const size_t c = size_t(1) << in.targets[0];
          const size_t t = size_t(1) << in.targets[1];
          for (size_t k = 0; k < dim; ++k) {
            if ((k & c) && !(k & t)) std::swap(state[k], state[k | t]);
          }
          break;
        }
        case InstrKind::X: {
          const size_t bit = size_t(1) << in.targets[0];
          for (size_t k = 0; k < dim; ++k) {
            if (!(k & bit)) std::swap(state[k], state[k | bit]);
          }
          break;
        }
        case InstrKind::Z: {
          const size_t bit = size_t(1) << in.targets[0];
          for (size_t k = 0; k < dim; ++k) {
            if (k & bit) state[k] = -state[k];
          }
          break;
        }
        case InstrKind::Idle:
          break;
        case InstrKind::MeasureZ: {
          const size_t bit = size_t(1) << in.targets[0];
          double p1 = 0.0;
          for (size_t k = 0; k < dim; ++k) {
            if (k & bit) p1 += std::norm(state[k]);
          }
          for (int outcome : {0, 1}) {
            const double po = outcome ? p1 : 1.0 - p1;
            if (po < 1e-12) continue;
            auto next = state;
            const double norm = 1.0 / std::sqrt(po);
            for (size_t k = 0; k < dim; ++k) {
              if (((k & bit) != 0) != (outcome != 0)) {
                next[k] = 0.0;
              } else {
                next[k] *= norm;
              }
            }
            branch(circuit, i + 1, std::move(next), prob * po,
                   outcomes + char('0' + outcome), dist);
          }
          return;
        }
        default:
          throw std::runtime_error("dense oracle: unsupported instruction");
      }
    }
    dist[outcomes] += prob;
  }
};

// Random Clifford circuit on <= 4 qubits with a bounded number of
// mid-circuit Z measurements (keeps the outcome alphabet small enough for
// tight TVD bounds at 1e5 shots).
inline Circuit random_clifford_circuit(Rng& rng, int max_measurements = 4) {
  Circuit c;
  c.num_qubits = 2 + static_cast<uint32_t>(rng.below(3));
  const int gates = 10 + static_cast<int>(rng.below(21));  // 10..30
  int measurements = 0;
  for (int g = 0; g < gates; ++g) {
    const uint32_t q = static_cast<uint32_t>(rng.below(c.num_qubits));
    switch (rng.below(6)) {
      case 0:
        c.append(InstrKind::H, {q});
        break;
      case 1: {
        uint32_t t = static_cast<uint32_t>(rng.below(c.num_qubits - 1));
        if (t >= q) ++t;
        c.append(InstrKind::CX, {q, t});
        break;
      }
      case 2:
        c.append(InstrKind::X, {q});
        break;
      case 3:
        c.append(InstrKind::Z, {q});
        break;
      default:
        if (measurements < max_measurements) {
          c.append(InstrKind::MeasureZ, {q});
          ++measurements;
        } else {
          c.append(InstrKind::H, {q});
        }
        break;
    }
  }
  if (measurements == 0) c.append(InstrKind::MeasureZ, {0});
  return c;
}

// Outcome distribution of `shots` tableau samples of the same circuit.
inline std::map<std::string, double> tableau_distribution(
    const Circuit& circuit, long shots, uint64_t seed) {
  std::map<std::string, double> dist;
  for (long s = 0; s < shots; ++s) {
    TableauSim sim(circuit.num_qubits, Rng::substream(seed, 9, s));
    for (const auto& in : circuit.instructions) sim.apply(in);
    std::string key(sim.record().size(), '0');
    for (size_t i = 0; i < sim.record().size(); ++i) {
      key[i] = char('0' + sim.record()[i]);
    }
    dist[key] += 1.0 / shots;
  }
  return dist;
}

inline double total_variation(const std::map<std::string, double>& a,
                              const std::map<std::string, double>& b) {
  double tvd = 0.0;
  for (const auto& [k, v] : a) {
    auto it = b.find(k);
    tvd += std::abs(v - (it == b.end() ? 0.0 : it->second));
  }
  for (const auto& [k, v] : b) {
    if (!a.count(k)) tvd += v;
  }
  return tvd / 2.0;
}

// Largest tableau-vs-dense TVD over `circuits` random circuits.
inline double max_oracle_tvd(int circuits, long shots, uint64_t seed) {
  Rng gen(seed);
  double worst = 0.0;
  for (int i = 0; i < circuits; ++i) {
    const Circuit c = random_clifford_circuit(gen);
    const auto exact = DenseOracle::distribution(c);
    const auto sampled = tableau_distribution(c, shots, seed + 1000 + i);
    worst = std::max(worst, total_variation(exact, sampled));
  }
  return worst;
}

}  // namespace heraldsim::testing
