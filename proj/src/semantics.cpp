#include <algorithm>
#include <stdexcept>
#include <vector>

#include "heraldsim/circuit.hpp"
#include "heraldsim/tableau.hpp"

namespace heraldsim {

namespace {

// Symmetric difference of two sorted index sets.
std::vector<uint32_t> sym_diff(const std::vector<uint32_t>& a,
                               const std::vector<uint32_t>& b) {
  std::vector<uint32_t> out;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                std::back_inserter(out));
  return out;
}

// Drops elements appearing an even number of times.
std::vector<uint32_t> reduce_mod2(std::vector<uint32_t> v) {
  std::sort(v.begin(), v.end());
  std::vector<uint32_t> out;
  for (size_t i = 0; i < v.size();) {
    size_t j = i;
    while (j < v.size() && v[j] == v[i]) ++j;
    if ((j - i) & 1) out.push_back(v[i]);
    i = j;
  }
  return out;
}

}  // namespace

void finalize_semantics(Circuit& circuit) {
  const uint32_t num_meas = circuit.num_measurements();
  TableauSim sim(circuit.num_qubits, Rng(0x73796d626f6cull),
                 /*track_symbols=*/true, num_meas + 1);
  for (const auto& in : circuit.instructions) {
    if (in.kind == InstrKind::PauliError) continue;
    sim.apply(in);
  }
  const auto& info = sim.measurement_info();

  // Expresses the parity of a measurement set over the basis of random
  // ("symbol") measurement outcomes.  The representation is unique, so two
  // candidate sets evaluate the same check instance iff their symbol sets
  // match.
  auto symbol_set = [&](const std::vector<uint32_t>& c) {
    std::vector<uint32_t> all;
    for (uint32_t m : c) {
      if (m >= info.size()) throw std::out_of_range("chain measurement index");
      if (info[m].random) {
        all.push_back(m);
      } else {
        all.insert(all.end(), info[m].depends_on.begin(),
                   info[m].depends_on.end());
      }
    }
    return reduce_mod2(std::move(all));
  };

  circuit.detectors.clear();
  for (const auto& chain : circuit.detector_chains) {
    std::vector<uint32_t> prev_c, prev_s;
    bool have_prev = false;
    for (size_t k = 0; k < chain.rounds.size(); ++k) {
      std::vector<uint32_t> c = chain.rounds[k];
      std::sort(c.begin(), c.end());
      std::vector<uint32_t> s = symbol_set(c);
      std::vector<uint32_t> det;
      if (have_prev && s == prev_s) {
        det = sym_diff(c, prev_c);  // consecutive-round comparison
      } else {
        det = sym_diff(c, s);  // first determination of this check value
      }
      if (!det.empty()) {
        Detector d;
        d.measurements = std::move(det);
        d.tag = chain.tag + ":" + std::to_string(k);
        circuit.detectors.push_back(std::move(d));
      }
      prev_c = std::move(c);
      prev_s = std::move(s);
      have_prev = true;
    }
  }

  for (auto& obs : circuit.observables) {
    auto deps = sim.peek_dependencies(obs.pauli);
    if (!deps) {
      throw std::runtime_error("observable '" + obs.name +
                               "' is not deterministic at end of circuit");
    }
    std::sort(deps->begin(), deps->end());
    obs.measurements = std::move(*deps);
  }
}

}  // namespace heraldsim
