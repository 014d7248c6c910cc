#include <vector>

#include "doctest.h"
#include "heraldsim/frame.hpp"
#include "heraldsim/noise.hpp"
#include "heraldsim/surgery.hpp"
#include "heraldsim/tableau.hpp"

using namespace heraldsim;

namespace {

// Noisy tableau reference: samples every channel of `binding` explicitly and
// applies it to a full stabilizer simulation, so the Pauli-frame fast path
// can be checked against an independent backend.
std::vector<uint8_t> noisy_tableau_shot(const Circuit& circuit,
                                        const NoiseBinding& binding,
                                        Rng& rng, uint64_t collapse_seed) {
  TableauSim sim(circuit.num_qubits, Rng(collapse_seed));
  std::vector<uint8_t> flips;
  auto inject = [&](const NoiseChannel& ch, const CircuitInstruction& in,
                    uint8_t& meas_flip) {
    switch (ch.kind) {
      case ChannelKind::Depolarize1:
        for (uint32_t q : in.targets) {
          const std::string s = sample_depolarizing(ch.p, 1, rng);
          if (!s.empty()) {
            PauliString p(circuit.num_qubits);
            p.set_pauli(q, s[0]);
            sim.apply_pauli(p);
          }
        }
        break;
      case ChannelKind::Depolarize2: {
        const std::string s = sample_depolarizing(ch.p, 2, rng);
        if (!s.empty()) {
          PauliString p(circuit.num_qubits);
          p.set_pauli(in.targets[0], s[0]);
          p.set_pauli(in.targets[1], s[1]);
          sim.apply_pauli(p);
        }
        break;
      }
      case ChannelKind::PauliXYZ:
        for (uint32_t q : in.targets) {
          const double u = rng.uniform();
          char letter = 'I';
          if (u < ch.px) letter = 'X';
          else if (u < ch.px + ch.py) letter = 'Y';
          else if (u < ch.px + ch.py + ch.pz) letter = 'Z';
          if (letter != 'I') {
            PauliString p(circuit.num_qubits);
            p.set_pauli(q, letter);
            sim.apply_pauli(p);
          }
        }
        break;
      case ChannelKind::MeasureFlip:
        if (rng.bernoulli(ch.p)) meas_flip ^= 1;
        break;
    }
  };
  for (size_t i = 0; i < circuit.instructions.size(); ++i) {
    const auto& in = circuit.instructions[i];
    uint8_t meas_flip = 0;
    for (const auto& ch : binding.channels[i]) {
      if (ch.before) inject(ch, in, meas_flip);
    }
    if (in.kind != InstrKind::PauliError) sim.apply(in);
    if (is_measurement(in.kind)) flips.push_back(meas_flip);
    for (const auto& ch : binding.channels[i]) {
      if (!ch.before) inject(ch, in, meas_flip);
    }
  }
  std::vector<uint8_t> outcomes(sim.record());
  for (size_t m = 0; m < outcomes.size(); ++m) outcomes[m] ^= flips[m];
  return outcomes;
}

double detector_rate_tableau(const Circuit& circuit,
                             const NoiseBinding& binding, int shots,
                             uint64_t seed) {
  long flips = 0;
  FrameSim ref(circuit);  // reference outcomes for detector parities
  for (int s = 0; s < shots; ++s) {
    Rng rng = Rng::substream(seed, 21, s);
    const auto outcomes =
        noisy_tableau_shot(circuit, binding, rng, seed + 7777 + s);
    for (const auto& det : circuit.detectors) {
      uint8_t bit = 0;
      for (uint32_t m : det.measurements) {
        bit ^= outcomes[m] ^ ref.reference()[m];
      }
      flips += bit;
    }
  }
  return double(flips) / (double(shots) * circuit.detectors.size());
}

double detector_rate_frame(const Circuit& circuit, const NoiseBinding& binding,
                           int shots, uint64_t seed) {
  FrameSim sim(circuit);
  FrameSim::Shot shot;
  long flips = 0;
  for (int s = 0; s < shots; ++s) {
    Rng rng = Rng::substream(seed, 22, s);
    sim.sample(binding, rng, shot);
    for (uint8_t b : shot.detectors) flips += b;
  }
  return double(flips) / (double(shots) * circuit.detectors.size());
}

}  // namespace

TEST_CASE("noiseless sampling never fires detectors or observables") {
  GateTimes times;
  for (CodeFamily fam : {CodeFamily::RotatedSurface, CodeFamily::PlanarSurface,
                         CodeFamily::BaconShor}) {
    BellCircuit bell = build_bell_circuit({fam, 3}, times, MergeConfig{});
    FrameSim sim(bell.circuit);
    NoiseBinding none = NoiseBinding::none(bell.circuit);
    Rng rng(5);
    FrameSim::Shot shot;
    for (int s = 0; s < 500; ++s) {
      sim.sample(none, rng, shot);
      for (uint8_t b : shot.detectors) CHECK(b == 0);
      CHECK(shot.obs_mask == 0);
    }
  }
}

TEST_CASE("frame detector flip rate matches a noisy tableau reference") {
  GateTimes times;
  MemoryCircuit mem =
      build_memory_circuit({CodeFamily::RotatedSurface, 3}, times, 3, true);
  NoiseBinding binding = bind_depolarizing(mem.circuit, {1e-2});
  const int shots = 4000;
  const double rf = detector_rate_frame(mem.circuit, binding, shots, 31);
  const double rt = detector_rate_tableau(mem.circuit, binding, shots, 32);
  CHECK(rf > 0.0);
  CHECK(rt > 0.0);
  CHECK(rf == doctest::Approx(rt).epsilon(0.2));
}

TEST_CASE("propagate_fault matches an injected PauliError instruction") {
  GateTimes times;
  BellCircuit bell =
      build_bell_circuit({CodeFamily::RotatedSurface, 3}, times, MergeConfig{});
  FrameSim sim(bell.circuit);
  // An X on a seam qubit right after the first merged-round instruction must
  // flip at least one detector and leave the decoded observables intact.
  const uint32_t q = bell.seam.front();
  const auto eff = sim.propagate_fault(10, false, {q}, "X");
  const auto eff2 = sim.propagate_fault(10, false, {q}, "X");
  CHECK(eff.detectors == eff2.detectors);  // deterministic
  CHECK(eff.obs_mask == eff2.obs_mask);
}
