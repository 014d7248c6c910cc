#include "heraldsim/frame.hpp"

#include <cassert>
#include <stdexcept>

#include "heraldsim/tableau.hpp"

namespace heraldsim {

FrameSim::FrameSim(const Circuit& circuit) : circuit_(circuit) {
  num_meas_ = circuit.num_measurements();
  fx_.resize(circuit.num_qubits);
  fz_.resize(circuit.num_qubits);

  // Noiseless reference execution.  ERR instructions are skipped: they are
  // deliberate error injections and must show up as frame flips.
  TableauSim ref(circuit.num_qubits, Rng(0x7265666572656eull));
  for (const auto& in : circuit.instructions) {
    if (in.kind == InstrKind::PauliError) continue;
    ref.apply(in);
  }
  reference_ = ref.record();

  meas_to_det_.resize(num_meas_);
  for (uint32_t d = 0; d < circuit.detectors.size(); ++d) {
    for (uint32_t m : circuit.detectors[d].measurements) {
      meas_to_det_[m].push_back(d);
    }
  }
  meas_obs_mask_.assign(num_meas_, 0);
  obs_x_.resize(circuit.observables.size());
  obs_z_.resize(circuit.observables.size());
  for (uint32_t o = 0; o < circuit.observables.size(); ++o) {
    const auto& obs = circuit.observables[o];
    for (uint32_t m : obs.measurements) {
      meas_obs_mask_[m] ^= static_cast<uint8_t>(1u << o);
    }
    obs_x_[o].assign(circuit.num_qubits, 0);
    obs_z_[o].assign(circuit.num_qubits, 0);
    for (uint32_t q = 0; q < circuit.num_qubits; ++q) {
      obs_x_[o][q] = obs.pauli.x(q);
      obs_z_[o][q] = obs.pauli.z(q);
    }
  }
}

void FrameSim::xor_pauli(uint32_t q, char letter) {
  switch (letter) {
    case 'I': break;
    case 'X': fx_[q] ^= 1; break;
    case 'Y': fx_[q] ^= 1; fz_[q] ^= 1; break;
    case 'Z': fz_[q] ^= 1; break;
    default: throw std::invalid_argument("bad pauli letter");
  }
}

void FrameSim::sample(const NoiseBinding& binding, Rng& rng, Shot& shot) {
  run(&binding, &rng, shot, /*randomize=*/true, 0, nullptr, nullptr, false);
}

FrameSim::FaultEffect FrameSim::propagate_fault(
    size_t instr_index, bool before, const std::vector<uint32_t>& targets,
    const std::string& letters) {
  Shot shot;
  run(nullptr, nullptr, shot, /*randomize=*/false, instr_index, &targets,
      &letters, before);
  FaultEffect eff;
  eff.obs_mask = shot.obs_mask;
  for (uint32_t d = 0; d < shot.detectors.size(); ++d) {
    if (shot.detectors[d]) eff.detectors.push_back(d);
  }
  return eff;
}

void FrameSim::run(const NoiseBinding* binding, Rng* rng, Shot& shot,
                   bool randomize, size_t start_index,
                   const std::vector<uint32_t>* fault_targets,
                   const std::string* fault_letters, bool fault_before) {
  const uint32_t n = circuit_.num_qubits;
  std::fill(fx_.begin(), fx_.end(), 0);
  std::fill(fz_.begin(), fz_.end(), 0);
  if (randomize) {
    for (uint32_t q = 0; q < n; ++q) fz_[q] = static_cast<uint8_t>(rng->bit());
  }
  shot.flips.assign(num_meas_, 0);
  shot.detectors.assign(circuit_.detectors.size(), 0);
  shot.obs_mask = 0;

  // Measurement index at the start instruction.
  uint32_t mi = 0;
  for (size_t i = 0; i < start_index; ++i) {
    if (is_measurement(circuit_.instructions[i].kind)) ++mi;
  }

  auto apply_channel = [&](const NoiseChannel& ch, const CircuitInstruction& in,
                           uint8_t& meas_flip) {
    switch (ch.kind) {
      case ChannelKind::Depolarize1:
        for (uint32_t q : in.targets) {
          std::string s = sample_depolarizing(ch.p, 1, *rng);
          if (!s.empty()) xor_pauli(q, s[0]);
        }
        break;
      case ChannelKind::Depolarize2: {
        std::string s = sample_depolarizing(ch.p, 2, *rng);
        if (!s.empty()) {
          xor_pauli(in.targets[0], s[0]);
          xor_pauli(in.targets[1], s[1]);
        }
        break;
      }
      case ChannelKind::PauliXYZ:
        for (uint32_t q : in.targets) {
          double u = rng->uniform();
          if (u < ch.px) xor_pauli(q, 'X');
          else if (u < ch.px + ch.py) xor_pauli(q, 'Y');
          else if (u < ch.px + ch.py + ch.pz) xor_pauli(q, 'Z');
        }
        break;
      case ChannelKind::MeasureFlip:
        if (rng->bernoulli(ch.p)) meas_flip ^= 1;
        break;
    }
  };

  auto record = [&](uint8_t flip) {
    if (flip) {
      shot.flips[mi] = 1;
      for (uint32_t d : meas_to_det_[mi]) shot.detectors[d] ^= 1;
      shot.obs_mask ^= meas_obs_mask_[mi];
    }
    ++mi;
  };

  for (size_t i = start_index; i < circuit_.instructions.size(); ++i) {
    const auto& in = circuit_.instructions[i];
    uint8_t meas_flip = 0;
    if (fault_targets && i == start_index && fault_before) {
      for (size_t t = 0; t < fault_targets->size(); ++t) {
        xor_pauli((*fault_targets)[t], (*fault_letters)[t]);
      }
    }
    if (binding) {
      for (const auto& ch : (*binding).channels[i]) {
        if (ch.before) apply_channel(ch, in, meas_flip);
      }
    }
    switch (in.kind) {
      case InstrKind::H: {
        uint32_t q = in.targets[0];
        std::swap(fx_[q], fz_[q]);
        break;
      }
      case InstrKind::CX: {
        uint32_t c = in.targets[0], t = in.targets[1];
        fx_[t] ^= fx_[c];
        fz_[c] ^= fz_[t];
        break;
      }
      case InstrKind::X:
      case InstrKind::Z:
      case InstrKind::Idle:
        break;
      case InstrKind::MeasureZ: {
        uint32_t q = in.targets[0];
        record(static_cast<uint8_t>(fx_[q] ^ meas_flip));
        if (randomize) fz_[q] ^= static_cast<uint8_t>(rng->bit());
        break;
      }
      case InstrKind::MeasureXX: {
        uint32_t a = in.targets[0], b = in.targets[1];
        record(static_cast<uint8_t>(fz_[a] ^ fz_[b] ^ meas_flip));
        if (randomize && rng->bit()) { fx_[a] ^= 1; fx_[b] ^= 1; }
        break;
      }
      case InstrKind::MeasureZZ: {
        uint32_t a = in.targets[0], b = in.targets[1];
        record(static_cast<uint8_t>(fx_[a] ^ fx_[b] ^ meas_flip));
        if (randomize && rng->bit()) { fz_[a] ^= 1; fz_[b] ^= 1; }
        break;
      }
      case InstrKind::Reset: {
        uint32_t q = in.targets[0];
        fx_[q] = 0;
        fz_[q] = randomize ? static_cast<uint8_t>(rng->bit()) : 0;
        break;
      }
      case InstrKind::PauliError:
        for (size_t t = 0; t < in.targets.size(); ++t) {
          xor_pauli(in.targets[t], in.paulis[t]);
        }
        break;
    }
    if (binding) {
      for (const auto& ch : (*binding).channels[i]) {
        if (!ch.before) apply_channel(ch, in, meas_flip);
      }
    }
    if (fault_targets && i == start_index && !fault_before) {
      for (size_t t = 0; t < fault_targets->size(); ++t) {
        xor_pauli((*fault_targets)[t], (*fault_letters)[t]);
      }
    }
  }

  // End-of-circuit frame vs. observable Paulis.
  for (uint32_t o = 0; o < obs_x_.size(); ++o) {
    uint8_t anti = 0;
    for (uint32_t q = 0; q < n; ++q) {
      anti ^= static_cast<uint8_t>((fx_[q] & obs_z_[o][q]) ^
                                   (fz_[q] & obs_x_[o][q]));
    }
    if (anti) shot.obs_mask ^= static_cast<uint8_t>(1u << o);
  }
}

}  // namespace heraldsim
