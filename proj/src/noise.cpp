#include "heraldsim/noise.hpp"

#include <cmath>
#include <stdexcept>

namespace heraldsim {

namespace {

// Instructions tagged "perfect" (e.g. the closure round) are noiseless.
bool is_perfect(const CircuitInstruction& in) {
  return in.tag.rfind("perfect", 0) == 0;
}

// Idles tagged "linkdepol:<p>" inject a fixed depolarizing channel regardless
// of the noise model (heralded-link and readout error stand-ins).
double link_depol(const CircuitInstruction& in) {
  constexpr const char* kPrefix = "linkdepol:";
  if (in.kind == InstrKind::Idle && in.tag.rfind(kPrefix, 0) == 0) {
    return std::stod(in.tag.substr(10));
  }
  return -1.0;
}

}  // namespace

NoiseBinding NoiseBinding::none(const Circuit& circuit) {
  NoiseBinding b;
  b.channels.resize(circuit.instructions.size());
  return b;
}

NoiseBinding bind_depolarizing(const Circuit& circuit,
                               const DepolarizingParams& params) {
  NoiseBinding b = NoiseBinding::none(circuit);
  const double p = params.p_err;
  if (p < 0 || p > 1) throw std::invalid_argument("p_err out of range");
  for (size_t i = 0; i < circuit.instructions.size(); ++i) {
    const auto& in = circuit.instructions[i];
    if (is_perfect(in)) continue;
    if (double pl = link_depol(in); pl >= 0) {
      b.channels[i].push_back({ChannelKind::Depolarize1, pl, 0, 0, 0, false});
      continue;
    }
    switch (in.kind) {
      case InstrKind::H:
      case InstrKind::X:
      case InstrKind::Z:
        b.channels[i].push_back({ChannelKind::Depolarize1, p, 0, 0, 0, false});
        break;
      case InstrKind::CX:
        b.channels[i].push_back({ChannelKind::Depolarize2, p, 0, 0, 0, false});
        break;
      case InstrKind::MeasureZ:
        b.channels[i].push_back({ChannelKind::Depolarize1, p, 0, 0, 0, true});
        break;
      case InstrKind::MeasureXX:
      case InstrKind::MeasureZZ:
        // Two-gate channel applied per involved qubit; a correlated pair
        // channel would let one fault lay half a logical along the gauge
        // axis, which d=3 cannot disambiguate.
        b.channels[i].push_back({ChannelKind::Depolarize1, p, 0, 0, 0, true});
        break;
      case InstrKind::Idle:
        // One single-qubit channel per idle layer the qubit sits through.
        b.channels[i].push_back({ChannelKind::Depolarize1, p, 0, 0, 0, false});
        break;
      case InstrKind::Reset:
      case InstrKind::PauliError:
        break;
    }
  }
  return b;
}

IdleChannel idle_pauli_twirl(double t, double t1, double t2) {
  const double p_relax = 1.0 - std::exp(-t / t1);
  const double p_deph = 1.0 - std::exp(-t / t2);
  IdleChannel c;
  c.px = p_relax / 4.0;
  c.py = p_relax / 4.0;
  c.pz = p_deph / 2.0 - p_relax / 4.0;
  if (c.pz < 0) throw std::invalid_argument("T2 > 2*T1 is unphysical");
  return c;
}

NoiseBinding bind_physical(const Circuit& circuit,
                           const PhysicalParams& params) {
  NoiseBinding b = NoiseBinding::none(circuit);
  const double ph = params.xi * params.p_err_h;
  const double pcx = params.xi * params.p_err_cx;
  const double pm = params.xi * params.p_err_m;
  for (size_t i = 0; i < circuit.instructions.size(); ++i) {
    const auto& in = circuit.instructions[i];
    if (is_perfect(in)) continue;
    if (double pl = link_depol(in); pl >= 0) {
      b.channels[i].push_back({ChannelKind::Depolarize1, pl, 0, 0, 0, false});
      continue;
    }
    switch (in.kind) {
      case InstrKind::H:
      case InstrKind::X:
      case InstrKind::Z:
        b.channels[i].push_back({ChannelKind::Depolarize1, ph, 0, 0, 0, false});
        break;
      case InstrKind::CX:
        b.channels[i].push_back({ChannelKind::Depolarize2, pcx, 0, 0, 0, false});
        break;
      case InstrKind::MeasureZ:
        b.channels[i].push_back({ChannelKind::MeasureFlip, pm, 0, 0, 0, true});
        break;
      case InstrKind::MeasureXX:
      case InstrKind::MeasureZZ:
        // Transpiled parity measurement: one CX worth of error before the
        // readout and one after, plus the readout flip itself.
        b.channels[i].push_back({ChannelKind::Depolarize2, pcx, 0, 0, 0, true});
        b.channels[i].push_back({ChannelKind::MeasureFlip, pm, 0, 0, 0, true});
        b.channels[i].push_back(
            {ChannelKind::Depolarize2, pcx, 0, 0, 0, false});
        break;
      case InstrKind::Idle: {
        if (in.duration <= 0) break;
        IdleChannel c = idle_pauli_twirl(in.duration, params.t1, params.t2);
        b.channels[i].push_back(
            {ChannelKind::PauliXYZ, c.px + c.py + c.pz, c.px, c.py, c.pz,
             false});
        break;
      }
      case InstrKind::Reset:
      case InstrKind::PauliError:
        break;
    }
  }
  return b;
}

std::vector<double> channel_probabilities(const NoiseChannel& channel) {
  std::vector<double> terms;
  switch (channel.kind) {
    case ChannelKind::Depolarize1:
      terms.assign(3, channel.p / 3.0);
      break;
    case ChannelKind::Depolarize2:
      terms.assign(15, channel.p / 15.0);
      break;
    case ChannelKind::PauliXYZ:
      terms = {channel.px, channel.py, channel.pz};
      break;
    case ChannelKind::MeasureFlip:
      terms = {channel.p};
      break;
  }
  double sum = 0.0;
  for (double t : terms) sum += t;
  std::vector<double> probs;
  probs.reserve(terms.size() + 1);
  probs.push_back(1.0 - sum);
  probs.insert(probs.end(), terms.begin(), terms.end());
  return probs;
}

std::string sample_depolarizing(double p_err, int arity, Rng& rng) {
  if (!rng.bernoulli(p_err)) return {};
  static const char letters[] = "IXYZ";
  if (arity == 1) {
    return std::string(1, letters[1 + rng.below(3)]);
  }
  uint64_t k = 1 + rng.below(15);
  std::string out(2, 'I');
  out[0] = letters[k >> 2];
  out[1] = letters[k & 3];
  return out;
}

std::vector<CircuitInstruction> transpile_parity_measurement(
    char basis, uint32_t q0, uint32_t q1, const GateTimes& times,
    const std::string& tag) {
  std::vector<CircuitInstruction> out;
  auto add = [&](InstrKind k, std::vector<uint32_t> ts, double dur,
                 std::string t = {}) {
    CircuitInstruction in;
    in.kind = k;
    in.targets = std::move(ts);
    in.duration = dur;
    in.tag = std::move(t);
    out.push_back(std::move(in));
  };
  if (basis == 'Z') {
    // CX, MZ(q1), CX measures Z q0 Z q1 and restores the joint state.
    add(InstrKind::CX, {q0, q1}, times.t_cx);
    add(InstrKind::MeasureZ, {q1}, times.t_m, tag);
    add(InstrKind::CX, {q0, q1}, times.t_cx);
  } else if (basis == 'X') {
    // CX, H(q0), MZ(q0), H(q0), CX measures X q0 X q1.
    add(InstrKind::CX, {q0, q1}, times.t_cx);
    add(InstrKind::H, {q0}, times.t_h);
    add(InstrKind::MeasureZ, {q0}, times.t_m, tag);
    add(InstrKind::H, {q0}, times.t_h);
    add(InstrKind::CX, {q0, q1}, times.t_cx);
  } else {
    throw std::invalid_argument("basis must be 'X' or 'Z'");
  }
  return out;
}

}  // namespace heraldsim
