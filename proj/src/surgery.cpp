#include "heraldsim/surgery.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace heraldsim {

namespace {

constexpr uint32_t kNoQubit = UINT32_MAX;

// Incremental circuit assembly with explicit idle accounting: qubits become
// active on first use and every active qubit untouched by a nonzero-duration
// layer receives an Idle of that duration.
class Accum {
 public:
  explicit Accum(uint32_t n) : touched_(n, 0), active_(n, 0) {
    circuit.num_qubits = n;
  }

  void begin_layer() { std::fill(touched_.begin(), touched_.end(), 0); }

  uint32_t add(InstrKind kind, std::vector<uint32_t> targets, double duration,
               std::string tag = {}) {
    for (uint32_t q : targets) {
      touched_[q] = 1;
      active_[q] = 1;
    }
    CircuitInstruction in;
    in.kind = kind;
    in.targets = std::move(targets);
    in.duration = duration;
    in.tag = std::move(tag);
    const bool meas = is_measurement(in.kind);
    circuit.append(std::move(in));
    return meas ? num_meas_++ : 0;
  }

  void end_layer(double duration, bool perfect) {
    if (duration <= 0.0) return;
    for (uint32_t q = 0; q < touched_.size(); ++q) {
      if (active_[q] && !touched_[q]) {
        add(InstrKind::Idle, {q}, duration, perfect ? "perfect" : "");
      }
    }
  }

  void idle_layer(const std::vector<uint32_t>& qubits, double duration,
                  std::string tag = {}) {
    for (uint32_t q : qubits) add(InstrKind::Idle, {q}, duration, tag);
  }

  void deactivate(const std::vector<uint32_t>& qubits) {
    for (uint32_t q : qubits) active_[q] = 0;
  }

  void candidate(const std::string& tag, std::vector<uint32_t> meas) {
    auto it = chain_index_.find(tag);
    if (it == chain_index_.end()) {
      it = chain_index_.emplace(tag, circuit.detector_chains.size()).first;
      circuit.detector_chains.push_back({tag, {}});
    }
    circuit.detector_chains[it->second].rounds.push_back(std::move(meas));
  }

  Circuit circuit;
  uint32_t num_meas_ = 0;

 private:
  std::vector<uint8_t> touched_;
  std::vector<uint8_t> active_;
  std::map<std::string, size_t> chain_index_;
};

// ---------------------------------------------------------------------------
// Surface-code syndrome round (rotated & planar share slot conventions).

struct SurfaceRound {
  const std::vector<Check>* checks;
  std::vector<uint32_t> reset_data;  // data reset in the reset layer
  std::vector<uint32_t> h_data;      // transversal/seam H in the first H layer
  std::vector<uint32_t> seam_mz;     // split measurements in the meas layer
  std::string meas_tag;
  bool perfect = false;
  const std::map<std::string, std::vector<uint32_t>>* extra_bits = nullptr;
};

// Returns the split measurement indices (aligned with seam_mz).
std::vector<uint32_t> surface_round(Accum& acc, const SurfaceRound& r,
                                    const GateTimes& times,
                                    uint32_t* split_counter) {
  const double th = r.perfect ? 0.0 : times.t_h;
  const double tcx = r.perfect ? 0.0 : times.t_cx;
  const double tm = r.perfect ? 0.0 : times.t_m;
  const std::string ptag = r.perfect ? "perfect" : "";
  const auto& checks = *r.checks;

  acc.begin_layer();
  for (uint32_t q : r.reset_data) acc.add(InstrKind::Reset, {q}, 0.0, ptag);
  for (const auto& ch : checks) acc.add(InstrKind::Reset, {ch.ancilla}, 0.0, ptag);
  acc.end_layer(0.0, r.perfect);

  acc.begin_layer();
  for (uint32_t q : r.h_data) acc.add(InstrKind::H, {q}, th, ptag);
  for (const auto& ch : checks) {
    if (ch.type == 'X') acc.add(InstrKind::H, {ch.ancilla}, th, ptag);
  }
  acc.end_layer(th, r.perfect);

  // Slot orders avoid hook errors: Z checks NW,NE,SW,SE; X checks NW,SW,NE,SE
  // (planar: N,W,E,S and N,E,W,S respectively).
  static const int kOrderZ[4] = {0, 1, 2, 3};
  static const int kOrderX[4] = {0, 2, 1, 3};
  for (int step = 0; step < 4; ++step) {
    acc.begin_layer();
    for (const auto& ch : checks) {
      const int slot = (ch.type == 'Z' ? kOrderZ : kOrderX)[step];
      const uint32_t dq = ch.data[slot];
      if (dq == kNoQubit) continue;
      if (ch.type == 'Z') {
        acc.add(InstrKind::CX, {dq, ch.ancilla}, tcx, ptag);
      } else {
        acc.add(InstrKind::CX, {ch.ancilla, dq}, tcx, ptag);
      }
    }
    acc.end_layer(tcx, r.perfect);
  }

  acc.begin_layer();
  for (const auto& ch : checks) {
    if (ch.type == 'X') acc.add(InstrKind::H, {ch.ancilla}, th, ptag);
  }
  acc.end_layer(th, r.perfect);

  acc.begin_layer();
  std::vector<uint32_t> split_meas;
  for (uint32_t q : r.seam_mz) {
    std::string tag = "split.aux." + std::to_string((*split_counter)++);
    if (r.perfect) tag = "perfect." + tag;
    split_meas.push_back(acc.add(InstrKind::MeasureZ, {q}, tm, tag));
  }
  for (const auto& ch : checks) {
    uint32_t m = acc.add(InstrKind::MeasureZ, {ch.ancilla}, tm,
                         r.perfect ? ptag : r.meas_tag);
    std::vector<uint32_t> cand{m};
    if (r.extra_bits) {
      auto it = r.extra_bits->find(ch.tag);
      if (it != r.extra_bits->end()) {
        cand.insert(cand.end(), it->second.begin(), it->second.end());
      }
    }
    acc.candidate(ch.tag, std::move(cand));
  }
  acc.end_layer(tm, r.perfect);
  return split_meas;
}

// ---------------------------------------------------------------------------
// Bacon-Shor gauge round: four sub-layers (two XX groups, two ZZ groups),
// native parity gates or the transpiled CX/H/MZ realization.

struct BsRound {
  std::vector<const PatchLayout*> layouts;
  std::vector<uint32_t> reset_data;
  std::vector<uint32_t> seam_mz;  // split measurements, 0-duration pre-layer
  std::string meas_tag;
  bool perfect = false;
  bool native = false;
};

struct BsRoundResult {
  std::vector<std::vector<uint32_t>> gauge_meas;  // per layout, per gauge
  std::vector<uint32_t> split_meas;
};

BsRoundResult bs_round(Accum& acc, const BsRound& r, const GateTimes& times,
                       uint32_t* split_counter) {
  const double th = r.perfect ? 0.0 : times.t_h;
  const double tcx = r.perfect ? 0.0 : times.t_cx;
  const double tm = r.perfect ? 0.0 : times.t_m;
  const std::string ptag = r.perfect ? "perfect" : "";

  BsRoundResult res;
  res.gauge_meas.resize(r.layouts.size());
  for (size_t l = 0; l < r.layouts.size(); ++l) {
    res.gauge_meas[l].assign(r.layouts[l]->gauges.size(), 0);
  }

  if (!r.reset_data.empty() || !r.seam_mz.empty()) {
    acc.begin_layer();
    for (uint32_t q : r.reset_data) acc.add(InstrKind::Reset, {q}, 0.0, ptag);
    for (uint32_t q : r.seam_mz) {
      std::string tag = "split.aux." + std::to_string((*split_counter)++);
      if (r.perfect) tag = "perfect." + tag;
      res.split_meas.push_back(acc.add(InstrKind::MeasureZ, {q}, 0.0, tag));
    }
    acc.end_layer(0.0, r.perfect);
  }

  for (int group = 0; group < 4; ++group) {
    // Gather this group's gauges across layouts.
    std::vector<std::pair<size_t, uint32_t>> active;  // (layout, gauge index)
    char type = group < 2 ? 'X' : 'Z';
    for (size_t l = 0; l < r.layouts.size(); ++l) {
      const auto& gs = r.layouts[l]->gauges;
      for (uint32_t gi = 0; gi < gs.size(); ++gi) {
        if (gs[gi].group == group) active.push_back({l, gi});
      }
    }
    auto gauge = [&](size_t k) -> const GaugeOp& {
      return r.layouts[active[k].first]->gauges[active[k].second];
    };
    auto record = [&](size_t k, uint32_t m) {
      res.gauge_meas[active[k].first][active[k].second] = m;
    };
    if (r.native) {
      // Layer duration reflects the transpiled realization (CX + MZ + CX,
      // with basis-change H pairs for MXX).
      const double dur = r.perfect ? 0.0
                         : type == 'X' ? 2 * tcx + 2 * th + tm
                                       : 2 * tcx + tm;
      acc.begin_layer();
      for (size_t k = 0; k < active.size(); ++k) {
        const auto& g = gauge(k);
        record(k, acc.add(type == 'X' ? InstrKind::MeasureXX
                                      : InstrKind::MeasureZZ,
                          {g.q0, g.q1}, dur, r.perfect ? ptag : r.meas_tag));
      }
      acc.end_layer(dur, r.perfect);
    } else if (type == 'X') {
      // CX, H(q0), MZ(q0), H(q0), CX realizes M_XX.
      acc.begin_layer();
      for (size_t k = 0; k < active.size(); ++k) {
        const auto& g = gauge(k);
        acc.add(InstrKind::CX, {g.q0, g.q1}, tcx, ptag);
      }
      acc.end_layer(tcx, r.perfect);
      acc.begin_layer();
      for (size_t k = 0; k < active.size(); ++k) {
        acc.add(InstrKind::H, {gauge(k).q0}, th, ptag);
      }
      acc.end_layer(th, r.perfect);
      acc.begin_layer();
      for (size_t k = 0; k < active.size(); ++k) {
        record(k, acc.add(InstrKind::MeasureZ, {gauge(k).q0}, tm,
                          r.perfect ? ptag : r.meas_tag));
      }
      acc.end_layer(tm, r.perfect);
      acc.begin_layer();
      for (size_t k = 0; k < active.size(); ++k) {
        acc.add(InstrKind::H, {gauge(k).q0}, th, ptag);
      }
      acc.end_layer(th, r.perfect);
      acc.begin_layer();
      for (size_t k = 0; k < active.size(); ++k) {
        const auto& g = gauge(k);
        acc.add(InstrKind::CX, {g.q0, g.q1}, tcx, ptag);
      }
      acc.end_layer(tcx, r.perfect);
    } else {
      // CX, MZ(q1), CX realizes M_ZZ.
      acc.begin_layer();
      for (size_t k = 0; k < active.size(); ++k) {
        const auto& g = gauge(k);
        acc.add(InstrKind::CX, {g.q0, g.q1}, tcx, ptag);
      }
      acc.end_layer(tcx, r.perfect);
      acc.begin_layer();
      for (size_t k = 0; k < active.size(); ++k) {
        record(k, acc.add(InstrKind::MeasureZ, {gauge(k).q1}, tm,
                          r.perfect ? ptag : r.meas_tag));
      }
      acc.end_layer(tm, r.perfect);
      acc.begin_layer();
      for (size_t k = 0; k < active.size(); ++k) {
        const auto& g = gauge(k);
        acc.add(InstrKind::CX, {g.q0, g.q1}, tcx, ptag);
      }
      acc.end_layer(tcx, r.perfect);
    }
  }
  return res;
}

std::vector<uint32_t> concat(const std::vector<uint32_t>& a,
                             const std::vector<uint32_t>& b) {
  std::vector<uint32_t> out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

// Candidate sets for one Bacon-Shor round: X stabilizers per patch; Z
// row-pair stabilizers optionally combined across both patches plus the seam
// split bits (post-split rounds, where only the A+B product is deterministic).
void bs_candidates(Accum& acc, const PatchLayout& layout,
                   const std::vector<uint32_t>& meas) {
  for (const auto& st : layout.stabilizers) {
    std::vector<uint32_t> cand;
    for (uint32_t gi : st.gauge_indices) cand.push_back(meas[gi]);
    acc.candidate(st.tag, std::move(cand));
  }
}

}  // namespace

MergeOutcome collect_outcome(const ByproductPlan& plan,
                             const std::vector<uint8_t>& outcomes) {
  MergeOutcome out;
  for (uint32_t m : plan.split_measurements) {
    if (m >= outcomes.size()) throw std::invalid_argument("missing split bit");
    out.b_i.push_back(outcomes[m]);
    if (outcomes[m]) out.b = -out.b;
  }
  return out;
}

LogicalFrame apply_byproduct(LogicalFrame frame, const MergeOutcome& outcome,
                             const ByproductPlan& plan) {
  if (outcome.b_i.size() != plan.split_measurements.size()) {
    throw std::invalid_argument("incomplete outcome bits");
  }
  if (outcome.b == -1) {
    if (plan.correction_logical == 'Z') frame.z_on_a ^= 1;
    else frame.x_on_a ^= 1;
  }
  return frame;
}

BellCircuit build_bell_circuit(const CodeSpec& spec, const GateTimes& times,
                               const MergeConfig& config) {
  const int d = spec.d;
  const int cycles = config.cycles > 0 ? config.cycles : d;
  const bool planar = spec.family == CodeFamily::PlanarSurface;
  const bool bs = spec.family == CodeFamily::BaconShor;
  const int g = planar ? 2 * d - 1 : d;        // patch grid extent
  const int seam_col = planar ? 2 * d - 1 : d;  // seam column (one wide)
  const int b_col0 = planar ? 2 * d : d + 1;

  QubitAlloc alloc;
  PatchLayout a = make_layout(spec.family, alloc, 0, 0, g, g);
  PatchLayout b = make_layout(spec.family, alloc, 0, b_col0, g, g);
  PatchLayout merged =
      make_layout(spec.family, alloc, 0, 0, g, planar ? 4 * d - 1 : 2 * d + 1);

  // Seam data qubits (in merged, between the patches).
  std::vector<uint32_t> seam;
  for (int r = 0; r < g; ++r) {
    if (planar && ((r + seam_col) & 1) != 0) continue;
    seam.push_back(alloc.data(r, seam_col));
  }

  BellCircuit bell;
  bell.num_qubits = alloc.count();
  bell.a_data = a.data;
  bell.b_data = b.data;
  bell.seam = seam;
  CyclePlan plan = cycle_plan(spec, times, config.native_parity);
  bell.t_cycle = plan.t_cycle;
  bell.t_merge = (cycles + config.settle_rounds) * plan.t_cycle;

  Accum acc(bell.num_qubits);
  uint32_t split_counter = 0;
  std::vector<uint32_t> ab_data = concat(a.data, b.data);
  std::vector<uint32_t> all_data = concat(ab_data, seam);

  std::vector<uint32_t> split_meas;
  std::map<std::string, std::vector<uint32_t>> extra_bits;  // surface only

  if (!bs) {
    std::vector<Check> ab_checks = a.checks;
    ab_checks.insert(ab_checks.end(), b.checks.begin(), b.checks.end());
    auto standalone_round = [&](bool first, bool settle, bool perfect,
                                const std::string& tag) {
      SurfaceRound r;
      r.checks = &ab_checks;
      if (first) {
        r.reset_data = ab_data;
        r.h_data = ab_data;  // transversal |+>_L on both patches
      }
      if (settle) {
        r.h_data = seam;    // X-basis split
        r.seam_mz = seam;
      }
      r.meas_tag = tag;
      r.perfect = perfect;
      r.extra_bits = extra_bits.empty() ? nullptr : &extra_bits;
      return surface_round(acc, r, times, &split_counter);
    };

    for (int k = 0; k < config.init_rounds; ++k) {
      standalone_round(k == 0, false, config.perfect_prep,
                       "init.cycle." + std::to_string(k));
    }
    for (int k = 0; k < cycles; ++k) {
      if (!config.perfect_prep) {
        if (config.seam_wait > 0) acc.idle_layer(all_data, config.seam_wait);
        if (config.seam_depol > 0) {
          acc.idle_layer(seam, 0.0,
                         "linkdepol:" + std::to_string(config.seam_depol));
        }
      }
      SurfaceRound r;
      r.checks = &merged.checks;
      if (k == 0) {
        r.reset_data = seam;
        r.h_data = seam;  // seam initialized in the preserved (X) basis
      }
      r.meas_tag = "merge.cycle." + std::to_string(k);
      r.perfect = config.perfect_prep;
      surface_round(acc, r, times, &split_counter);
    }
    // Settle round: seam split folded into its H and measurement layers.
    // Checks that had seam support in the merged layout carry the adjacent
    // split bits in their candidates from here on.
    {
      // A patch check whose merged twin (same anchor) has seam legs carries
      // the adjacent split bits in its candidates from the settle round on.
      // The split bits are emitted first in the settle measurement layer, in
      // seam order, so their indices are known before emitting the round.
      std::map<std::pair<int, int>, const Check*> merged_by_anchor;
      for (const auto& ch : merged.checks) merged_by_anchor[ch.anchor] = &ch;
      std::set<uint32_t> seam_set(seam.begin(), seam.end());
      std::map<uint32_t, uint32_t> predicted;  // seam qubit -> split index
      for (size_t i = 0; i < seam.size(); ++i) {
        predicted[seam[i]] = acc.num_meas_ + static_cast<uint32_t>(i);
      }
      auto note_legs = [&](const PatchLayout& p) {
        for (const auto& ch : p.checks) {
          auto it = merged_by_anchor.find(ch.anchor);
          if (it == merged_by_anchor.end()) continue;
          for (uint32_t q : it->second->data) {
            if (q != kNoQubit && seam_set.count(q)) {
              extra_bits[ch.tag].push_back(predicted[q]);
            }
          }
        }
      };
      note_legs(a);
      note_legs(b);
      split_meas = standalone_round(false, true, config.perfect_prep, "settle");
      for (size_t i = 0; i < seam.size(); ++i) {
        if (split_meas[i] != predicted[seam[i]]) {
          throw std::logic_error("split index prediction failed");
        }
      }
    }
    acc.deactivate(seam);
    if (config.transmit_idle > 0) acc.idle_layer(ab_data, config.transmit_idle);
    for (int k = 0; k < config.memory_rounds; ++k) {
      standalone_round(false, false, false, "memory.cycle." + std::to_string(k));
    }
    if (config.readout_idle > 0) acc.idle_layer(ab_data, config.readout_idle);
    if (config.closure_round) standalone_round(false, false, true, "closure");
  } else {
    // Bacon-Shor.  X stabilizers chain per patch throughout (their tags
    // match the merged layout's over each patch's columns).  Z row-pair
    // candidates are combined across both patches and fed to the merged
    // full-width chain tag, so the init->merge and merge->split transitions
    // compare consecutive rounds instead of flipping two chains at once.
    auto patch_x_candidates = [&](const BsRoundResult& res) {
      for (size_t l = 0; l < 2; ++l) {
        const PatchLayout& p = l == 0 ? a : b;
        for (const auto& st : p.stabilizers) {
          if (st.type != 'X') continue;
          std::vector<uint32_t> cand;
          for (uint32_t gi : st.gauge_indices) {
            cand.push_back(res.gauge_meas[l][gi]);
          }
          acc.candidate(st.tag, std::move(cand));
        }
      }
    };
    // with_bits: post-split rounds add the two adjacent seam split bits
    // (only the joint product with them is deterministic after the merge).
    auto combined_z_candidates = [&](const BsRoundResult& res, bool with_bits) {
      for (int r = 0; r + 1 < d; ++r) {
        std::vector<uint32_t> cand;
        for (size_t l = 0; l < 2; ++l) {
          const PatchLayout& p = l == 0 ? a : b;
          for (const auto& st : p.stabilizers) {
            if (st.type == 'Z' &&
                st.tag == ("Z:" + std::to_string(r) + "." +
                           std::to_string(p.col0) + "rp")) {
              for (uint32_t gi : st.gauge_indices) {
                cand.push_back(res.gauge_meas[l][gi]);
              }
            }
          }
        }
        if (with_bits) {
          cand.push_back(split_meas[r]);
          cand.push_back(split_meas[r + 1]);
        }
        acc.candidate("Z:" + std::to_string(r) + ".0rp", std::move(cand));
      }
    };

    for (int k = 0; k < config.init_rounds; ++k) {
      BsRound r;
      r.layouts = {&a, &b};
      if (k == 0) r.reset_data = ab_data;
      r.meas_tag = "init.cycle." + std::to_string(k);
      r.native = config.native_parity;
      r.perfect = config.perfect_prep;
      auto res = bs_round(acc, r, times, &split_counter);
      patch_x_candidates(res);
      combined_z_candidates(res, false);
    }
    for (int k = 0; k < cycles; ++k) {
      if (!config.perfect_prep) {
        if (config.seam_wait > 0) acc.idle_layer(all_data, config.seam_wait);
        if (config.seam_depol > 0) {
          acc.idle_layer(seam, 0.0,
                         "linkdepol:" + std::to_string(config.seam_depol));
        }
      }
      BsRound r;
      r.layouts = {&merged};
      if (k == 0) r.reset_data = seam;  // |0> seam: Z basis is preserved
      r.meas_tag = "merge.cycle." + std::to_string(k);
      r.native = config.native_parity;
      r.perfect = config.perfect_prep;
      auto res = bs_round(acc, r, times, &split_counter);
      bs_candidates(acc, merged, res.gauge_meas[0]);
    }
    bool first_post = true;
    auto post_round = [&](bool perfect, const std::string& tag) {
      BsRound r;
      r.layouts = {&a, &b};
      if (first_post) {
        r.seam_mz = seam;  // Z-basis split
      }
      r.meas_tag = tag;
      r.perfect = perfect;
      r.native = config.native_parity;
      auto res = bs_round(acc, r, times, &split_counter);
      if (first_post) {
        split_meas = res.split_meas;
        first_post = false;
        acc.deactivate(seam);
      }
      patch_x_candidates(res);
      combined_z_candidates(res, true);
    };
    for (int k = 0; k < config.settle_rounds; ++k) {
      post_round(config.perfect_prep, "settle");
    }
    if (config.transmit_idle > 0) acc.idle_layer(ab_data, config.transmit_idle);
    for (int k = 0; k < config.memory_rounds; ++k) {
      post_round(false, "memory.cycle." + std::to_string(k));
    }
    if (config.readout_idle > 0) acc.idle_layer(ab_data, config.readout_idle);
    if (config.closure_round) post_round(true, "closure");
  }

  bell.plan.split_measurements = split_meas;
  bell.plan.correction_logical = bs ? 'X' : 'Z';
  bell.plan.obs_index = bs ? 0 : 1;

  Observable zz, xx;
  {
    PauliString pzz(bell.num_qubits), pxx(bell.num_qubits);
    for (uint32_t q : a.logical_z_qubits) pzz.set_z(q, true);
    for (uint32_t q : b.logical_z_qubits) pzz.set_z(q, true);
    for (uint32_t q : a.logical_x_qubits) pxx.set_x(q, true);
    for (uint32_t q : b.logical_x_qubits) pxx.set_x(q, true);
    zz.pauli = pzz;
    zz.name = "zz";
    xx.pauli = pxx;
    xx.name = "xx";
  }
  acc.circuit.observables = {zz, xx};
  finalize_semantics(acc.circuit);
  bell.circuit = std::move(acc.circuit);
  return bell;
}

BellCircuit build_merge_split(const CodeSpec& spec, const GateTimes& times,
                              const MergeConfig& config) {
  if (spec.family == CodeFamily::BaconShor) {
    throw std::invalid_argument("use build_baconshor_merge for Bacon-Shor");
  }
  return build_bell_circuit(spec, times, config);
}

BellCircuit build_baconshor_merge(const CodeSpec& spec, const GateTimes& times,
                                  const MergeConfig& config) {
  if (spec.family != CodeFamily::BaconShor) {
    throw std::invalid_argument("Bacon-Shor spec required");
  }
  return build_bell_circuit(spec, times, config);
}

MemoryCircuit build_memory_circuit(const CodeSpec& spec, const GateTimes& times,
                                   int rounds, bool native_parity) {
  BuiltPatch bp = build_patch(spec);
  const PatchLayout& p = bp.layout;
  MemoryCircuit mem;
  mem.num_qubits = bp.num_qubits;
  Accum acc(mem.num_qubits);
  uint32_t split_counter = 0;
  for (int k = 0; k <= rounds; ++k) {
    const bool perfect = k == rounds;  // closure
    if (spec.family == CodeFamily::BaconShor) {
      BsRound r;
      r.layouts = {&p};
      if (k == 0) r.reset_data = p.data;
      r.meas_tag = "cycle." + std::to_string(k);
      r.perfect = perfect;
      r.native = native_parity;
      auto res = bs_round(acc, r, times, &split_counter);
      bs_candidates(acc, p, res.gauge_meas[0]);
    } else {
      SurfaceRound r;
      r.checks = &p.checks;
      if (k == 0) r.reset_data = p.data;  // |0>_L
      r.meas_tag = "cycle." + std::to_string(k);
      r.perfect = perfect;
      surface_round(acc, r, times, &split_counter);
    }
  }
  Observable zl;
  zl.pauli = p.logical_z(mem.num_qubits);
  zl.name = "zl";
  acc.circuit.observables = {zl};
  finalize_semantics(acc.circuit);
  mem.circuit = std::move(acc.circuit);
  return mem;
}

Circuit build_baseline_circuit(const CyclePlan& plan, const GateTimes& times,
                               double transmit_idle, double readout_depol,
                               bool noiseless_prep) {
  Circuit c;
  c.num_qubits = 2;
  const std::string prep_tag = noiseless_prep ? "perfect.prep" : "";
  c.append(InstrKind::Reset, {0});
  c.append(InstrKind::Reset, {1});
  c.append(InstrKind::H, {0}, times.t_h, prep_tag);
  {
    CircuitInstruction idle;
    idle.kind = InstrKind::Idle;
    idle.targets = {1};
    idle.duration = times.t_h;
    idle.tag = prep_tag;
    c.append(std::move(idle));
  }
  c.append(InstrKind::CX, {0, 1}, times.t_cx, prep_tag);
  for (double t : plan.layer_durations) {
    c.append(InstrKind::Idle, {0}, t);
    c.append(InstrKind::Idle, {1}, t);
  }
  if (transmit_idle > 0) {
    c.append(InstrKind::Idle, {0}, transmit_idle);
    c.append(InstrKind::Idle, {1}, transmit_idle);
  }
  // Readout error stand-in (the observables are scored on the final state).
  if (readout_depol > 0) {
    std::string tag = "linkdepol:" + std::to_string(readout_depol);
    c.append(InstrKind::Idle, {0}, 0.0, tag);
    c.append(InstrKind::Idle, {1}, 0.0, tag);
  }
  Observable zz, xx;
  zz.pauli = PauliString::from_dense("ZZ");
  zz.name = "zz";
  xx.pauli = PauliString::from_dense("XX");
  xx.name = "xx";
  c.observables = {zz, xx};
  finalize_semantics(c);
  return c;
}

}  // namespace heraldsim
