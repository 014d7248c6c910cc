#include "heraldsim/protocol.hpp"

#include <cmath>
#include <stdexcept>

namespace heraldsim {

namespace {

FiberLink make_link(const ProtocolConfig& cfg) {
  FiberLink link;
  link.distance_km = cfg.distance_km;
  link.tau_db_per_km = cfg.protocol == Protocol::One ? 0.70 : 0.17;
  return link;
}

}  // namespace

TimeBudget compute_time_budget(const CodeSpec& code, Protocol protocol,
                               double distance_km, const GateTimes& times) {
  TimeBudget b;
  b.t_cycle = cycle_plan(code, times, true).t_cycle;
  b.t_merge = (code.d + 1) * b.t_cycle;
  const double one_way = distance_km * 1000.0 * 1.44 / kSpeedOfLight;
  b.t_trav = protocol == Protocol::One ? one_way : code.d * one_way;
  b.t_total = b.t_merge + 2.0 * b.t_cycle + times.t_m + b.t_trav;
  return b;
}

AcquireResult scheduler_acquire(const SchedulerParams& params,
                                const LinkBudget& link, int d, Rng& rng,
                                int max_windows) {
  if (params.t_range_q <= 0) throw std::invalid_argument("t_range_q <= 0");
  const double tick = 1.0 / params.f_source;
  const double dead = params.t_qndm + params.t_readout;
  // Both halves of the auxiliary pair must survive their links.
  const double p_pair = link.eta_tot * link.eta_tot;
  AcquireResult out;
  for (int w = 0; w < max_windows && out.n_ready < d; ++w) {
    double busy = 0.0;
    double last_ready = 0.0;
    bool done = false;
    while (true) {
      const double t_att = std::ceil(busy / tick - 1e-12) * tick;
      if (t_att + dead > params.t_range_q) break;
      busy = t_att + dead;
      if (rng.bernoulli(p_pair)) {
        ++out.n_ready;
        last_ready = busy;
        if (out.n_ready >= d) {
          done = true;
          break;
        }
      }
    }
    if (done) {
      out.elapsed += last_ready;
    } else {
      ++out.retries;
      out.elapsed += params.t_range_q;
    }
  }
  return out;
}

WindowStats scheduler_window_stats(const SchedulerParams& params,
                                   const LinkBudget& link, int windows,
                                   Rng& rng) {
  const double tick = 1.0 / params.f_source;
  const double dead = params.t_qndm + params.t_readout;
  const double p_pair = link.eta_tot * link.eta_tot;
  double sum = 0.0, sumsq = 0.0;
  for (int w = 0; w < windows; ++w) {
    double busy = 0.0;
    int ready = 0;
    while (true) {
      const double t_att = std::ceil(busy / tick - 1e-12) * tick;
      if (t_att + dead > params.t_range_q) break;
      busy = t_att + dead;
      if (rng.bernoulli(p_pair)) ++ready;
    }
    sum += ready;
    sumsq += static_cast<double>(ready) * ready;
  }
  WindowStats s;
  s.mean = sum / windows;
  s.stddev = std::sqrt(std::max(0.0, sumsq / windows - s.mean * s.mean));
  return s;
}

ProtocolEngine::ProtocolEngine(const ProtocolConfig& config) : cfg_(config) {
  if (cfg_.m1 < 1) throw std::invalid_argument("m1 must be >= 1");
  link_ = link_budget(make_link(cfg_), cfg_.cavity, cfg_.eta_conv, cfg_.p_trs,
                      cfg_.p_dark, cfg_.protocol);
  budget_ = compute_time_budget(cfg_.code, cfg_.protocol, cfg_.distance_km,
                                cfg_.physical.times);
  MergeConfig mc;
  mc.memory_rounds = cfg_.m1;
  if (cfg_.protocol == Protocol::One) {
    // Data qubits ride the multimode fiber after the split.
    mc.transmit_idle = cfg_.scheduler.t_transfer + link_.latency_s;
  } else {
    // Seam halves are teleported-in auxiliary pairs: the patches idle
    // through the acceptance window and the seam carries link infidelity.
    mc.seam_wait = cfg_.scheduler.t_range_q;
    mc.seam_depol = cfg_.seam_depol;
  }
  bell_ = build_bell_circuit(cfg_.code, cfg_.physical.times, mc);
  binding_ = bind_physical(bell_.circuit, cfg_.physical);
  graph_ = build_detector_graph(bell_.circuit, binding_);
  decoder_ = std::make_unique<Decoder>(graph_);
  sim_ = std::make_unique<FrameSim>(bell_.circuit);
}

TrialOutcome ProtocolEngine::run_trial(uint64_t trial_index) {
  Rng rng = Rng::substream(cfg_.seed, cfg_.protocol == Protocol::One ? 1 : 2,
                           trial_index);
  TrialOutcome out;
  out.wall_time = budget_.t_total + (cfg_.m1 - 1) * budget_.t_cycle;
  if (cfg_.protocol == Protocol::One) {
    // Every transmitted data qubit survives independently or the trial
    // aborts.
    const size_t n_sent = bell_.a_data.size() + bell_.b_data.size();
    for (size_t i = 0; i < n_sent; ++i) {
      if (!rng.bernoulli(link_.eta_tot)) {
        out.status = TrialStatus::Aborted;
        return out;
      }
    }
  } else {
    const int batches = cfg_.aux_per_cycle ? cfg_.code.d : 1;
    for (int c = 0; c < batches; ++c) {
      AcquireResult ar =
          scheduler_acquire(cfg_.scheduler, link_, cfg_.code.d, rng);
      out.retries += ar.retries;
      out.wall_time += ar.elapsed + cfg_.scheduler.t_transfer;
    }
  }
  sim_->sample(binding_, rng, shot_);
  const MatchResult mr = decoder_->decode_shot(shot_.detectors);
  const uint8_t err = mr.obs_mask ^ shot_.obs_mask;
  out.zz_error = err & 1;
  out.xx_error = (err >> 1) & 1;
  return out;
}

TrialOutcome run_protocol1_trial(const ProtocolConfig& config) {
  ProtocolConfig cfg = config;
  cfg.protocol = Protocol::One;
  return ProtocolEngine(cfg).run_trial(0);
}

TrialOutcome run_protocol2_trial(const ProtocolConfig& config) {
  ProtocolConfig cfg = config;
  cfg.protocol = Protocol::Two;
  return ProtocolEngine(cfg).run_trial(0);
}

TrialOutcome run_unencoded_baseline(const ProtocolConfig& config) {
  const LinkBudget link =
      link_budget(make_link(config), config.cavity, config.eta_conv,
                  config.p_trs, config.p_dark, config.protocol);
  const CyclePlan plan = cycle_plan(config.code, config.physical.times, true);
  const double transmit_idle =
      config.protocol == Protocol::One
          ? config.scheduler.t_transfer + link.latency_s
          : 0.0;
  Circuit circuit =
      build_baseline_circuit(plan, config.physical.times, transmit_idle,
                             config.physical.xi * config.physical.p_err_m);
  const NoiseBinding binding = bind_physical(circuit, config.physical);
  FrameSim sim(circuit);
  Rng rng = Rng::substream(config.seed, 3, 0);
  TrialOutcome out;
  out.wall_time = compute_time_budget(config.code, config.protocol,
                                      config.distance_km,
                                      config.physical.times)
                      .t_total;
  if (config.protocol == Protocol::One) {
    for (int i = 0; i < 2; ++i) {
      if (!rng.bernoulli(link.eta_tot)) {
        out.status = TrialStatus::Aborted;
        return out;
      }
    }
  }
  FrameSim::Shot shot;
  sim.sample(binding, rng, shot);
  out.zz_error = shot.obs_mask & 1;
  out.xx_error = (shot.obs_mask >> 1) & 1;
  return out;
}

}  // namespace heraldsim
