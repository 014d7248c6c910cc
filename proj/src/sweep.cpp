#include "heraldsim/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>
#include <thread>

#include "heraldsim/config.hpp"
#include "heraldsim/decoder.hpp"
#include "heraldsim/detector_graph.hpp"
#include "heraldsim/frame.hpp"
#include "heraldsim/surgery.hpp"

namespace heraldsim {

namespace {

struct PointCounts {
  long zz = 0, xx = 0, any = 0;
};

// Monte Carlo over one circuit/binding pair.  Shots are indexed into Rng
// substreams, so the counts are independent of the thread partition.
PointCounts run_point(const Circuit& circuit, const NoiseBinding& binding,
                      const Decoder* decoder, long shots, uint64_t seed,
                      uint64_t stream, int threads) {
  unsigned n = threads > 0 ? threads : std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  n = std::min<unsigned>(n, 16);
  std::vector<PointCounts> parts(n);
  auto worker = [&](unsigned t) {
    FrameSim sim(circuit);
    FrameSim::Shot shot;
    PointCounts& pc = parts[t];
    for (long s = t; s < shots; s += n) {
      Rng rng = Rng::substream(seed, stream, static_cast<uint64_t>(s));
      sim.sample(binding, rng, shot);
      uint8_t err = shot.obs_mask;
      if (decoder) err ^= decoder->decode_shot(shot.detectors).obs_mask;
      pc.zz += err & 1;
      pc.xx += (err >> 1) & 1;
      pc.any += err != 0;
    }
  };
  if (n == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }
  PointCounts total;
  for (const PointCounts& pc : parts) {
    total.zz += pc.zz;
    total.xx += pc.xx;
    total.any += pc.any;
  }
  return total;
}

NoiseBinding bind_axis(const Circuit& circuit, const SweepConfig& cfg,
                       double x) {
  if (cfg.axis == SweepAxis::PErr) {
    return bind_depolarizing(circuit, {x});
  }
  PhysicalParams p = cfg.physical;
  p.xi = x;
  return bind_physical(circuit, p);
}

SweepRow make_row(double x, std::string code, long shots,
                  const PointCounts& c) {
  SweepRow row;
  row.axis_value = x;
  row.code = std::move(code);
  row.shots = shots;
  row.fail_zz = c.zz;
  row.fail_xx = c.xx;
  row.fail_any = c.any;
  row.p_l = static_cast<double>(c.any) / shots;
  row.std_err = std::sqrt(row.p_l * (1.0 - row.p_l) / shots);
  const Wilson w = wilson_interval(c.any, shots);
  row.wilson_low = w.low;
  row.wilson_high = w.high;
  row.flagged = c.any == 0 && x > 0;
  return row;
}

double clamp_log_p(double p, long shots) {
  // Continuity correction keeps logs finite at zero observed failures.
  if (p <= 0) return shots > 0 ? 0.5 / shots : 1e-300;
  return p;
}

// Crossing of log(pa) - log(pb) over log x; NaN when absent.
double crossing_from(const std::vector<double>& x,
                     const std::vector<double>& da) {
  for (size_t i = 0; i + 1 < da.size(); ++i) {
    if (std::isnan(da[i]) || std::isnan(da[i + 1])) continue;
    if (da[i] == 0.0 && da[i + 1] == 0.0) continue;
    if ((da[i] <= 0) != (da[i + 1] <= 0)) {
      const double t = da[i] / (da[i] - da[i + 1]);
      return std::exp(std::log(x[i]) +
                      t * (std::log(x[i + 1]) - std::log(x[i])));
    }
  }
  return std::nan("");
}

}  // namespace

Wilson wilson_interval(long failures, long shots, double z) {
  Wilson w;
  if (shots <= 0) return w;
  const double n = static_cast<double>(shots);
  const double p = static_cast<double>(failures) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = p + z2 / (2.0 * n);
  const double spread =
      z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  w.low = (center - spread) / denom;
  w.high = (center + spread) / denom;
  return w;
}

SweepTable sweep_logical_error(const SweepConfig& cfg) {
  if (cfg.grid.empty()) throw std::invalid_argument("empty sweep grid");
  if (cfg.shots < 1) throw std::invalid_argument("shots must be >= 1");
  SweepTable table;
  table.metadata = {
      {"axis", cfg.axis == SweepAxis::PErr ? "p_err" : "xi"},
      {"shots", std::to_string(cfg.shots)},
      {"memory_rounds", std::to_string(cfg.memory_rounds)},
      // Fig.-7-style indexing: m syndrome extractions = m + 1 iterations
      // counting the merge/split generation round.
      {"iterations", std::to_string(cfg.memory_rounds + 1)},
      {"perfect_prep", cfg.perfect_prep ? "true" : "false"},
      {"seed", std::to_string(cfg.seed)},
  };
  uint64_t stream = 100;
  GateTimes times = cfg.physical.times;
  for (const CodeSpec& code : cfg.codes) {
    MergeConfig mc;
    mc.memory_rounds = cfg.memory_rounds;
    mc.perfect_prep = cfg.perfect_prep;
    const BellCircuit bell = build_bell_circuit(code, times, mc);
    for (double x : cfg.grid) {
      const NoiseBinding binding = bind_axis(bell.circuit, cfg, x);
      const DetectorGraph graph = build_detector_graph(bell.circuit, binding);
      const Decoder decoder(graph);
      const PointCounts c = run_point(bell.circuit, binding, &decoder,
                                      cfg.shots, cfg.seed, stream++,
                                      cfg.threads);
      table.rows.push_back(make_row(x, code_spec_name(code), cfg.shots, c));
    }
  }
  if (cfg.include_baseline) {
    std::set<CodeFamily> families;
    for (const CodeSpec& code : cfg.codes) families.insert(code.family);
    for (CodeFamily family : families) {
      CyclePlan plan = cycle_plan({family, 3}, times, true);
      if (cfg.axis == SweepAxis::Xi) {
        // T1/T2 idle noise is duration-driven, so the unencoded pair stores
        // through the full generation + storage schedule (init, d merged
        // rounds, settle, memory) rather than a single cycle; otherwise the
        // encoded circuits could never beat the baseline at small xi.
        const int rounds = 3 + 2 + cfg.memory_rounds;
        const std::vector<double> one = plan.layer_durations;
        for (int r = 1; r < rounds; ++r) {
          plan.layer_durations.insert(plan.layer_durations.end(), one.begin(),
                                      one.end());
        }
      }
      for (double x : cfg.grid) {
        // On the p_err axis the baseline is storage-only: the bare pair's
        // two preparation gates and direct readout are O(p) constants shared
        // by every storage duration, so charging them would shift every
        // crossing up uniformly.  On the xi axis gate errors are the swept
        // quantity, so prep noise and the readout stand-in stay in.
        const bool storage_only = cfg.axis == SweepAxis::PErr;
        const double readout = storage_only ? 0.0 : x * cfg.physical.p_err_m;
        const Circuit baseline =
            build_baseline_circuit(plan, times, 0.0, readout, storage_only);
        const NoiseBinding binding = bind_axis(baseline, cfg, x);
        const PointCounts c = run_point(baseline, binding, nullptr, cfg.shots,
                                        cfg.seed, stream++, cfg.threads);
        table.rows.push_back(make_row(
            x, std::string("baseline:") + family_name(family), cfg.shots, c));
      }
    }
  }
  return table;
}

Curve curve_for(const SweepTable& table, const std::string& code) {
  Curve curve;
  for (const SweepRow& row : table.rows) {
    if (row.code == code) {
      curve.push_back({row.axis_value, row.p_l, row.fail_any, row.shots});
    }
  }
  return curve;
}

ThresholdEstimate estimate_crossing(const Curve& a, const Curve& b,
                                    uint64_t seed, int resamples) {
  const size_t m = std::min(a.size(), b.size());
  if (m < 2) throw std::invalid_argument("curves need >= 2 points");
  std::vector<double> x(m), diff(m);
  for (size_t i = 0; i < m; ++i) {
    if (std::abs(a[i].x - b[i].x) > 1e-12 * std::max(a[i].x, b[i].x)) {
      throw std::invalid_argument("curves must share the axis grid");
    }
    x[i] = a[i].x;
    diff[i] = std::log(clamp_log_p(a[i].p, a[i].shots)) -
              std::log(clamp_log_p(b[i].p, b[i].shots));
  }
  ThresholdEstimate est;
  const double value = crossing_from(x, diff);
  if (std::isnan(value)) {
    est.found = false;
    est.direction = diff[0] > 0 ? 1 : diff[0] < 0 ? -1 : 0;
    return est;
  }
  est.found = true;
  est.value = est.ci_low = est.ci_high = value;
  // Nonparametric bootstrap over per-point binomial resamples.
  std::vector<double> samples;
  std::mt19937_64 gen(Rng(seed ^ 0xb00757).u64());
  auto resample = [&](const Curve& c, size_t i) {
    if (c[i].shots <= 0) return clamp_log_p(c[i].p, 0);
    std::binomial_distribution<long> bin(c[i].shots,
                                         static_cast<double>(c[i].failures) /
                                             c[i].shots);
    return clamp_log_p(static_cast<double>(bin(gen)) / c[i].shots,
                       c[i].shots);
  };
  std::vector<double> d(m);
  for (int r = 0; r < resamples; ++r) {
    for (size_t i = 0; i < m; ++i) {
      d[i] = std::log(resample(a, i)) - std::log(resample(b, i));
    }
    const double v = crossing_from(x, d);
    if (!std::isnan(v)) samples.push_back(v);
  }
  if (!samples.empty()) {
    std::sort(samples.begin(), samples.end());
    auto pct = [&](double q) {
      const double idx = q * (samples.size() - 1);
      const size_t lo = static_cast<size_t>(idx);
      const size_t hi = std::min(lo + 1, samples.size() - 1);
      return samples[lo] + (idx - lo) * (samples[hi] - samples[lo]);
    };
    est.ci_low = std::min(pct(0.025), value);
    est.ci_high = std::max(pct(0.975), value);
  }
  return est;
}

ThresholdEstimate estimate_pseudo_threshold(const Curve& code,
                                            const Curve& baseline,
                                            uint64_t seed) {
  ThresholdEstimate est = estimate_crossing(code, baseline, seed);
  est.method = "unencoded-crossing";
  return est;
}

ThresholdEstimate estimate_family_threshold(const Curve& d3, const Curve& d5,
                                            uint64_t seed) {
  ThresholdEstimate est = estimate_crossing(d5, d3, seed);
  est.method = "d3-d5-crossing";
  return est;
}

std::vector<RatePoint> rate_vs_distance(const ProtocolConfig& base,
                                        const std::vector<double>& distances,
                                        int trials_per_rep, int reps,
                                        uint64_t seed) {
  if (reps < 1 || trials_per_rep < 1) {
    throw std::invalid_argument("reps and trials must be >= 1");
  }
  std::vector<RatePoint> out;
  for (double dist : distances) {
    RatePoint pt;
    pt.distance_km = dist;
    pt.reps = reps;
    double sum = 0, sumsq = 0;
    for (int r = 0; r < reps; ++r) {
      ProtocolConfig cfg = base;
      cfg.protocol = Protocol::Two;
      cfg.distance_km = dist;
      cfg.seed = seed * 1000003ull + static_cast<uint64_t>(r);
      ProtocolEngine engine(cfg);
      long successes = 0;
      double wall = 0.0;
      for (int t = 0; t < trials_per_rep; ++t) {
        const TrialOutcome outcome = engine.run_trial(t);
        wall += outcome.wall_time;
        successes += outcome.status == TrialStatus::Success;
      }
      const double rate = successes / wall;
      sum += rate;
      sumsq += rate * rate;
    }
    pt.rate_hz = sum / reps;
    pt.stddev = std::sqrt(std::max(0.0, sumsq / reps - pt.rate_hz * pt.rate_hz));
    out.push_back(pt);
  }
  return out;
}

}  // namespace heraldsim
