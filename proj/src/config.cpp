#include "heraldsim/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace heraldsim {

namespace {

using Json = nlohmann::ordered_json;

std::vector<double> log_grid(double lo, double hi, int points) {
  std::vector<double> g;
  const double a = std::log10(lo), b = std::log10(hi);
  for (int i = 0; i < points; ++i) {
    g.push_back(std::pow(10.0, a + (b - a) * i / (points - 1)));
  }
  return g;
}

Json cavity_to_json(const CavityParams& c) {
  return Json{{"gamma", c.gamma},         {"g", c.g},
              {"kappa", c.kappa},         {"kappa_r", c.kappa_r},
              {"kappa_t", c.kappa_t},     {"kappa_m", c.kappa_m},
              {"mu_fc_mag", c.mu_fc_mag}, {"mu_fc_arg", c.mu_fc_arg},
              {"delta_a", c.delta_a},     {"delta_c", c.delta_c},
              {"alpha", c.alpha}};
}

Json physical_to_json(const RunConfig& cfg) {
  const PhysicalParams& p = cfg.protocol.physical;
  const SchedulerParams& s = cfg.protocol.scheduler;
  return Json{{"t1", p.t1},
              {"t2", p.t2},
              {"p_err_h", p.p_err_h},
              {"p_err_cx", p.p_err_cx},
              {"p_err_m", p.p_err_m},
              {"xi", p.xi},
              {"t_h", p.times.t_h},
              {"t_cx", p.times.t_cx},
              {"t_m", p.times.t_m},
              {"tau_single_mode", cfg.tau_single_mode},
              {"tau_multi_mode", cfg.tau_multi_mode},
              {"r_glass", cfg.r_glass},
              {"source_wavelength_nm", cfg.source_wavelength_nm},
              {"t_range_q", s.t_range_q},
              {"t_transfer", s.t_transfer},
              {"t_qndm", s.t_qndm},
              {"t_readout", s.t_readout},
              {"f_source", s.f_source},
              {"eta_conv", cfg.protocol.eta_conv},
              {"p_trs", cfg.protocol.p_trs},
              {"p_dark", cfg.protocol.p_dark},
              {"seam_depol", cfg.protocol.seam_depol},
              {"cavity", cavity_to_json(cfg.protocol.cavity)}};
}

template <typename T>
void take(Json& obj, const char* key, T& out) {
  if (auto it = obj.find(key); it != obj.end()) {
    out = it->template get<T>();
    obj.erase(it);
  }
}

void reject_unknown(const Json& obj, const std::string& where) {
  if (!obj.empty()) {
    throw std::runtime_error("unknown config key: " + where + "." +
                             obj.begin().key());
  }
}

void cavity_from_json(Json obj, CavityParams& c) {
  take(obj, "gamma", c.gamma);
  take(obj, "g", c.g);
  take(obj, "kappa", c.kappa);
  take(obj, "kappa_r", c.kappa_r);
  take(obj, "kappa_t", c.kappa_t);
  take(obj, "kappa_m", c.kappa_m);
  take(obj, "mu_fc_mag", c.mu_fc_mag);
  take(obj, "mu_fc_arg", c.mu_fc_arg);
  take(obj, "delta_a", c.delta_a);
  take(obj, "delta_c", c.delta_c);
  take(obj, "alpha", c.alpha);
  reject_unknown(obj, "physical.cavity");
}

void physical_from_json(Json obj, RunConfig& cfg) {
  PhysicalParams& p = cfg.protocol.physical;
  SchedulerParams& s = cfg.protocol.scheduler;
  take(obj, "t1", p.t1);
  take(obj, "t2", p.t2);
  take(obj, "p_err_h", p.p_err_h);
  take(obj, "p_err_cx", p.p_err_cx);
  take(obj, "p_err_m", p.p_err_m);
  take(obj, "xi", p.xi);
  take(obj, "t_h", p.times.t_h);
  take(obj, "t_cx", p.times.t_cx);
  take(obj, "t_m", p.times.t_m);
  take(obj, "tau_single_mode", cfg.tau_single_mode);
  take(obj, "tau_multi_mode", cfg.tau_multi_mode);
  take(obj, "r_glass", cfg.r_glass);
  take(obj, "source_wavelength_nm", cfg.source_wavelength_nm);
  take(obj, "t_range_q", s.t_range_q);
  take(obj, "t_transfer", s.t_transfer);
  take(obj, "t_qndm", s.t_qndm);
  take(obj, "t_readout", s.t_readout);
  take(obj, "f_source", s.f_source);
  take(obj, "eta_conv", cfg.protocol.eta_conv);
  take(obj, "p_trs", cfg.protocol.p_trs);
  take(obj, "p_dark", cfg.protocol.p_dark);
  take(obj, "seam_depol", cfg.protocol.seam_depol);
  if (auto it = obj.find("cavity"); it != obj.end()) {
    cavity_from_json(*it, cfg.protocol.cavity);
    obj.erase(it);
  }
  reject_unknown(obj, "physical");
}

}  // namespace

RunConfig default_run_config() {
  RunConfig cfg;
  cfg.grid = log_grid(1e-4, 1e-2, 8);
  cfg.xi_grid = log_grid(0.1, 10.0, 8);
  cfg.codes = {{CodeFamily::RotatedSurface, 3},
               {CodeFamily::PlanarSurface, 3},
               {CodeFamily::BaconShor, 3}};
  cfg.distances = log_grid(1.0, 80.0, 8);
  return cfg;
}

CodeSpec parse_code_spec(const std::string& text) {
  const size_t colon = text.find(':');
  const std::string fam = text.substr(0, colon);
  CodeSpec spec;
  if (fam == "rotated") {
    spec.family = CodeFamily::RotatedSurface;
  } else if (fam == "planar") {
    spec.family = CodeFamily::PlanarSurface;
  } else if (fam == "baconshor") {
    spec.family = CodeFamily::BaconShor;
  } else {
    throw std::runtime_error("unknown code family: " + fam);
  }
  if (colon != std::string::npos) {
    spec.d = std::stoi(text.substr(colon + 1));
  }
  return spec;
}

std::string code_spec_name(const CodeSpec& spec) {
  return std::string(family_name(spec.family)) + ":" + std::to_string(spec.d);
}

std::string run_config_json(const RunConfig& cfg) {
  Json j;
  j["seed"] = cfg.seed;
  j["shots"] = cfg.shots;
  j["out_dir"] = cfg.out_dir;
  j["format"] = cfg.format;
  j["grid"] = cfg.grid;
  j["xi_grid"] = cfg.xi_grid;
  Json codes = Json::array();
  for (const CodeSpec& c : cfg.codes) codes.push_back(code_spec_name(c));
  j["codes"] = codes;
  j["memory_rounds"] = cfg.memory_rounds;
  j["perfect_prep"] = cfg.perfect_prep;
  j["protocol"] = cfg.protocol.protocol == Protocol::One ? 1 : 2;
  j["code"] = code_spec_name(cfg.protocol.code);
  j["distance_km"] = cfg.protocol.distance_km;
  j["m1"] = cfg.protocol.m1;
  j["aux_per_cycle"] = cfg.protocol.aux_per_cycle;
  j["distances"] = cfg.distances;
  j["rate_reps"] = cfg.rate_reps;
  j["rate_trials"] = cfg.rate_trials;
  j["physical"] = physical_to_json(cfg);
  return j.dump(2) + "\n";
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw std::runtime_error("config parse error in " + path + ": " +
                             e.what());
  }
  RunConfig cfg = default_run_config();
  take(j, "seed", cfg.seed);
  take(j, "shots", cfg.shots);
  take(j, "out_dir", cfg.out_dir);
  take(j, "format", cfg.format);
  take(j, "grid", cfg.grid);
  take(j, "xi_grid", cfg.xi_grid);
  if (auto it = j.find("codes"); it != j.end()) {
    cfg.codes.clear();
    for (const auto& c : *it) cfg.codes.push_back(parse_code_spec(c));
    j.erase(it);
  }
  take(j, "memory_rounds", cfg.memory_rounds);
  take(j, "perfect_prep", cfg.perfect_prep);
  if (auto it = j.find("protocol"); it != j.end()) {
    const int p = it->get<int>();
    if (p != 1 && p != 2) throw std::runtime_error("protocol must be 1 or 2");
    cfg.protocol.protocol = p == 1 ? Protocol::One : Protocol::Two;
    j.erase(it);
  }
  if (auto it = j.find("code"); it != j.end()) {
    cfg.protocol.code = parse_code_spec(*it);
    j.erase(it);
  }
  take(j, "distance_km", cfg.protocol.distance_km);
  take(j, "m1", cfg.protocol.m1);
  take(j, "aux_per_cycle", cfg.protocol.aux_per_cycle);
  take(j, "distances", cfg.distances);
  take(j, "rate_reps", cfg.rate_reps);
  take(j, "rate_trials", cfg.rate_trials);
  if (auto it = j.find("physical"); it != j.end()) {
    physical_from_json(*it, cfg);
    j.erase(it);
  }
  reject_unknown(j, "config");
  cfg.protocol.seed = cfg.seed;
  for (const std::vector<double>* g : {&cfg.grid, &cfg.xi_grid}) {
    for (size_t i = 1; i < g->size(); ++i) {
      if ((*g)[i] <= (*g)[i - 1]) {
        throw std::runtime_error("grid must be strictly increasing");
      }
    }
  }
  if (cfg.shots < 1) throw std::runtime_error("shots must be >= 1");
  return cfg;
}

void apply_env_overrides(RunConfig& cfg) {
  if (const char* env = std::getenv("HERALDSIM_SEED")) {
    cfg.seed = std::strtoull(env, nullptr, 10);
    cfg.protocol.seed = cfg.seed;
  }
}

}  // namespace heraldsim
