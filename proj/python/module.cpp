#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "heraldsim/config.hpp"
#include "heraldsim/photonics.hpp"
#include "heraldsim/protocol.hpp"
#include "heraldsim/sweep.hpp"

namespace py = pybind11;
using namespace heraldsim;

namespace {

Protocol parse_protocol(int p) {
  if (p == 1) return Protocol::One;
  if (p == 2) return Protocol::Two;
  throw std::invalid_argument("protocol must be 1 or 2");
}

py::dict qndm_dict() {
  CavityParams cavity;
  const QndmProbabilities q = qndm_probabilities(cavity);
  py::dict out;
  out["p_detect"] = q.p_detect;
  out["p_transmit"] = q.p_transmit;
  out["product"] = q.product();
  out["p_full_trace"] = q.p_full_trace;
  out["cooperativity"] = cavity.cooperativity();
  return out;
}

py::dict link_budget_dict(double distance_km, int protocol, double eta_conv,
                          double p_trs) {
  const Protocol p = parse_protocol(protocol);
  FiberLink link;
  link.distance_km = distance_km;
  link.tau_db_per_km = p == Protocol::One ? 0.70 : 0.17;
  CavityParams cavity;
  const LinkBudget b = link_budget(link, cavity, eta_conv, p_trs, 0.03, p);
  py::dict out;
  out["eta_channel"] = b.eta_channel;
  out["eta_conv"] = b.eta_conv;
  out["p_qndm_detect"] = b.p_qndm_detect;
  out["p_qndm_transmit"] = b.p_qndm_transmit;
  out["p_trs"] = b.p_trs;
  out["eta_tot"] = b.eta_tot;
  out["latency_s"] = b.latency_s;
  return out;
}

py::dict time_budget_dict(const std::string& code, int protocol,
                          double distance_km) {
  GateTimes times;
  const TimeBudget b = compute_time_budget(
      parse_code_spec(code), parse_protocol(protocol), distance_km, times);
  py::dict out;
  out["t_cycle"] = b.t_cycle;
  out["t_merge"] = b.t_merge;
  out["t_trav"] = b.t_trav;
  out["t_total"] = b.t_total;
  return out;
}

py::list sweep_list(const std::vector<double>& grid, long shots,
                    const std::vector<std::string>& codes, uint64_t seed,
                    int memory_rounds, bool perfect_prep, bool xi_axis,
                    bool include_baseline) {
  SweepConfig cfg;
  cfg.axis = xi_axis ? SweepAxis::Xi : SweepAxis::PErr;
  cfg.grid = grid;
  cfg.shots = shots;
  for (const std::string& c : codes) cfg.codes.push_back(parse_code_spec(c));
  cfg.seed = seed;
  cfg.memory_rounds = memory_rounds;
  cfg.perfect_prep = perfect_prep;
  cfg.include_baseline = include_baseline;
  const SweepTable table = sweep_logical_error(cfg);
  py::list rows;
  for (const SweepRow& row : table.rows) {
    py::dict r;
    r["axis_value"] = row.axis_value;
    r["code"] = row.code;
    r["shots"] = row.shots;
    r["fail_any"] = row.fail_any;
    r["p_l"] = row.p_l;
    r["wilson_low"] = row.wilson_low;
    r["wilson_high"] = row.wilson_high;
    rows.append(r);
  }
  return rows;
}

py::list rate_list(const std::vector<double>& distances, int trials, int reps,
                   uint64_t seed) {
  ProtocolConfig cfg;
  cfg.code = {CodeFamily::RotatedSurface, 3};
  py::list out;
  for (const RatePoint& pt :
       rate_vs_distance(cfg, distances, trials, reps, seed)) {
    py::dict r;
    r["distance_km"] = pt.distance_km;
    r["rate_hz"] = pt.rate_hz;
    r["stddev"] = pt.stddev;
    out.append(r);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_heraldsim, m) {
  m.doc() = "Monte Carlo harness for heralded logical Bell pair generation";
  m.def("qndm_probabilities", &qndm_dict,
        "QNDM detection/transmission probabilities at the default cavity "
        "operating point");
  m.def("channel_transmission",
        [](double distance_km, double tau_db_per_km) {
          FiberLink link;
          link.distance_km = distance_km;
          link.tau_db_per_km = tau_db_per_km;
          return channel_transmission(link);
        },
        py::arg("distance_km"), py::arg("tau_db_per_km") = 0.17);
  m.def("link_budget", &link_budget_dict, py::arg("distance_km"),
        py::arg("protocol") = 2, py::arg("eta_conv") = 0.9,
        py::arg("p_trs") = 0.5);
  m.def("time_budget", &time_budget_dict, py::arg("code"),
        py::arg("protocol") = 2, py::arg("distance_km") = 1.0);
  m.def("sweep_logical_error", &sweep_list, py::arg("grid"),
        py::arg("shots") = 10000,
        py::arg("codes") = std::vector<std::string>{"rotated:3"},
        py::arg("seed") = 1, py::arg("memory_rounds") = 1,
        py::arg("perfect_prep") = false, py::arg("xi_axis") = false,
        py::arg("include_baseline") = true);
  m.def("rate_vs_distance", &rate_list, py::arg("distances"),
        py::arg("trials") = 200, py::arg("reps") = 2, py::arg("seed") = 1);
}
