#include <cstdio>
#include <set>

#include "doctest.h"
#include "heraldsim/code.hpp"

using namespace heraldsim;

namespace {

PauliString check_pauli(const Check& check, uint32_t n) {
  PauliString p(n);
  for (uint32_t q : check.data) {
    if (q != UINT32_MAX) p.set_pauli(q, check.type);
  }
  return p;
}

PauliString gauge_pauli(const GaugeOp& g, uint32_t n) {
  PauliString p(n);
  p.set_pauli(g.q0, g.type);
  p.set_pauli(g.q1, g.type);
  return p;
}

std::string fmt2e(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

}  // namespace

TEST_CASE("patch layouts have the expected qubit counts") {
  for (int d : {3, 5}) {
    CHECK(build_patch({CodeFamily::RotatedSurface, d}).layout.data.size() ==
          size_t(d) * d);
    CHECK(build_patch({CodeFamily::BaconShor, d}).layout.data.size() ==
          size_t(d) * d);
    CHECK(build_patch({CodeFamily::PlanarSurface, d}).layout.data.size() ==
          size_t(2 * d * d - 2 * d + 1));
  }
}

TEST_CASE("stabilizers commute and logicals anticommute") {
  for (CodeFamily fam : {CodeFamily::RotatedSurface, CodeFamily::PlanarSurface,
                         CodeFamily::BaconShor}) {
    for (int d : {3, 5}) {
      BuiltPatch patch = build_patch({fam, d});
      const uint32_t n = patch.num_qubits;
      std::vector<PauliString> stabs;
      for (const Check& c : patch.layout.checks) {
        stabs.push_back(check_pauli(c, n));
      }
      for (const auto& sp : patch.layout.stabilizers) {
        PauliString p(n);
        for (uint32_t gi : sp.gauge_indices) {
          p *= gauge_pauli(patch.layout.gauges[gi], n);
        }
        stabs.push_back(p);
      }
      const PauliString lx = patch.layout.logical_x(n);
      const PauliString lz = patch.layout.logical_z(n);
      CHECK_FALSE(lx.commutes_with(lz));
      CHECK(lx.weight() == uint32_t(d));
      CHECK(lz.weight() == uint32_t(d));
      for (size_t i = 0; i < stabs.size(); ++i) {
        CHECK(stabs[i].commutes_with(lx));
        CHECK(stabs[i].commutes_with(lz));
        for (size_t j = i + 1; j < stabs.size(); ++j) {
          CHECK(stabs[i].commutes_with(stabs[j]));
        }
      }
    }
  }
}

TEST_CASE("bacon-shor gauges commute with the stabilizer group") {
  BuiltPatch patch = build_patch({CodeFamily::BaconShor, 3});
  const uint32_t n = patch.num_qubits;
  for (const auto& sp : patch.layout.stabilizers) {
    PauliString p(n);
    for (uint32_t gi : sp.gauge_indices) {
      p *= gauge_pauli(patch.layout.gauges[gi], n);
    }
    for (const GaugeOp& g : patch.layout.gauges) {
      CHECK(p.commutes_with(gauge_pauli(g, n)));
    }
  }
}

TEST_CASE("cycle durations match the published budget") {
  GateTimes times;
  CHECK(fmt2e(cycle_plan({CodeFamily::RotatedSurface, 3}, times, true)
                  .t_cycle) == "4.31e-03");
  CHECK(fmt2e(cycle_plan({CodeFamily::PlanarSurface, 3}, times, true)
                  .t_cycle) == "4.31e-03");
  CHECK(fmt2e(cycle_plan({CodeFamily::BaconShor, 3}, times, true).t_cycle) ==
        "8.88e-03");
}

TEST_CASE("logical bell error combines raw parities with corrections") {
  CHECK(logical_bell_error(0, 0, 0, 0) == std::pair<int, int>{0, 0});
  CHECK(logical_bell_error(1, 0, 1, 0) == std::pair<int, int>{0, 0});
  CHECK(logical_bell_error(1, 1, 0, 1) == std::pair<int, int>{1, 0});
  CHECK(logical_bell_error(0, 1, 1, 0) == std::pair<int, int>{1, 1});
}
