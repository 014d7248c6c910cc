#include "doctest.h"
#include "heraldsim/tableau.hpp"
#include "oracles.hpp"

using namespace heraldsim;
using namespace heraldsim::testing;

TEST_CASE("bell pair measurements are perfectly correlated") {
  for (uint64_t seed = 0; seed < 50; ++seed) {
    TableauSim sim(2, Rng(seed));
    sim.h(0);
    sim.cx(0, 1);
    const int a = sim.measure_z(0);
    const int b = sim.measure_z(1);
    CHECK(a == b);
    CHECK(sim.check_invariants());
  }
}

TEST_CASE("deterministic measurements report their parity dependencies") {
  TableauSim sim(2, Rng(7), /*track_symbols=*/true, /*max_symbols=*/8);
  sim.h(0);
  sim.cx(0, 1);
  sim.measure_z(0);  // random, becomes symbol 0
  sim.measure_z(1);  // determined by the first outcome
  const auto& info = sim.measurement_info();
  REQUIRE(info.size() == 2);
  CHECK(info[0].random);
  CHECK_FALSE(info[1].random);
  REQUIRE(info[1].depends_on.size() == 1);
  CHECK(info[1].depends_on[0] == 0);
}

TEST_CASE("random circuits keep tableau invariants") {
  Rng gen(42);
  for (int i = 0; i < 30; ++i) {
    const Circuit c = random_clifford_circuit(gen);
    TableauSim sim(c.num_qubits, Rng(100 + i));
    for (const auto& in : c.instructions) sim.apply(in);
    CHECK(sim.check_invariants());
  }
}

TEST_CASE("tableau sampling matches the dense state-vector oracle") {
  // Criterion-9a property at unit-test scale; the acceptance binary reruns
  // it at 1e5 shots per circuit.
  const double tvd = max_oracle_tvd(/*circuits=*/10, /*shots=*/20000, 11);
  CHECK(tvd < 0.02);
}
