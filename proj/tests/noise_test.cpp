#include <array>
#include <cmath>

#include "doctest.h"
#include "heraldsim/noise.hpp"
#include "heraldsim/surgery.hpp"

using namespace heraldsim;

namespace {

// 4-vector of Pauli probabilities (I, X, Y, Z) for a single-qubit channel.
using PVec = std::array<double, 4>;

PVec idle_pvec(double t, double t1, double t2) {
  const IdleChannel c = idle_pauli_twirl(t, t1, t2);
  return {1.0 - c.px - c.py - c.pz, c.px, c.py, c.pz};
}

// Composition of two Pauli channels (convolution over the Pauli group).
PVec compose(const PVec& a, const PVec& b) {
  static const int mul[4][4] = {
      {0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  PVec out{};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) out[mul[i][j]] += a[i] * b[j];
  }
  return out;
}

double tvd(const PVec& a, const PVec& b) {
  double s = 0.0;
  for (int i = 0; i < 4; ++i) s += std::abs(a[i] - b[i]);
  return s / 2.0;
}

}  // namespace

TEST_CASE("kraus probability vectors sum to one exactly") {
  GateTimes times;
  BellCircuit bell =
      build_bell_circuit({CodeFamily::BaconShor, 3}, times, MergeConfig{});
  PhysicalParams phys;
  for (const NoiseBinding& binding :
       {bind_depolarizing(bell.circuit, {3.7e-3}),
        bind_physical(bell.circuit, phys)}) {
    for (const auto& channels : binding.channels) {
      for (const NoiseChannel& ch : channels) {
        const auto probs = channel_probabilities(ch);
        double tail = 0.0;
        for (size_t i = 1; i < probs.size(); ++i) tail += probs[i];
        CHECK(tail + probs[0] == 1.0);
        for (double p : probs) CHECK(p >= 0.0);
      }
    }
  }
}

TEST_CASE("idle channel is a semigroup") {
  const double t1 = 3.0, t2 = 0.5;
  for (auto [ta, tb] : {std::pair{1e-4, 1e-4}, {4.31e-3, 8.88e-3},
                        {1e-2, 1e-1}, {0.3, 0.05}}) {
    const PVec direct = idle_pvec(ta + tb, t1, t2);
    const PVec composed =
        compose(idle_pvec(ta, t1, t2), idle_pvec(tb, t1, t2));
    CHECK(tvd(direct, composed) < 1e-6);
  }
}

TEST_CASE("idle twirl limits") {
  const IdleChannel zero = idle_pauli_twirl(0.0, 3.0, 0.5);
  CHECK(zero.px == 0.0);
  CHECK(zero.py == 0.0);
  CHECK(zero.pz == 0.0);
  // Fully decohered limit: uniform over I/X/Y/Z when T2 = 2 T1.
  const IdleChannel deep = idle_pauli_twirl(1e9, 1.0, 2.0);
  CHECK(deep.px == doctest::Approx(0.25));
  CHECK(deep.py == doctest::Approx(0.25));
  CHECK(deep.pz == doctest::Approx(0.25));
  CHECK_THROWS(idle_pauli_twirl(1e-6, 1.0, 2.5));
}

TEST_CASE("depolarizing sampler hits the requested rate") {
  Rng rng(99);
  const double p = 0.3;
  int hits = 0;
  std::array<int, 16> pair_counts{};
  const int shots = 200000;
  for (int i = 0; i < shots; ++i) {
    const std::string s = sample_depolarizing(p, 2, rng);
    if (s.empty()) continue;
    ++hits;
    auto idx = [](char c) { return c == 'I' ? 0 : c == 'X' ? 1 : c == 'Y' ? 2 : 3; };
    ++pair_counts[idx(s[0]) * 4 + idx(s[1])];
  }
  CHECK(double(hits) / shots == doctest::Approx(p).epsilon(0.02));
  CHECK(pair_counts[0] == 0);  // II never sampled as an error
  for (int k = 1; k < 16; ++k) {
    CHECK(double(pair_counts[k]) / shots ==
          doctest::Approx(p / 15).epsilon(0.1));
  }
}

TEST_CASE("perfect-tagged instructions carry no noise") {
  GateTimes times;
  BellCircuit bell =
      build_bell_circuit({CodeFamily::RotatedSurface, 3}, times, MergeConfig{});
  const NoiseBinding binding = bind_depolarizing(bell.circuit, {1e-3});
  for (size_t i = 0; i < bell.circuit.instructions.size(); ++i) {
    if (bell.circuit.instructions[i].tag.rfind("perfect", 0) == 0) {
      CHECK(binding.channels[i].empty());
    }
  }
}
