#include <cmath>

#include "doctest.h"
#include "heraldsim/photonics.hpp"
#include "heraldsim/rng.hpp"

using namespace heraldsim;

TEST_CASE("channel transmission is exact and multiplicative") {
  FiberLink link;
  link.distance_km = 1.0;
  link.tau_db_per_km = 0.17;
  const double expected = std::pow(10.0, -0.017);
  CHECK(std::abs(channel_transmission(link) - expected) <=
        1e-12 * expected);
  Rng rng(314);
  for (int i = 0; i < 100; ++i) {
    const double total = 0.5 + 99.5 * rng.uniform();
    const double cut = total * rng.uniform();
    FiberLink a = link, b = link, whole = link;
    a.distance_km = cut;
    b.distance_km = total - cut;
    whole.distance_km = total;
    const double split =
        channel_transmission(a) * channel_transmission(b);
    CHECK(std::abs(split - channel_transmission(whole)) <=
          1e-12 * channel_transmission(whole));
  }
}

TEST_CASE("cavity defaults sit in the strong-coupling regime") {
  CavityParams cavity;
  CHECK(cavity.cooperativity() == doctest::Approx(11.24).epsilon(1e-3));
  CHECK(cavity.cooperativity() > 1.0);
}

TEST_CASE("mode amplitudes conserve flux with an atom coupled") {
  CavityParams cavity;
  const CavityAmplitudes with_atom = cavity_amplitudes(cavity, 1);
  // The five populated modes carry the input power up to the ~0.1% that the
  // imperfect fiber-cavity mode match scatters outside them.
  CHECK(with_atom.total_flux() ==
        doctest::Approx(cavity.alpha * cavity.alpha).epsilon(2e-3));
  const CavityAmplitudes empty = cavity_amplitudes(cavity, 0);
  CHECK(std::abs(empty.a) == 0.0);  // no atom, no atomic loss
  // The QNDM signal is the pi phase flip of the reflected mode between the
  // empty and the coupled cavity.
  CHECK(with_atom.r.real() > 0.0);
  CHECK(empty.r.real() < 0.0);
}

TEST_CASE("qndm probabilities reproduce the published operating point") {
  CavityParams cavity;
  const QndmProbabilities q = qndm_probabilities(cavity);
  CHECK(q.p_detect == doctest::Approx(0.95).epsilon(0.022));
  CHECK(q.p_transmit == doctest::Approx(0.90).epsilon(0.023));
  CHECK(std::abs(q.product() - 0.855) < 0.01);
  CHECK(q.p_full_trace > q.product());
  CHECK(q.p_full_trace <= 1.0);
}

TEST_CASE("conversion efficiency peaks at the calibrated operating point") {
  ConversionParams conv = default_conversion();
  CHECK(conversion_efficiency(conv) > 0.95);
  ConversionParams half = conv;
  half.pump_watts = conv.pump_watts / 4.0;
  CHECK(conversion_efficiency(half) < conversion_efficiency(conv));
  ConversionParams off = conv;
  off.pump_watts = 0.0;
  CHECK(conversion_efficiency(off) == 0.0);
}

TEST_CASE("link budgets compose the protocol-specific factors") {
  CavityParams cavity;
  FiberLink p2{1.0, 0.17, 1.44};
  const LinkBudget two =
      link_budget(p2, cavity, 0.9, 0.5, 0.03, Protocol::Two);
  CHECK(two.eta_tot == doctest::Approx(two.eta_channel * two.eta_conv *
                                       two.p_qndm_detect * two.p_qndm_transmit *
                                       two.p_trs));
  CHECK(two.eta_tot == doctest::Approx(0.370).epsilon(0.02));
  CHECK(two.latency_s ==
        doctest::Approx(1000.0 * 1.44 / kSpeedOfLight).epsilon(1e-9));
  FiberLink p1{1.0, 0.70, 1.44};
  const LinkBudget one =
      link_budget(p1, cavity, 0.9, 0.5, 0.03, Protocol::One);
  CHECK(one.eta_conv == 1.0);
  CHECK(one.p_trs == 1.0);
  CHECK(one.eta_tot == doctest::Approx(one.eta_channel * one.p_qndm_detect *
                                       one.p_qndm_transmit));
  CHECK(one.eta_tot > two.eta_tot);
}
