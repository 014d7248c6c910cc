#include "heraldsim/photonics.hpp"

#include <cmath>
#include <stdexcept>

namespace heraldsim {

namespace {
constexpr std::complex<double> kI{0.0, 1.0};
}

std::complex<double> CavityParams::mu_fc() const {
  return mu_fc_mag * std::exp(kI * mu_fc_arg);
}

double CavityParams::cooperativity() const {
  return g * g / (2.0 * gamma * kappa);
}

double CavityAmplitudes::total_flux() const {
  return std::norm(r) + std::norm(r0) + std::norm(t) + std::norm(m) +
         std::norm(a);
}

double channel_transmission(const FiberLink& link) {
  return std::pow(10.0, -link.distance_km * link.tau_db_per_km / 10.0);
}

CavityAmplitudes cavity_amplitudes(const CavityParams& p, int n_atoms) {
  if (n_atoms < 0) throw std::invalid_argument("n_atoms must be >= 0");
  const std::complex<double> mu = p.mu_fc();
  const double mu2 = std::norm(mu);
  const std::complex<double> atom_term = kI * p.delta_a + p.gamma;
  const std::complex<double> den =
      static_cast<double>(n_atoms) * p.g * p.g / atom_term + kI * p.delta_c +
      p.kappa;
  CavityAmplitudes out;
  out.r = (1.0 - mu2 * 2.0 * p.kappa_r / den) * p.alpha;
  out.r0 = std::sqrt(1.0 - mu2) * mu * 2.0 * p.kappa_r / den * p.alpha;
  out.t = mu * 2.0 * std::sqrt(p.kappa_r * p.kappa_t) / den * p.alpha;
  out.m = mu * 2.0 * std::sqrt(p.kappa_r * p.kappa_m) / den * p.alpha;
  out.a = mu * 2.0 * p.g *
          std::sqrt(p.kappa_r * p.gamma * static_cast<double>(n_atoms)) /
          atom_term / den * p.alpha;
  return out;
}

QndmProbabilities qndm_probabilities(const CavityParams& p) {
  if (p.alpha == 0.0) throw std::invalid_argument("alpha must be nonzero");
  const CavityAmplitudes c0 = cavity_amplitudes(p, 0);
  const CavityAmplitudes c1 = cavity_amplitudes(p, 1);
  // Coherent-state overlap <beta0|beta1> per mode:
  // exp(-|b0|^2/2 - |b1|^2/2 + conj(b0) b1).
  auto log_overlap = [](std::complex<double> b0, std::complex<double> b1) {
    return -0.5 * std::norm(b0) - 0.5 * std::norm(b1) + std::conj(b0) * b1;
  };
  QndmProbabilities out;
  // Herald probability from the monitored reflected mode alone.
  const std::complex<double> o_r = std::exp(log_overlap(c0.r, c1.r));
  out.p_detect = 0.5 * (1.0 + o_r.real());
  // Tracing the loss modes too (reported for reference).
  const std::complex<double> o_all =
      std::exp(log_overlap(c0.r, c1.r) + log_overlap(c0.r0, c1.r0) +
               log_overlap(c0.t, c1.t) + log_overlap(c0.m, c1.m) +
               log_overlap(c0.a, c1.a));
  out.p_full_trace = 0.5 * (1.0 + o_all.real());
  // Conditional transmissivity normalized so that detect * transmit equals
  // the reflected power fraction with one coupled atom.
  const double refl_fraction = std::norm(c1.r) / (p.alpha * p.alpha);
  out.p_transmit = refl_fraction / out.p_detect;
  return out;
}

ConversionParams default_conversion() {
  ConversionParams c;
  // Puts the 100 mW pump / 40 mm waveguide point at the sin^2 maximum:
  // sqrt(kappa_f_eff * 0.1) * 0.04 = pi/2.
  const double arg = M_PI / (2.0 * 0.04);
  c.kappa_f_eff = arg * arg / 0.1;
  return c;
}

double conversion_efficiency(const ConversionParams& p) {
  const double s = std::sin(std::sqrt(p.kappa_f_eff * p.pump_watts) *
                            p.length_m);
  return p.eta_max * s * s;
}

LinkBudget link_budget(const FiberLink& link, const CavityParams& cavity,
                       double eta_conv, double p_trs, double p_dark,
                       Protocol protocol) {
  LinkBudget b;
  b.eta_channel = channel_transmission(link);
  const QndmProbabilities q = qndm_probabilities(cavity);
  b.p_qndm_detect = q.p_detect;
  b.p_qndm_transmit = q.p_transmit;
  b.p_dark = p_dark;
  b.latency_s = link.distance_km * 1000.0 * link.r_glass / kSpeedOfLight;
  if (protocol == Protocol::Two) {
    b.eta_conv = eta_conv;
    b.p_trs = p_trs;
    b.eta_tot = b.eta_channel * b.eta_conv * q.product() * b.p_trs;
  } else {
    // Protocol 1 keeps the photon in the multi-mode fiber band: no frequency
    // conversion and no memory transfer step.
    b.eta_conv = 1.0;
    b.p_trs = 1.0;
    b.eta_tot = b.eta_channel * q.product();
  }
  return b;
}

}  // namespace heraldsim
