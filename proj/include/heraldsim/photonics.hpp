#pragma once

#include <complex>

namespace heraldsim {

// Speed of light in vacuum, m/s.
inline constexpr double kSpeedOfLight = 299792458.0;

struct FiberLink {
  double distance_km = 1.0;
  double tau_db_per_km = 0.17;  // 0.70 multi-mode, 0.17 single-mode
  double r_glass = 1.44;        // refractive index
};

// Atom-cavity parameters; angular frequencies stored as MHz * 2pi so only
// ratios enter the amplitude formulas.
struct CavityParams {
  double gamma = 1.0;        // atomic dipole decay rate / 2pi MHz
  double g = 25.0;           // atom-cavity coupling / 2pi MHz
  double kappa = 27.8;       // total field decay rate / 2pi MHz
  double kappa_r = 4.0 / 4.3 * 27.8;
  double kappa_t = 1.20;
  double kappa_m = 1.20;
  double mu_fc_mag = 0.99;   // fiber-cavity mode matching |mu_FC|
  double mu_fc_arg = -0.03;  // arg(mu_FC)
  double delta_a = 0.01;     // field-atom detuning / 2pi MHz
  double delta_c = 0.01;     // field-cavity detuning / 2pi MHz
  double alpha = 0.3;        // weak coherent pulse amplitude

  std::complex<double> mu_fc() const;
  double cooperativity() const;  // C = g^2 / (2 gamma kappa)
};

// Coherent amplitudes of the five populated photonic modes for a fixed
// number N of coupled atoms.
struct CavityAmplitudes {
  std::complex<double> r;   // reflection into the output mode
  std::complex<double> r0;  // reflection into the fiber cladding
  std::complex<double> t;   // resonator transmission loss
  std::complex<double> m;   // mirror absorption/scattering loss
  std::complex<double> a;   // atomic loss

  // Total squared magnitude over the five modes (flux bookkeeping).
  double total_flux() const;
};

struct QndmProbabilities {
  double p_detect = 0.0;    // P(0_a | 1_iq): atom heralds an input photon
  double p_transmit = 0.0;  // P(1_oq | 0_a): photon survives given herald
  double p_full_trace = 0.0;  // P(0_a) tracing all five photonic modes
  double product() const { return p_detect * p_transmit; }
};

struct ConversionParams {
  double eta_max = 1.0;
  // Effective three-wave-mixing coupling, lumping |kappa_f|^2 w_a w_b.
  // Calibrated so the 100 mW / 40 mm operating point sits at the sin^2
  // maximum; see default_conversion().
  double kappa_f_eff = 0.0;
  double pump_watts = 0.1;
  double length_m = 0.04;
};

ConversionParams default_conversion();

enum class Protocol { One, Two };

struct LinkBudget {
  double eta_channel = 0.0;
  double eta_conv = 1.0;
  double p_qndm_detect = 1.0;    // P(0_a | 1_iq)
  double p_qndm_transmit = 1.0;  // P(1_oq | 0_a)
  double p_trs = 1.0;            // state-transfer survival
  double p_dark = 0.0;           // false herald per detection window
  double eta_tot = 0.0;
  double latency_s = 0.0;        // one-way D * r_glass / c
};

// eta_channel = 10^(-D tau / 10).
double channel_transmission(const FiberLink& link);

// Appendix-style closed-form coherent amplitudes for N in {0, 1}.
CavityAmplitudes cavity_amplitudes(const CavityParams& params, int n_atoms);

// Detection probabilities of the post-pi/2-pulse state.  The herald
// probability uses the coherent-state overlap of the monitored reflected
// mode (tracing every loss mode as well gives p_full_trace, reported for
// reference); the conditional transmissivity is normalized so that
// p_detect * p_transmit equals the reflected power fraction |r_1|^2/|alpha|^2.
QndmProbabilities qndm_probabilities(const CavityParams& params);

// eta_conv = eta_max sin^2(sqrt(kappa_f_eff P_p) L).
double conversion_efficiency(const ConversionParams& params);

// Compose the per-photon success probability and one-way latency.
// Protocol 2 composes eta_channel * eta_conv * qndm product * p_trs;
// Protocol 1 (multi-mode, local generation) composes eta_channel * qndm
// product only.
LinkBudget link_budget(const FiberLink& link, const CavityParams& cavity,
                       double eta_conv, double p_trs, double p_dark,
                       Protocol protocol);

}  // namespace heraldsim
