#pragma once

// Dispersive readout: the qubit pulls the resonator frequency by +-g^2/delta,
// so a transmission scan of the stripline shows one Lorentzian per qubit
// state. Peak positions, linewidth, measurement backaction and the resulting
// measurement time all live here.

#include <vector>

#include "ddm/device.hpp"

namespace ddm {

struct SpectrumRequest {
  int qubit_state = 0;   // 0 or 1
  double g = 0;          // rad/ns
  double delta = 0;      // |omega - omega0|, rad/ns
  double omega0 = 0;     // rad/ns
  double kappa = 0;      // rad/ns
  double span = 0;       // full scan width centered on omega0, rad/ns
  int n_points = 401;
};

struct Spectrum {
  std::vector<double> omega_dr;      // drive frequency grid, rad/ns
  std::vector<double> transmission;  // unit peak height
  double peak_omega = 0;             // rad/ns
  double chi = 0;                    // dispersive pull, rad/ns
  double fwhm = 0;                   // equals kappa
};

// chi = g^2/delta
double dispersive_pull(double g, double delta);

// qubit in |0> pulls the peak to omega0 - chi, |1> to omega0 + chi
double pulled_frequency(double omega0, double chi, int qubit_state);

// steady-state Lorentzian lineshape (kappa/2)^2 / ((w - w_pk)^2 + (kappa/2)^2)
Spectrum transmission_spectrum(const SpectrumRequest& req);

// measurement-induced dephasing rate 8 nbar chi^2 / kappa
double measurement_dephasing_rate(double n_bar, double g, double delta,
                                  double kappa);

// time to reach unit distinguishability, 1/gamma_phi
double measurement_time(double n_bar, double g, double delta, double kappa);

// peak separation in linewidths, 2 chi / kappa
double discrimination_separation(double g, double delta, double kappa);

}  // namespace ddm
