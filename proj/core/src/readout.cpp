#include "ddm/readout.hpp"

#include <cmath>
#include <stdexcept>

namespace ddm {

double dispersive_pull(double g, double delta) {
  if (delta <= 0) throw std::invalid_argument("dispersive_pull: delta must be > 0");
  return g * g / delta;
}

double pulled_frequency(double omega0, double chi, int qubit_state) {
  if (qubit_state != 0 && qubit_state != 1)
    throw std::invalid_argument("pulled_frequency: qubit_state must be 0 or 1");
  return qubit_state == 0 ? omega0 - chi : omega0 + chi;
}

Spectrum transmission_spectrum(const SpectrumRequest& req) {
  if (req.n_points < 2)
    throw std::invalid_argument("transmission_spectrum: need n_points >= 2");
  if (req.span <= 0)
    throw std::invalid_argument("transmission_spectrum: span must be > 0");
  if (req.kappa <= 0)
    throw std::invalid_argument("transmission_spectrum: kappa must be > 0");

  Spectrum sp;
  sp.chi = dispersive_pull(req.g, req.delta);
  sp.peak_omega = pulled_frequency(req.omega0, sp.chi, req.qubit_state);
  sp.fwhm = req.kappa;

  const double half = 0.5 * req.kappa;
  const double lo = req.omega0 - 0.5 * req.span;
  const double step = req.span / (req.n_points - 1);
  sp.omega_dr.resize(req.n_points);
  sp.transmission.resize(req.n_points);
  for (int i = 0; i < req.n_points; ++i) {
    const double w = lo + i * step;
    const double det = w - sp.peak_omega;
    sp.omega_dr[i] = w;
    sp.transmission[i] = half * half / (det * det + half * half);
  }
  return sp;
}

double measurement_dephasing_rate(double n_bar, double g, double delta,
                                  double kappa) {
  if (kappa <= 0)
    throw std::invalid_argument("measurement_dephasing_rate: kappa must be > 0");
  const double chi = dispersive_pull(g, delta);
  return 8.0 * n_bar * chi * chi / kappa;
}

double measurement_time(double n_bar, double g, double delta, double kappa) {
  const double rate = measurement_dephasing_rate(n_bar, g, delta, kappa);
  if (rate <= 0)
    throw std::invalid_argument("measurement_time: dephasing rate must be > 0");
  return 1.0 / rate;
}

double discrimination_separation(double g, double delta, double kappa) {
  if (kappa <= 0)
    throw std::invalid_argument("discrimination_separation: kappa must be > 0");
  return 2.0 * dispersive_pull(g, delta) / kappa;
}

}  // namespace ddm
