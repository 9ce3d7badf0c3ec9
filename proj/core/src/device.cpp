#include "ddm/device.hpp"

#include <cmath>
#include <sstream>

namespace ddm {

using constants::pi;

double qubit_splitting(double Delta, double T) {
  return std::sqrt(Delta * Delta + 4.0 * T * T);
}

double mixing_angle(double Delta, double T) {
  return 0.5 * std::atan2(2.0 * T, Delta);
}

double resonator_frequency(double L, double Z0, double C0) {
  if (L <= 0 || Z0 <= 0 || C0 <= 0)
    throw std::invalid_argument("resonator_frequency: L, Z0, C0 must be positive");
  return pi / (L * Z0 * C0) * 1e-9;  // rad/s -> rad/ns
}

double c0_for_resonator_frequency(double omega0, double L, double Z0) {
  if (omega0 <= 0 || L <= 0 || Z0 <= 0)
    throw std::invalid_argument("c0_for_resonator_frequency: inputs must be positive");
  return pi / (L * Z0 * omega0 * 1e9);
}

double coupling_strength(const DeviceParams& p) {
  if (p.C_tot <= 0 || p.C0 <= 0 || p.L <= 0 || p.Z0 <= 0)
    throw std::invalid_argument("coupling_strength: electrical parameters must be positive");
  const double theta = mixing_angle(p.Delta, p.T);
  const double rad_per_s = constants::e_charge / (2.0 * constants::hbar) *
                           (p.C_c / p.C_tot) * (1.0 / (p.L * p.C0)) *
                           std::sqrt(pi * constants::hbar / p.Z0) *
                           std::sin(2.0 * theta);
  return rad_per_s * 1e-9;
}

double zeeman_splitting(const DeviceParams& p) {
  return std::abs(p.g_factor) * constants::mu_bohr_over_hbar_mT * p.B_z;
}

DerivedQuantities derive(const DeviceParams& p) {
  DerivedQuantities d;
  d.omega = qubit_splitting(p.Delta, p.T);
  d.theta = mixing_angle(p.Delta, p.T);
  d.g = coupling_strength(p);
  d.omega0 = resonator_frequency(p.L, p.Z0, p.C0);
  d.kappa = d.omega0 / p.Q;
  d.E_z = zeeman_splitting(p);
  d.T_eff = d.omega / 2.0;
  return d;
}

Operator build_reduced_hamiltonian(double Delta, double T) {
  Mat m(2, 2);
  m << 0.0, T, T, -Delta;
  return {HilbertSpace{{2}}, m};
}

Operator build_two_electron_hamiltonian(const DeviceParams& p) {
  const double Ez = zeeman_splitting(p);
  const double u = p.U_charge - p.W_inter;  // residual Coulomb penalty
  Mat m = Mat::Zero(6, 6);
  // basis: 0 |(1,1)S>, 1 |(0,2)S>, 2 |(2,0)S>, 3 |T0>, 4 |T+>, 5 |T->
  m(1, 1) = -p.Delta;
  m(2, 2) = p.Delta + 2.0 * u;
  m(0, 1) = m(1, 0) = p.T;
  m(0, 2) = m(2, 0) = p.T;
  m(4, 4) = Ez;
  m(5, 5) = -Ez;
  return {HilbertSpace{{6}}, m};
}

bool ValidationReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

bool ValidationReport::hard_failure() const {
  for (const auto& c : checks)
    if (!c.pass && c.hard) return true;
  return false;
}

namespace {
std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}
}  // namespace

ValidationReport validate_device(const DeviceParams& p, double g_operating,
                                 double delta, int n_max) {
  ValidationReport r;
  const DerivedQuantities d = derive(p);

  ValidationCheck triplet;
  triplet.name = "triplet_isolation";
  triplet.pass = d.E_z > d.omega;
  triplet.hard = true;
  triplet.detail = "E_z = " + fmt(d.E_z) + " rad/ns vs omega = " +
                   fmt(d.omega) + " rad/ns";
  r.checks.push_back(triplet);

  ValidationCheck strong;
  strong.name = "strong_coupling";
  strong.pass = g_operating * p.T2 > 1.0;
  strong.hard = true;
  strong.detail = "g*T2 = " + fmt(g_operating * p.T2);
  r.checks.push_back(strong);

  ValidationCheck disp;
  disp.name = "dispersive_margin";
  disp.pass = delta >= 4.0 * g_operating;
  disp.hard = false;
  disp.detail = "delta/g = " + fmt(delta / g_operating) +
                (delta >= 10.0 * g_operating ? "" : " (marginal, below 10)");
  r.checks.push_back(disp);

  ValidationCheck fock;
  fock.name = "fock_truncation";
  fock.pass = n_max >= p.n_bar + 4.0;
  fock.hard = false;
  fock.detail = "n_max = " + std::to_string(n_max) + ", n_bar = " + fmt(p.n_bar) +
                "; simulated runs also track the top-level population";
  r.checks.push_back(fock);

  return r;
}

}  // namespace ddm
