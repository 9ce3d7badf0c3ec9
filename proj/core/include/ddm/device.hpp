#pragma once

#include <string>
#include <vector>

#include "ddm/linalg.hpp"

// Double-dot molecule (DDM) device model: two gate-defined quantum dots
// sharing two electrons, biased near the (1,1)/(0,2) charge degeneracy and
// capacitively coupled to a superconducting stripline resonator.
//
// Internal units: angular frequencies/rates in rad/ns, times in ns, SI for
// electrical quantities (F, m, Ohm), magnetic field in mT.

namespace ddm {

namespace constants {
inline constexpr double e_charge = 1.602176634e-19;    // C
inline constexpr double hbar = 1.054571817e-34;        // J s
inline constexpr double mu_bohr = 9.2740100783e-24;    // J/T
// mu_B/hbar in rad/ns per mT
inline constexpr double mu_bohr_over_hbar_mT = mu_bohr / hbar * 1e-9 * 1e-3;
inline constexpr double pi = 3.141592653589793238462643383279502884;
}  // namespace constants

struct DeviceParams {
  // two-electron molecule
  double T = 2 * constants::pi * 2.5;    // interdot tunneling, rad/ns
  double Delta = 0.0;                    // (1,1)S/(0,2)S energy offset, rad/ns
  double E_os = 0.0;                     // single-dot orbital offset, rad/ns
  double mu_chem = 0.0;                  // chemical potential, rad/ns
  double U_charge = 2 * constants::pi * 241.8;  // on-site charging, rad/ns
  double W_inter = 0.0;                  // inter-dot Coulomb, rad/ns
  double B_z = 100.0;                    // in-plane field, mT
  double g_factor = -0.44;
  double dB_nuc_rms = 2.584;             // rms nuclear gradient field, mT

  // resonator and coupling network
  double L = 0.03;                       // stripline length, m
  double Z0 = 50.0;                      // characteristic impedance, Ohm
  double C0 = 1.0 / 3.0e10;              // capacitance per length, F/m
  double C_c = 400e-18;                  // dot-stripline coupling cap, F
  double C_tot = 200e-18;                // total dot capacitance, F
  double Q = 1e4;                        // resonator quality factor

  // decoherence inputs
  double T1 = 1000.0;                    // relaxation, ns
  double T2 = 100.0;                     // dephasing, ns
  double T2star = 10.0;                  // inhomogeneous dephasing, ns
  double T_b = 1.0;                      // bias-fluctuation correlation, ns
  double n_bar = 1.0;                    // mean resonator photon number
};

// quantities computed from DeviceParams; frequencies in rad/ns
struct DerivedQuantities {
  double omega = 0;     // qubit splitting sqrt(Delta^2 + 4 T^2)
  double theta = 0;     // mixing angle, atan2(2T, Delta)/2
  double g = 0;         // estimated qubit-resonator coupling (capacitance model)
  double omega0 = 0;    // resonator fundamental pi/(L Z0 C0)
  double kappa = 0;     // photon loss omega0/Q
  double E_z = 0;       // triplet Zeeman splitting |g| mu_B B_z
  double T_eff = 0;     // effective tunneling omega/2 at the working point
};

double qubit_splitting(double Delta, double T);
double mixing_angle(double Delta, double T);
double resonator_frequency(double L, double Z0, double C0);
// inverse of resonator_frequency in C0
double c0_for_resonator_frequency(double omega0, double L, double Z0);

// electrostatic estimate (e/2hbar)(C_c/C_tot)(1/(L C0)) sqrt(pi hbar/Z0) sin(2 theta);
// the sqrt factor is the resonator zero-point voltage scale. Accurate to order
// of magnitude only; gate synthesis uses an explicitly configured coupling.
double coupling_strength(const DeviceParams& p);

double zeeman_splitting(const DeviceParams& p);

DerivedQuantities derive(const DeviceParams& p);

// 2x2 singlet-sector Hamiltonian in basis {|(1,1)S>, |(0,2)S>}:
//   [[0, T], [T, -Delta]]
// eigenvectors at Delta = 0 are (|(1,1)S> -+ |(0,2)S>)/sqrt2 = |0>,|1>
// with eigenvalues -+T
Operator build_reduced_hamiltonian(double Delta, double T);

// 6x6 two-electron Hamiltonian in basis
//   {|(1,1)S>, |(0,2)S>, |(2,0)S>, |T0>, |T+>, |T->}
// Energy zero is the (1,1) charge sector: the orbital/chemical-potential
// terms shift every two-electron level equally and drop out, and the charge
// offsets from the bias term (-+2 Delta_dot) and Coulomb terms (U - W) are
// folded so that |(0,2)S> sits at exactly -Delta while |(2,0)S> is pushed to
// +Delta + 2(U - W). Tunneling couples singlets only; triplets are blocked
// by spin conservation and split by the Zeeman energy.
Operator build_two_electron_hamiltonian(const DeviceParams& p);

struct ValidationCheck {
  std::string name;
  bool pass = false;
  bool hard = false;  // hard failures flip the strict exit path
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  bool all_pass() const;
  bool hard_failure() const;
};

// checks: triplet isolation E_z > omega, strong coupling g T2 > 1,
// dispersive margin delta >= 4 g (informational), Fock truncation headroom
ValidationReport validate_device(const DeviceParams& p, double g_operating,
                                 double delta, int n_max);

}  // namespace ddm
