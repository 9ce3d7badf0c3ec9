#pragma once

#include <vector>

#include "ddm/device.hpp"
#include "ddm/linalg.hpp"

// Hamiltonian builders and time evolution. All builders place qubits first
// and the resonator mode last. Rotating frames are explicit: each builder
// documents which frame its matrix lives in, and schedule verification undoes
// frame phases before comparing against an ideal target.

namespace ddm {

enum class HamiltonianKind {
  jaynes_cummings,       // g (a s+ + a^dag s-), resonant interaction frame
  driven_single_qubit,   // full driven model in the drive frame
  dispersive_x,          // driven model after the dispersive approximation
  dispersive_z,          // off-resonant drive, pure sigma_z rotation
  dispersive_two_qubit,  // two qubits exchanging via a shared virtual photon
};

struct HamiltonianSpec {
  HamiltonianKind kind = HamiltonianKind::jaynes_cummings;
  double g = 0;         // qubit-resonator coupling, rad/ns
  double omega = 0;     // qubit splitting, rad/ns
  double omega0 = 0;    // resonator frequency, rad/ns
  double omega_dr = 0;  // drive frequency, rad/ns
  double Omega = 0;     // drive amplitude, rad/ns
  int n_max = 5;        // Fock truncation (levels 0..n_max)
  bool force = false;   // bypass dispersive-regime preconditions

  double delta() const { return std::abs(omega - omega0); }
  double chi() const { return g * g / delta(); }        // dispersive shift
  double rabi() const;                                  // Omega_R
  double rabi_z() const;                                // Omega'_R
};

// g (a s+ + a^dag s-) on [2, n_max+1]
Operator build_jc(double g, int n_max);

// (omega0-omega_dr) a^dag a + (omega-omega_dr)/2 sz - g (a^dag s- + a s+)
//   + Omega_R/2 sx,  with Omega_R = 2 Omega g / (omega0 - omega_dr)
Operator build_driven_single_qubit(const HamiltonianSpec& s);

// (omega0-omega_dr) a^dag a + (omega + g^2/delta - omega_dr)/2 sz + Omega_R/2 sx
Operator build_dispersive_x(const HamiltonianSpec& s);

// (omega0-omega_dr) a^dag a + Omega'_R/2 sz,
//   Omega'_R = omega + g^2/delta - omega_dr + Omega_R^2 / (2 (omega - omega_dr))
Operator build_dispersive_z(const HamiltonianSpec& s);

// (omega0 + g^2/delta (sz1+sz2)) a^dag a + (omega + g^2/delta)/2 (sz1+sz2)
//   + g^2/delta (s+1 s-2 + s-1 s+2)   on [2, 2, n_max+1]
Operator build_dispersive_two_qubit(double g, double delta, double omega,
                                    double omega0, int n_max);

Operator build_hamiltonian(const HamiltonianSpec& s);

struct LindbladChannel {
  std::string name;
  Operator op;  // full collapse operator including the sqrt(rate) scale
};

// standard channels on a given space (qubit index q, resonator last)
LindbladChannel relaxation_channel(const HilbertSpace& s, int q, double T1);
LindbladChannel dephasing_channel(const HilbertSpace& s, int q, double T2);
LindbladChannel photon_loss_channel(const HilbertSpace& s, double kappa);

struct ScheduleStep {
  Operator H;
  double duration = 0;  // ns
};

struct SimResult {
  std::vector<double> times;
  std::vector<State> states;
  double max_top_fock_population = 0;  // only tracked for multipartite spaces
  double max_trace_error = 0;
  double max_herm_error = 0;
  double min_eigenvalue = 0;
};

// piecewise-constant exact evolution; eigendecomposition per segment.
// t_grid must be non-decreasing and within [0, total duration].
SimResult evolve_unitary(const std::vector<ScheduleStep>& steps,
                         const State& psi0, const std::vector<double>& t_grid);

// fixed-step RK4 for drho/dt = -i[H,rho] + sum_k D[L_k] rho. The step obeys
// h <= min(1/(50 max_rate), 1/(50 |H|)) and subdivides each grid interval
// evenly. Trace/Hermiticity are monitored; positivity is checked post hoc
// (min eigenvalue >= -1e-7) and violations raise NumericalError.
SimResult evolve_lindblad(const std::vector<ScheduleStep>& steps,
                          const std::vector<LindbladChannel>& channels,
                          const State& rho0, const std::vector<double>& t_grid);

struct DephasingRates {
  double T2_from_Tb = 0;          // omega T_b^2, ns
  double gamma_phi_readout = 0;   // 8 n_bar (g^2/delta)^2 / kappa, rad/ns
  double T2star_from_field = 0;   // 1/(|g| mu_B dB_rms), ns
};

DephasingRates dephasing_rates(const DeviceParams& p, double g_operating,
                               double delta);

}  // namespace ddm
