#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ddm/device.hpp"
#include "ddm/dynamics.hpp"
#include "ddm/noise.hpp"

// Gate synthesis and verification. A schedule is a sequence of
// piecewise-constant Hamiltonian segments plus the ideal unitary it should
// realize on the qubit subspace. Verification simulates the schedule in one
// of three modes and compares against the ideal target in the schedule's
// rotating frame.

namespace ddm {

enum class GateKind { rx, rz, sqrt_iswap, qubit_photon_swap, transport };

// parameters a gate recipe is evaluated at; frequencies in rad/ns
struct OperatingPoint {
  double g = 0;         // qubit-resonator coupling used for synthesis
  double omega = 0;     // qubit splitting at this working point
  double omega0 = 0;    // resonator frequency
  double Omega = 0;     // microwave drive amplitude
  double delta_2q = 0;  // qubit-resonator detuning for the exchange gate
  int n_max = 5;
  double Delta = 0;     // dot bias behind omega (noise sensitivity)
  double T = 0;         // tunneling behind omega
  bool force = false;   // bypass dispersive preconditions
};

struct PulseSegment {
  HamiltonianSpec spec;
  double duration = 0;
  std::vector<int> coupled;  // qubit indices with resonator coupling enabled
};

struct PulseSchedule {
  GateKind kind = GateKind::rx;
  std::string name;
  int n_qubits = 1;
  std::vector<PulseSegment> segments;
  OperatingPoint op;
  Operator ideal_target;     // unitary on the qubit subspace (or payload map)
  Operator error_generator;  // G in the error unitary exp(-i phi G)
  double nominal_rate = 0;   // rate whose fluctuation drives the error phase
  double frame_qubit = 0;    // per-qubit frame frequency stripped at readout
  double frame_resonator = 0;
  int resonator_start = 0;   // Fock level the verification starts from

  double total_duration() const;
};

// dispersive sigma_x rotation; drive at omega + g^2/delta cancels the Stark
// shift so the drive-frame generator is purely (Omega_R/2) sigma_x.
// duration * Omega_R = angle exactly; angle must be >= 0
PulseSchedule synthesize_rx(double angle, const OperatingPoint& op);

// off-resonant drive, generator (Omega'_R/2) sigma_z. Negative Omega'_R
// realizes the opposite rotation sense; the ideal target carries sign(Omega'_R)
PulseSchedule synthesize_rz(double angle, const OperatingPoint& op);

// virtual-photon exchange at duration pi*delta/(4 g^2); the target
// exp(-i pi/4 [(3/2)(sz1+sz2) + s+1 s-2 + s-1 s+2]) keeps the local phases
PulseSchedule synthesize_sqrt_iswap(const OperatingPoint& op);

// resonant transfer qubit -> photon at duration pi/(2g); payload map
// diag(1, -i), the fixed phase is compensated by a frame rotation
PulseSchedule synthesize_qubit_photon_swap(const OperatingPoint& op);

// two resonant swaps moving a payload from qubit 0 to qubit 1 through the
// resonator; payload map diag(1, -1)
PulseSchedule transport_qubit(const OperatingPoint& op);

// bare exchange target exp(-i pi/4 (s+1 s-2 + s-1 s+2)) and the local
// z-phase correction with correction * ideal_target = bare target
Operator bare_sqrt_iswap_target();
Operator sqrt_iswap_phase_correction();

enum class VerifyMode { exact_full, effective, lindblad };

struct FidelityReport {
  std::string gate;
  std::string mode;
  int n_trajectories = 1;
  uint64_t seed = 0;
  double mean_fidelity = 0;
  double std_dev = 0;
  double t_gate_ns = 0;
  std::vector<std::pair<std::string, double>> breakdown;

  double breakdown_value(const std::string& key, double fallback = 0) const;
};

// exact_full: drives the unreduced model (detuned interaction for single-qubit
//   gates, lab-frame exchange for the two-qubit gate) and extracts the
//   qubit-subspace map by projection, stripping frame phases.
// effective: drives the schedule's own effective Hamiltonians; synthesized
//   gates reproduce their targets to numerical precision.
// lindblad: effective Hamiltonians in the schedule frame plus the collapse
//   channels enabled in the noise model; reports the mean state fidelity over
//   the stabilizer input set (6 states per qubit pair dimension 2, 16 product
//   states for two qubits). T2star acts as a per-trajectory quasi-static
//   sigma_z detuning, not a collapse operator.
FidelityReport verify_gate(const PulseSchedule& sched, VerifyMode mode,
                           const DeviceParams& p,
                           const NoiseModel* noise = nullptr, int n_traj = 1,
                           uint64_t seed = 0);

// Monte-Carlo average over trajectories of the error unitary exp(-i phi G),
// phi the integrated fluctuation of the schedule's nominal rate.
// mean_fidelity is the stabilizer-state mean; the breakdown also carries the
// average-gate and process fidelities since the three differ. When collapse
// channels are enabled the phase average is combined multiplicatively with a
// single open-system pass, reported separately in the breakdown.
FidelityReport noisy_gate_fidelity(const PulseSchedule& sched,
                                   const NoiseModel& model, int n_traj,
                                   uint64_t seed, const DeviceParams& p);

// sigma of the schedule's own rate induced by the calibrated exchange-rate
// sigma. Off the sweet spot the two rates are related by the ratio of their
// bias derivatives (central finite differences); at the sweet spot both
// derivatives vanish and the scale-free fallback sigma_X = |X| sigma/lambda
// is used instead.
double induced_sigma(const PulseSchedule& sched, double sigma_lambda);

// stabilizer verification inputs: {|0>,|1>,|+>,|->,|+i>,|-i>} for one qubit,
// the 16 products of {|0>,|1>,|+>,|+i>} for two
std::vector<State> stabilizer_states(int n_qubits);

// linear bias ramp Delta: delta_start -> 0 over t_f; t_f = 0 is a quench
struct SweepProfile {
  double delta_start = 0;
  double t_f = 0;
  int n_steps = 2000;
};

struct InitializeResult {
  double fidelity = 0;           // overlap with |0> at the end of the ramp
  double diabatic_estimate = 0;  // exp(-2 pi T^2 / (dDelta/dt))
  double ramp_rate = 0;          // dDelta/dt, rad/ns^2
};

// evolves the ground state of the biased molecule down the ramp to the
// charge-symmetric point; requires delta_start >= 20 T
InitializeResult adiabatic_initialize(const SweepProfile& sweep,
                                      const DeviceParams& p);

// |0> = (|(1,1)S> - |(0,2)S>)/sqrt2 on the singlet 2-level space
State molecular_ground_state();

const char* gate_name(GateKind k);

}  // namespace ddm
