#pragma once

#include <cstdint>
#include <vector>

#include "ddm/linalg.hpp"

// Classical noise on the gate rates. The primitive process is a zero-mean
// Gaussian fluctuation of the rate that generates a gate (the two-qubit
// exchange rate, or a single-qubit Rabi rate); the accumulated phase
// phi = integral of the fluctuation over the gate window multiplies the
// gate's error generator as exp(-i phi G).

namespace ddm {

enum class NoiseKind { quasi_static, ornstein_uhlenbeck };

struct NoiseModel {
  NoiseKind kind = NoiseKind::quasi_static;
  double sigma = 0;    // rms rate fluctuation, rad/ns
  double tau_c = 10;   // OU correlation time, ns
  // open-system channel toggles consumed by schedule verification
  bool enable_T1 = false;
  bool enable_T2 = false;
  bool enable_T2star = false;
  bool enable_kappa = false;
};

// fluctuation samples on t = 0, dt, ..., n_steps*dt for one trajectory.
// quasi_static: one constant N(0, sigma^2) draw; ornstein_uhlenbeck: exact
// stationary discretization, autocorrelation sigma^2 exp(-|t|/tau_c).
std::vector<double> sample_trajectory(const NoiseModel& m, double duration,
                                      double dt, uint64_t seed,
                                      uint64_t trajectory);

// accumulated phase over [0, t_gate] for one trajectory (trapezoidal for OU,
// exact for quasi-static)
double integrated_phase(const NoiseModel& m, double t_gate, uint64_t seed,
                        uint64_t trajectory);

struct PhaseStatistics {
  double variance = 0;
  double variance_std_error = 0;  // sqrt(2/(n-1)) * variance for Gaussian phi
  double skewness = 0;
  double excess_kurtosis = 0;
  int n_samples = 0;
};

PhaseStatistics phase_variance(const NoiseModel& m, double t_gate,
                               int n_samples, uint64_t seed);

// closed-form variance of the integrated process
//   quasi-static: sigma^2 t^2
//   OU: 2 sigma^2 tau (t - tau (1 - exp(-t/tau)))
double analytic_phase_variance(const NoiseModel& m, double t_gate);

// smallest sigma with Var(phi) = target at t_gate, from the closed forms
double calibrate(NoiseKind kind, double target_variance, double t_gate,
                 double tau_c = 10);

}  // namespace ddm
