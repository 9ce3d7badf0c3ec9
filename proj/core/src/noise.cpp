#include "ddm/noise.hpp"

#include <cmath>

#include "ddm/rng.hpp"

namespace ddm {

namespace {

// Kahan-compensated accumulator; keeps Monte-Carlo reductions deterministic
// and accurate independent of sample count
struct Accum {
  double sum = 0, c = 0;
  void add(double x) {
    double y = x - c;
    double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
};

int ou_steps(double duration, double tau_c) {
  return std::max(10, int(std::ceil(duration / (tau_c / 10.0))));
}

}  // namespace

std::vector<double> sample_trajectory(const NoiseModel& m, double duration,
                                      double dt, uint64_t seed,
                                      uint64_t trajectory) {
  if (duration < 0 || dt <= 0)
    throw std::invalid_argument("sample_trajectory: need duration >= 0, dt > 0");
  const int n = int(std::ceil(duration / dt - 1e-12));
  Prng rng(seed, trajectory);
  std::vector<double> out(n + 1);
  if (m.kind == NoiseKind::quasi_static) {
    const double x = m.sigma * rng.gaussian();
    for (auto& v : out) v = x;
    return out;
  }
  if (m.tau_c <= 0)
    throw std::invalid_argument("sample_trajectory: OU needs tau_c > 0");
  const double decay = std::exp(-dt / m.tau_c);
  const double kick = m.sigma * std::sqrt(1.0 - decay * decay);
  double x = m.sigma * rng.gaussian();  // stationary start
  out[0] = x;
  for (int i = 1; i <= n; ++i) {
    x = x * decay + kick * rng.gaussian();
    out[i] = x;
  }
  return out;
}

double integrated_phase(const NoiseModel& m, double t_gate, uint64_t seed,
                        uint64_t trajectory) {
  if (t_gate <= 0) return 0;
  if (m.kind == NoiseKind::quasi_static) {
    Prng rng(seed, trajectory);
    return m.sigma * rng.gaussian() * t_gate;
  }
  const int n = ou_steps(t_gate, m.tau_c);
  const double dt = t_gate / n;
  std::vector<double> traj = sample_trajectory(m, t_gate, dt, seed, trajectory);
  Accum acc;
  for (int i = 0; i < n; ++i) acc.add(0.5 * dt * (traj[i] + traj[i + 1]));
  return acc.sum;
}

PhaseStatistics phase_variance(const NoiseModel& m, double t_gate,
                               int n_samples, uint64_t seed) {
  if (n_samples < 2)
    throw std::invalid_argument("phase_variance: need at least 2 samples");
  std::vector<double> phi(n_samples);
  for (int k = 0; k < n_samples; ++k)
    phi[k] = integrated_phase(m, t_gate, seed, uint64_t(k));

  Accum mean_acc;
  for (double p : phi) mean_acc.add(p);
  const double mean = mean_acc.sum / n_samples;

  Accum m2, m3, m4;
  for (double p : phi) {
    const double d = p - mean;
    m2.add(d * d);
    m3.add(d * d * d);
    m4.add(d * d * d * d);
  }
  const double var = m2.sum / (n_samples - 1);
  const double var_b = m2.sum / n_samples;  // biased, for the moment ratios

  PhaseStatistics st;
  st.n_samples = n_samples;
  st.variance = var;
  st.variance_std_error = var * std::sqrt(2.0 / (n_samples - 1));
  if (var_b > 0) {
    st.skewness = (m3.sum / n_samples) / std::pow(var_b, 1.5);
    st.excess_kurtosis = (m4.sum / n_samples) / (var_b * var_b) - 3.0;
  }
  return st;
}

double analytic_phase_variance(const NoiseModel& m, double t_gate) {
  if (m.kind == NoiseKind::quasi_static)
    return m.sigma * m.sigma * t_gate * t_gate;
  const double tau = m.tau_c;
  return 2.0 * m.sigma * m.sigma * tau *
         (t_gate - tau * (1.0 - std::exp(-t_gate / tau)));
}

double calibrate(NoiseKind kind, double target_variance, double t_gate,
                 double tau_c) {
  if (target_variance <= 0)
    throw std::invalid_argument("calibrate: target variance must be positive");
  if (t_gate <= 0)
    throw std::invalid_argument("calibrate: gate time must be positive");
  if (kind == NoiseKind::quasi_static)
    return std::sqrt(target_variance) / t_gate;
  if (tau_c <= 0) throw std::invalid_argument("calibrate: OU needs tau_c > 0");
  const double shape =
      2.0 * tau_c * (t_gate - tau_c * (1.0 - std::exp(-t_gate / tau_c)));
  return std::sqrt(target_variance / shape);
}

}  // namespace ddm
