#include "ddm/dynamics.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace ddm {

double HamiltonianSpec::rabi() const {
  const double denom = omega0 - omega_dr;
  if (denom == 0.0)
    throw std::invalid_argument("HamiltonianSpec: omega_dr equals omega0");
  return 2.0 * Omega * g / denom;
}

double HamiltonianSpec::rabi_z() const {
  const double det = omega - omega_dr;
  if (det == 0.0)
    throw std::invalid_argument("HamiltonianSpec: omega_dr equals omega");
  const double Or = rabi();
  return omega + chi() - omega_dr + 0.5 * Or * Or / det;
}

namespace {

void check_dispersive(const HamiltonianSpec& s, const char* what) {
  if (s.force) return;
  if (s.delta() < 4.0 * s.g)
    throw std::invalid_argument(std::string(what) +
                                ": dispersive precondition delta >= 4g violated");
}

HilbertSpace one_qubit_space(int n_max) { return HilbertSpace{{2, n_max + 1}}; }

}  // namespace

Operator build_jc(double g, int n_max) {
  HilbertSpace s = one_qubit_space(n_max);
  Operator a = embed(annihilation(n_max + 1), 1, s);
  Operator sp = embed(sigma_plus(), 0, s);
  return g * (a * sp + (a * sp).adjoint());
}

Operator build_driven_single_qubit(const HamiltonianSpec& s) {
  HilbertSpace sp = one_qubit_space(s.n_max);
  Operator a = embed(annihilation(s.n_max + 1), 1, sp);
  Operator n = a.adjoint() * a;
  Operator sz = embed(sigma_z(), 0, sp);
  Operator sx = embed(sigma_x(), 0, sp);
  Operator sm = embed(sigma_minus(), 0, sp);
  const double Or = s.rabi();
  return (s.omega0 - s.omega_dr) * n + 0.5 * (s.omega - s.omega_dr) * sz -
         s.g * (a.adjoint() * sm + (a.adjoint() * sm).adjoint()) +
         0.5 * Or * sx;
}

Operator build_dispersive_x(const HamiltonianSpec& s) {
  check_dispersive(s, "build_dispersive_x");
  HilbertSpace sp = one_qubit_space(s.n_max);
  Operator a = embed(annihilation(s.n_max + 1), 1, sp);
  Operator n = a.adjoint() * a;
  Operator sz = embed(sigma_z(), 0, sp);
  Operator sx = embed(sigma_x(), 0, sp);
  return (s.omega0 - s.omega_dr) * n +
         0.5 * (s.omega + s.chi() - s.omega_dr) * sz + 0.5 * s.rabi() * sx;
}

Operator build_dispersive_z(const HamiltonianSpec& s) {
  check_dispersive(s, "build_dispersive_z");
  if (!s.force && std::abs(s.omega - s.omega_dr) < 4.0 * std::abs(s.rabi()))
    throw std::invalid_argument(
        "build_dispersive_z: off-resonance precondition |omega-omega_dr| >= 4 Omega_R violated");
  HilbertSpace sp = one_qubit_space(s.n_max);
  Operator a = embed(annihilation(s.n_max + 1), 1, sp);
  Operator n = a.adjoint() * a;
  Operator sz = embed(sigma_z(), 0, sp);
  return (s.omega0 - s.omega_dr) * n + 0.5 * s.rabi_z() * sz;
}

Operator build_dispersive_two_qubit(double g, double delta, double omega,
                                    double omega0, int n_max) {
  if (delta < 4.0 * g)
    throw std::invalid_argument(
        "build_dispersive_two_qubit: dispersive precondition delta >= 4g violated");
  HilbertSpace s{{2, 2, n_max + 1}};
  const double lam = g * g / delta;
  Operator a = embed(annihilation(n_max + 1), 2, s);
  Operator n = a.adjoint() * a;
  Operator sz1 = embed(sigma_z(), 0, s);
  Operator sz2 = embed(sigma_z(), 1, s);
  Operator flip = embed(sigma_plus(), 0, s) * embed(sigma_minus(), 1, s);
  Operator sz_sum = sz1 + sz2;
  return (omega0 * identity(s) + lam * sz_sum) * n +
         0.5 * (omega + lam) * sz_sum + lam * (flip + flip.adjoint());
}

Operator build_hamiltonian(const HamiltonianSpec& s) {
  switch (s.kind) {
    case HamiltonianKind::jaynes_cummings:
      return build_jc(s.g, s.n_max);
    case HamiltonianKind::driven_single_qubit:
      return build_driven_single_qubit(s);
    case HamiltonianKind::dispersive_x:
      return build_dispersive_x(s);
    case HamiltonianKind::dispersive_z:
      return build_dispersive_z(s);
    case HamiltonianKind::dispersive_two_qubit:
      return build_dispersive_two_qubit(s.g, s.delta(), s.omega, s.omega0,
                                        s.n_max);
  }
  throw std::invalid_argument("build_hamiltonian: unknown kind");
}

LindbladChannel relaxation_channel(const HilbertSpace& s, int q, double T1) {
  if (T1 <= 0) throw std::invalid_argument("relaxation_channel: T1 must be positive");
  return {"T1_q" + std::to_string(q),
          std::sqrt(1.0 / T1) * embed(sigma_minus(), q, s)};
}

LindbladChannel dephasing_channel(const HilbertSpace& s, int q, double T2) {
  if (T2 <= 0) throw std::invalid_argument("dephasing_channel: T2 must be positive");
  return {"T2_q" + std::to_string(q),
          std::sqrt(1.0 / (2.0 * T2)) * embed(sigma_z(), q, s)};
}

LindbladChannel photon_loss_channel(const HilbertSpace& s, double kappa) {
  if (kappa <= 0) throw std::invalid_argument("photon_loss_channel: kappa must be positive");
  int last = s.subsystems() - 1;
  return {"kappa", std::sqrt(kappa) * embed(annihilation(s.dims[last]), last, s)};
}

namespace {

void track_fock(SimResult& r, const State& st) {
  if (st.space.subsystems() < 2) return;
  r.max_top_fock_population =
      std::max(r.max_top_fock_population, top_level_population(st));
}

}  // namespace

SimResult evolve_unitary(const std::vector<ScheduleStep>& steps,
                         const State& psi0, const std::vector<double>& t_grid) {
  if (!psi0.is_pure())
    throw std::invalid_argument("evolve_unitary: initial state must be pure");
  double total = 0;
  for (const auto& st : steps) {
    if (st.duration < 0)
      throw std::invalid_argument("evolve_unitary: negative segment duration");
    if (!(st.H.space == psi0.space))
      throw std::invalid_argument("evolve_unitary: Hamiltonian/state space mismatch");
    total += st.duration;
  }
  for (size_t i = 0; i < t_grid.size(); ++i) {
    if (t_grid[i] < 0 || t_grid[i] > total + 1e-12)
      throw std::invalid_argument("evolve_unitary: grid time outside schedule");
    if (i > 0 && t_grid[i] < t_grid[i - 1])
      throw std::invalid_argument("evolve_unitary: grid must be non-decreasing");
  }

  SimResult r;
  Vec seg_start = psi0.vec;
  double t0 = 0;
  size_t gi = 0;
  for (const auto& st : steps) {
    Propagator prop(st.H);
    while (gi < t_grid.size() && t_grid[gi] <= t0 + st.duration + 1e-12) {
      double dt = std::clamp(t_grid[gi] - t0, 0.0, st.duration);
      State out = State::pure(psi0.space, prop.apply(seg_start, dt));
      track_fock(r, out);
      r.times.push_back(t_grid[gi]);
      r.states.push_back(std::move(out));
      ++gi;
    }
    seg_start = prop.apply(seg_start, st.duration);
    t0 += st.duration;
  }
  while (gi < t_grid.size()) {  // grid points at exactly t = total
    r.times.push_back(t_grid[gi]);
    r.states.push_back(State::pure(psi0.space, seg_start));
    ++gi;
  }
  return r;
}

namespace {

Mat lindblad_rhs(const Mat& H, const std::vector<Mat>& Ls,
                 const std::vector<Mat>& LdLs, const Mat& rho) {
  Mat out = cx(0, -1) * (H * rho - rho * H);
  for (size_t k = 0; k < Ls.size(); ++k)
    out += Ls[k] * rho * Ls[k].adjoint() -
           0.5 * (LdLs[k] * rho + rho * LdLs[k]);
  return out;
}

}  // namespace

SimResult evolve_lindblad(const std::vector<ScheduleStep>& steps,
                          const std::vector<LindbladChannel>& channels,
                          const State& rho0, const std::vector<double>& t_grid) {
  double total = 0;
  for (const auto& st : steps) {
    if (st.duration < 0)
      throw std::invalid_argument("evolve_lindblad: negative segment duration");
    if (!(st.H.space == rho0.space))
      throw std::invalid_argument("evolve_lindblad: Hamiltonian/state space mismatch");
    total += st.duration;
  }
  for (size_t i = 0; i < t_grid.size(); ++i) {
    if (t_grid[i] < 0 || t_grid[i] > total + 1e-12)
      throw std::invalid_argument("evolve_lindblad: grid time outside schedule");
    if (i > 0 && t_grid[i] < t_grid[i - 1])
      throw std::invalid_argument("evolve_lindblad: grid must be non-decreasing");
  }
  std::vector<Mat> Ls, LdLs;
  double max_rate = 0;
  for (const auto& ch : channels) {
    if (!(ch.op.space == rho0.space))
      throw std::invalid_argument("evolve_lindblad: channel space mismatch");
    Ls.push_back(ch.op.mat);
    LdLs.push_back(ch.op.mat.adjoint() * ch.op.mat);
    Eigen::SelfAdjointEigenSolver<Mat> es(LdLs.back(), Eigen::EigenvaluesOnly);
    max_rate = std::max(max_rate, es.eigenvalues().maxCoeff());
  }

  SimResult r;
  r.min_eigenvalue = 0;
  Mat rho = rho0.density();
  double t = 0;
  size_t gi = 0;

  auto emit = [&](double tg) {
    State st = State::mixed(rho0.space, rho);
    track_fock(r, st);
    double tr_err = std::abs(rho.trace().real() - 1.0) + std::abs(rho.trace().imag());
    double herm_err = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    r.max_trace_error = std::max(r.max_trace_error, tr_err);
    r.max_herm_error = std::max(r.max_herm_error, herm_err);
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (rho + rho.adjoint()),
                                          Eigen::EigenvaluesOnly);
    r.min_eigenvalue = std::min(r.min_eigenvalue, es.eigenvalues().minCoeff());
    r.times.push_back(tg);
    r.states.push_back(std::move(st));
  };

  for (const auto& stp : steps) {
    const double hnorm = spectral_norm(stp.H);
    double h_max = 1e30;
    if (max_rate > 0) h_max = std::min(h_max, 1.0 / (50.0 * max_rate));
    if (hnorm > 0) h_max = std::min(h_max, 1.0 / (50.0 * hnorm));

    double seg_end = t + stp.duration;
    // advance to each grid point inside this segment, then to the segment end
    auto advance_to = [&](double target) {
      double span = target - t;
      if (span <= 0) return;
      int n = std::max(1, int(std::ceil(span / h_max)));
      double h = span / n;
      for (int i = 0; i < n; ++i) {
        Mat k1 = lindblad_rhs(stp.H.mat, Ls, LdLs, rho);
        Mat k2 = lindblad_rhs(stp.H.mat, Ls, LdLs, rho + 0.5 * h * k1);
        Mat k3 = lindblad_rhs(stp.H.mat, Ls, LdLs, rho + 0.5 * h * k2);
        Mat k4 = lindblad_rhs(stp.H.mat, Ls, LdLs, rho + h * k3);
        rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      }
      t = target;
    };

    while (gi < t_grid.size() && t_grid[gi] <= seg_end + 1e-12) {
      advance_to(std::min(t_grid[gi], seg_end));
      emit(t_grid[gi]);
      ++gi;
    }
    advance_to(seg_end);
  }

  if (r.max_trace_error > 1e-6 || r.max_herm_error > 1e-8 ||
      r.min_eigenvalue < -1e-7)
    throw NumericalError(
        "evolve_lindblad: integrator left validity envelope (trace error " +
        std::to_string(r.max_trace_error) + ", hermiticity error " +
        std::to_string(r.max_herm_error) + ", min eigenvalue " +
        std::to_string(r.min_eigenvalue) + "); reduce the step or rates");
  return r;
}

DephasingRates dephasing_rates(const DeviceParams& p, double g_operating,
                               double delta) {
  DephasingRates d;
  const DerivedQuantities dq = derive(p);
  d.T2_from_Tb = dq.omega * p.T_b * p.T_b;
  const double chi = g_operating * g_operating / delta;
  d.gamma_phi_readout = 8.0 * p.n_bar * chi * chi / dq.kappa;
  const double rate =
      std::abs(p.g_factor) * constants::mu_bohr_over_hbar_mT * p.dB_nuc_rms;
  d.T2star_from_field = rate > 0 ? 1.0 / rate : 0.0;
  return d;
}

}  // namespace ddm
