// ddmsim: parameter design and simulation front end for double-dot molecule
// qubits coupled to a stripline resonator.
//
// Subcommands: params, gate, readout, sweep, calibrate, selftest.
// Exit codes: 0 success, 2 config error, 3 validation hard-failure under
// --strict, 4 numerical failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "ddm/config.hpp"
#include "ddm/device.hpp"
#include "ddm/dynamics.hpp"
#include "ddm/gates.hpp"
#include "ddm/io.hpp"
#include "ddm/linalg.hpp"
#include "ddm/noise.hpp"
#include "ddm/readout.hpp"
#include "ddm/rng.hpp"

namespace {

using namespace ddm;

constexpr double two_pi = 2.0 * constants::pi;

struct Shared {
  std::string config_path;
  uint64_t seed = 0;
  std::string out;
  bool strict = false;
  bool force = false;
};

void add_shared(CLI::App* cmd, Shared& s) {
  cmd->add_option("config", s.config_path, "INI config file (defaults used if omitted)");
  cmd->add_option("--seed", s.seed, "RNG seed (default 0)");
  cmd->add_option("--out", s.out, "output CSV path (default: CSV to stdout)");
  cmd->add_flag("--strict", s.strict, "exit 3 on hard validation failure");
  cmd->add_flag("--force", s.force, "bypass dispersive-regime guards");
}

Config load(const Shared& s) {
  return s.config_path.empty() ? default_config() : load_config(s.config_path);
}

// CSV goes to --out (or stdout when absent); human-readable notes go to the
// other stream so piped CSV stays clean
struct Sink {
  std::ofstream file;
  bool to_file = false;
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file.open(path);
      if (!file) throw ConfigError("cannot open output file '" + path + "'");
      to_file = true;
    }
  }
  std::ostream& csv() { return to_file ? file : std::cout; }
  std::ostream& note() {
    return to_file ? std::cout : std::cerr;
  }
};

RunManifest make_manifest(const Config& cfg, const Shared& s,
                          const std::string& command) {
  RunManifest m;
  m.version = DDMSIM_VERSION;
  m.command = command;
  m.config_hash = config_hash(cfg);
  m.seed = s.seed;
  m.timestamp = iso8601_utc_now();
  return m;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

OperatingPoint base_point(const Config& cfg, bool force) {
  const DerivedQuantities d = derive(cfg.device);
  OperatingPoint op;
  op.g = cfg.sim.g;
  op.omega = d.omega;
  op.omega0 = d.omega0;
  op.Omega = cfg.sim.Omega;
  op.delta_2q = cfg.sim.delta_2q;
  op.n_max = cfg.sim.n_max;
  op.Delta = cfg.device.Delta;
  op.T = cfg.device.T;
  op.force = force;
  return op;
}

PulseSchedule make_schedule(const Config& cfg, const std::string& type,
                            double angle, bool force) {
  OperatingPoint op = base_point(cfg, force);
  if (type == "rx") return synthesize_rx(angle, op);
  if (type == "rz") {
    // the z rotation runs at a re-biased point with the splitting reduced to
    // omega_z; first-order charge sensitivity still vanishes there
    op.omega = cfg.sim.omega_z;
    op.Delta = 0;
    op.T = 0.5 * cfg.sim.omega_z;
    return synthesize_rz(angle, op);
  }
  if (type == "sqrtiswap") {
    op.Delta = 0;
    op.T = 0.5 * (op.omega0 - op.delta_2q);
    return synthesize_sqrt_iswap(op);
  }
  if (type == "swap-photon") {
    op.Delta = 0;
    op.T = 0.5 * op.omega0;
    return synthesize_qubit_photon_swap(op);
  }
  if (type == "transport") {
    op.Delta = 0;
    op.T = 0.5 * op.omega0;
    return transport_qubit(op);
  }
  throw ConfigError("gate: invalid gate type '" + type + "'");
}

int cmd_params(const Shared& sh) {
  const Config cfg = load(sh);
  const DeviceParams& p = cfg.device;
  const DerivedQuantities d = derive(p);
  Sink sink(sh.out);
  std::ostream& out = sink.csv();

  out << "qubit splitting       omega   = " << fmt(d.omega / two_pi)
      << " GHz\n";
  out << "mixing angle          theta   = " << fmt(d.theta) << " rad\n";
  out << "coupling (capacitive) g_est   = " << fmt(d.g / two_pi) << " GHz\n";
  out << "coupling (operating)  g_op    = " << fmt(cfg.sim.g / two_pi)
      << " GHz\n";
  out << "resonator             omega0  = " << fmt(d.omega0 / two_pi)
      << " GHz\n";
  out << "resonator decay       kappa   = " << fmt(d.kappa)
      << " /ns  (1/kappa = " << fmt(1.0 / d.kappa) << " ns)\n";
  out << "Zeeman splitting      E_z     = " << fmt(d.E_z / two_pi) << " GHz\n";
  out << "effective tunneling   T_eff   = " << fmt(d.T_eff / two_pi)
      << " GHz\n";
  if (p.T == 0) out << "note: tunnel coupling off, qubit-resonator coupling vanishes\n";

  const double c0_back = c0_for_resonator_frequency(d.omega0, p.L, p.Z0);
  const double w0_back = resonator_frequency(p.L, p.Z0, c0_back);
  out << "C0 inversion round-trip relative error = "
      << fmt(std::abs(w0_back - d.omega0) / d.omega0) << "\n";

  const double delta = std::abs(d.omega - d.omega0);
  const double t2q =
      constants::pi * cfg.sim.delta_2q / (4.0 * cfg.sim.g * cfg.sim.g);
  out << "two-qubit gate time   t_2q    = " << fmt(t2q) << " ns (at delta_2q = "
      << fmt(cfg.sim.delta_2q / two_pi) << " GHz)\n";

  PulseSchedule rx = make_schedule(cfg, "rx", constants::pi, true);
  PulseSchedule rz = make_schedule(cfg, "rz", constants::pi, true);
  out << "x-rotation rate       Omega_R = " << fmt(rx.nominal_rate / two_pi)
      << " GHz  (1/Omega_R = " << fmt(1.0 / rx.nominal_rate) << " ns)\n";
  out << "z-rotation rate       Omega'_R= " << fmt(rz.nominal_rate / two_pi)
      << " GHz  (1/|Omega'_R| = " << fmt(1.0 / rz.nominal_rate) << " ns)\n";
  out << "photon swap transfer  pi/2g   = " << fmt(constants::pi / (2 * cfg.sim.g))
      << " ns  (half period pi/g = " << fmt(constants::pi / cfg.sim.g)
      << " ns)\n";

  ValidationReport rep = validate_device(p, cfg.sim.g, delta, cfg.sim.n_max);
  for (const auto& c : rep.checks)
    out << (c.pass ? "PASS " : "FAIL ") << c.name
        << (c.hard ? " (hard)" : " (soft)") << ": " << c.detail << "\n";

  if (!sh.out.empty())
    sink.note() << "params written to " << sh.out << "\n";
  if (sh.strict && rep.hard_failure()) return 3;
  return 0;
}

int cmd_gate(const Shared& sh, const std::string& type, double angle,
             bool angle_set, const std::string& mode_str, int n_traj,
             double ramp_time, bool ramp_set, double delta_start_GHz) {
  const Config cfg = load(sh);
  Sink sink(sh.out);

  std::ostringstream cmdline;
  cmdline << "gate --type " << type;
  if (angle_set) cmdline << " --angle " << fmt(angle);
  cmdline << " --mode " << mode_str << " --trajectories " << n_traj
          << " --seed " << sh.seed;
  RunManifest manifest = make_manifest(cfg, sh, cmdline.str());

  if (type == "init") {
    SweepProfile sweep;
    sweep.delta_start = delta_start_GHz > 0 ? delta_start_GHz * two_pi
                                            : 100.0 * cfg.device.T;
    const double default_rate = cfg.device.T * cfg.device.T / 10.0;
    sweep.t_f = ramp_set ? ramp_time : sweep.delta_start / default_rate;
    InitializeResult res = adiabatic_initialize(sweep, cfg.device);

    FidelityReport r;
    r.gate = "init";
    r.mode = sweep.t_f == 0 ? "quench" : "adiabatic";
    r.n_trajectories = 1;
    r.seed = sh.seed;
    r.mean_fidelity = res.fidelity;
    r.std_dev = 0;
    r.t_gate_ns = sweep.t_f;
    write_fidelity_csv(sink.csv(), manifest, {r});
    sink.note() << "init fidelity " << fmt(res.fidelity) << ", ramp rate "
                << fmt(res.ramp_rate) << " rad/ns^2, diabatic passage estimate "
                << fmt(res.diabatic_estimate) << "\n";
    return 0;
  }

  if ((type == "rx" || type == "rz") && !angle_set)
    throw ConfigError("gate: --angle is required for rx/rz");

  PulseSchedule sched = make_schedule(cfg, type, angle, sh.force);
  FidelityReport r;
  if (mode_str == "noisy") {
    r = noisy_gate_fidelity(sched, cfg.noise, std::max(1, n_traj), sh.seed,
                            cfg.device);
  } else {
    VerifyMode mode;
    if (mode_str == "exact_full") mode = VerifyMode::exact_full;
    else if (mode_str == "effective") mode = VerifyMode::effective;
    else if (mode_str == "lindblad") mode = VerifyMode::lindblad;
    else throw ConfigError("gate: invalid mode '" + mode_str + "'");
    r = verify_gate(sched, mode, cfg.device, &cfg.noise, std::max(1, n_traj),
                    sh.seed);
  }
  write_fidelity_csv(sink.csv(), manifest, {r});

  std::ostream& note = sink.note();
  note << "gate " << r.gate << " mode " << r.mode << ": mean fidelity "
       << fmt(r.mean_fidelity) << " +- " << fmt(r.std_dev) << ", t_gate "
       << fmt(r.t_gate_ns) << " ns\n";
  for (const auto& [k, v] : r.breakdown)
    note << "  " << k << " = " << fmt(v) << "\n";
  if (type == "swap-photon")
    note << "  transfer time pi/2g = " << fmt(r.t_gate_ns)
         << " ns (half period pi/g = " << fmt(2 * r.t_gate_ns) << " ns)\n";

  if (mode_str == "noisy") {
    static const std::map<std::string, double> refs = {
        {"sqrtiswap", 0.9946}, {"rx", 0.9952}, {"rz", 0.9961}};
    auto it = refs.find(type);
    if (it != refs.end())
      note << "  reference fidelity (pi rotation) " << fmt(it->second)
           << ", absolute deviation "
           << fmt(std::abs(r.mean_fidelity - it->second)) << "\n";
  }
  return 0;
}

int cmd_readout(const Shared& sh, int state, double span_GHz, int points) {
  const Config cfg = load(sh);
  const DerivedQuantities d = derive(cfg.device);
  Sink sink(sh.out);

  SpectrumRequest req;
  req.qubit_state = state;
  req.g = cfg.sim.g;
  req.delta = std::abs(d.omega - d.omega0);
  req.omega0 = d.omega0;
  req.kappa = d.kappa;
  req.span = span_GHz > 0 ? span_GHz * two_pi : cfg.readout.span;
  req.n_points = points > 0 ? points : cfg.readout.n_points;
  Spectrum sp = transmission_spectrum(req);

  std::ostringstream cmdline;
  cmdline << "readout --state " << state << " --span "
          << fmt(req.span / two_pi) << " --points " << req.n_points;
  write_spectrum_csv(sink.csv(), make_manifest(cfg, sh, cmdline.str()), sp);

  std::ostream& note = sink.note();
  const double pk0 = pulled_frequency(req.omega0, sp.chi, 0);
  const double pk1 = pulled_frequency(req.omega0, sp.chi, 1);
  note << "peak (qubit 0) " << fmt(pk0 / two_pi) << " GHz, peak (qubit 1) "
       << fmt(pk1 / two_pi) << " GHz, separation "
       << fmt((pk1 - pk0) / two_pi) << " GHz = "
       << fmt(discrimination_separation(req.g, req.delta, req.kappa))
       << " linewidths\n";
  const double tm =
      measurement_time(cfg.device.n_bar, req.g, req.delta, req.kappa);
  note << "measurement time 1/gamma_phi = " << fmt(tm)
       << " ns (literature quotes 0.02 ns; discrepancy factor "
       << fmt(tm / 0.02) << ", not reconciled)\n";
  return 0;
}

Config with_param(const Config& base, std::string param, double value) {
  static const std::map<std::string, std::string> alias = {
      {"delta", "simulation.delta_2q"},
      {"sigma", "noise.sigma_rad_per_ns"},
  };
  auto al = alias.find(param);
  if (al != alias.end()) param = al->second;

  std::string want_section, want_key = param;
  size_t dot = param.find('.');
  if (dot != std::string::npos) {
    want_section = param.substr(0, dot);
    want_key = param.substr(dot + 1);
  }

  std::istringstream in(canonical_text(base));
  std::ostringstream out;
  std::string line, section;
  int hits = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.front() == '[')
      section = line.substr(1, line.size() - 2);
    size_t eq = line.find(" = ");
    if (eq != std::string::npos) {
      std::string key = line.substr(0, eq);
      if (key == want_key && (want_section.empty() || section == want_section)) {
        char buf[48];
        std::snprintf(buf, sizeof buf, "%s = %.17g", key.c_str(), value);
        out << buf << "\n";
        ++hits;
        continue;
      }
    }
    out << line << "\n";
  }
  if (hits == 0) throw ConfigError("sweep: unknown param '" + param + "'");
  if (hits > 1) throw ConfigError("sweep: ambiguous param '" + param + "'");
  return parse_config(out.str());
}

int cmd_sweep(const Shared& sh, const std::string& param, double from,
              double to, int steps, const std::string& metric) {
  const Config cfg = load(sh);
  Sink sink(sh.out);
  if (steps < 2) throw ConfigError("sweep: need --steps >= 2");

  auto eval = [&](const Config& c) -> double {
    const DerivedQuantities d = derive(c.device);
    if (metric == "g") return d.g / two_pi;
    if (metric == "omega0") return d.omega0 / two_pi;
    if (metric == "t_2q")
      return constants::pi * c.sim.delta_2q / (4.0 * c.sim.g * c.sim.g);
    if (metric == "var_phi") {
      const double t2q =
          constants::pi * c.sim.delta_2q / (4.0 * c.sim.g * c.sim.g);
      return analytic_phase_variance(c.noise, t2q);
    }
    if (metric == "t_m")
      return measurement_time(c.device.n_bar, c.sim.g,
                              std::abs(d.omega - d.omega0), d.kappa);
    if (metric == "fidelity") {
      PulseSchedule s = make_schedule(c, "sqrtiswap", 0, true);
      return noisy_gate_fidelity(s, c.noise, 2000, sh.seed, c.device)
          .mean_fidelity;
    }
    throw ConfigError("sweep: unknown metric '" + metric + "'");
  };

  std::vector<std::pair<double, double>> rows;
  for (int i = 0; i < steps; ++i) {
    const double x = from + (to - from) * i / (steps - 1);
    rows.emplace_back(x, eval(with_param(cfg, param, x)));
  }

  std::ostringstream cmdline;
  cmdline << "sweep --param " << param << " --from " << fmt(from) << " --to "
          << fmt(to) << " --steps " << steps << " --metric " << metric;
  write_sweep_csv(sink.csv(), make_manifest(cfg, sh, cmdline.str()), param,
                  metric, rows);
  return 0;
}

int cmd_calibrate(const Shared& sh, double target_var,
                  const std::string& gate) {
  const Config cfg = load(sh);
  Sink sink(sh.out);

  const double angle = constants::pi;
  PulseSchedule sched = make_schedule(cfg, gate, angle, true);
  const double t_gate = sched.total_duration();
  NoiseModel m = cfg.noise;
  m.sigma = calibrate(m.kind, target_var, t_gate, m.tau_c);

  sink.csv() << noise_fragment(m);
  sink.note() << "calibrated sigma = " << fmt(m.sigma) << " rad/ns for "
              << gate << " (t_gate " << fmt(t_gate)
              << " ns), analytic Var(phi) = "
              << fmt(analytic_phase_variance(m, t_gate)) << " rad^2\n";
  return 0;
}

bool check(std::ostream& out, const std::string& name, bool ok) {
  out << (ok ? "ok   " : "FAIL ") << name << "\n";
  return ok;
}

int cmd_selftest(const Shared& sh) {
  std::ostream& out = std::cout;
  bool all = true;
  const Config cfg = load(sh);

  {
    Operator h = build_jc(1.3, 4);
    Mat U = Propagator(h).at(2.7);
    all &= check(out, "propagator unitarity",
                 (U.adjoint() * U - Mat::Identity(U.rows(), U.cols())).norm() <
                     1e-10);
    HilbertSpace sp = h.space;
    Operator a = embed(annihilation(5), 1, sp);
    Operator exc = a.adjoint() * a + 0.5 * embed(sigma_z(), 0, sp);
    all &= check(out, "excitation conservation",
                 (h.mat * exc.mat - exc.mat * h.mat).norm() < 1e-12);
    Vec psi0 = Vec::Zero(sp.dim());
    psi0(1 * 5 + 0) = 1;  // excited qubit, empty resonator
    Vec psi = Propagator(h).apply(psi0, 1.7);
    all &= check(out, "norm preservation", std::abs(psi.norm() - 1) < 1e-12);
  }
  {
    HilbertSpace sp{{2, 4}};
    const double kappa = 0.3;
    std::vector<LindbladChannel> ch = {photon_loss_channel(sp, kappa)};
    Vec psi0 = Vec::Zero(sp.dim());
    psi0(0 * 4 + 2) = 1;  // two photons
    State rho0 = State::mixed(sp, psi0 * psi0.adjoint());
    std::vector<ScheduleStep> steps = {{0.0 * identity(sp), 3.0}};
    SimResult res = evolve_lindblad(steps, ch, rho0, {3.0});
    Operator a = embed(annihilation(4), 1, sp);
    double n_end = expectation(a.adjoint() * a, res.states.back()).real();
    all &= check(out, "photon decay closed form",
                 std::abs(n_end - 2.0 * std::exp(-kappa * 3.0)) < 1e-6);
    all &= check(out, "trace preservation", res.max_trace_error < 1e-6);
    all &= check(out, "hermiticity preservation", res.max_herm_error < 1e-8);
    all &= check(out, "positivity", res.min_eigenvalue > -1e-7);
  }
  {
    NoiseModel m;
    m.kind = NoiseKind::quasi_static;
    m.sigma = 0.02;
    PhaseStatistics a1 = phase_variance(m, 8.0, 3000, 42);
    PhaseStatistics a2 = phase_variance(m, 8.0, 3000, 42);
    all &= check(out, "determinism under seed", a1.variance == a2.variance);
    PhaseStatistics b = phase_variance(m, 8.0, 3000, 43);
    all &= check(out, "seed sensitivity", a1.variance != b.variance);
    Prng r1(0, 0), r2(0, 1);
    all &= check(out, "stream separation", r1.uniform() != r2.uniform());
  }
  {
    Config c2 = parse_config(canonical_text(cfg));
    all &= check(out, "config canonical round-trip",
                 config_hash(c2) == config_hash(cfg));
  }
  {
    PulseSchedule rx = make_schedule(cfg, "rx", constants::pi, false);
    FidelityReport r = verify_gate(rx, VerifyMode::effective, cfg.device);
    all &= check(out, "rx effective-model synthesis",
                 r.mean_fidelity > 1.0 - 1e-9);
    State s0 = stabilizer_states(1)[2];
    State joint = tensor(s0, basis_state(HilbertSpace{{3}}, {0}));
    State back = partial_trace(joint, {0});
    all &= check(out, "partial trace consistency",
                 state_fidelity(s0, back) > 1.0 - 1e-12);
  }
  if (!all) {
    out << "selftest: FAILURES\n";
    return 1;
  }
  out << "selftest: all properties hold\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"double-dot molecule / stripline resonator design tool"};
  app.require_subcommand(1);

  Shared sh;
  std::string gate_type = "rx", gate_mode = "exact_full";
  double angle = 0;
  int n_traj = 1;
  double ramp_time = 0, delta_start = 0;
  int ro_state = 0, ro_points = 0;
  double ro_span = 0;
  std::string sw_param, sw_metric = "g";
  double sw_from = 0, sw_to = 0;
  int sw_steps = 11;
  double cal_target = 0;
  std::string cal_gate = "sqrtiswap";

  CLI::App* c_params = app.add_subcommand("params", "derived quantities and validation");
  add_shared(c_params, sh);

  CLI::App* c_gate = app.add_subcommand("gate", "synthesize and verify a gate");
  add_shared(c_gate, sh);
  c_gate->add_option("--type", gate_type,
                     "rx|rz|sqrtiswap|swap-photon|init|transport")
      ->required();
  CLI::Option* angle_opt = c_gate->add_option("--angle", angle, "rotation angle, rad");
  c_gate->add_option("--mode", gate_mode, "exact_full|effective|lindblad|noisy");
  c_gate->add_option("--trajectories", n_traj, "Monte-Carlo trajectories");
  CLI::Option* ramp_opt = c_gate->add_option("--ramp-time", ramp_time,
                                             "init: ramp duration, ns (0 = quench)");
  c_gate->add_option("--delta-start", delta_start,
                     "init: starting bias, linear GHz (default 100 T)");

  CLI::App* c_readout = app.add_subcommand("readout", "dispersive transmission spectrum");
  add_shared(c_readout, sh);
  c_readout->add_option("--state", ro_state, "qubit state 0|1");
  c_readout->add_option("--span", ro_span, "scan width, linear GHz");
  c_readout->add_option("--points", ro_points, "number of scan points");

  CLI::App* c_sweep = app.add_subcommand("sweep", "sweep a config key, tabulate a metric");
  add_shared(c_sweep, sh);
  c_sweep->add_option("--param", sw_param, "config key (section.key or bare)")->required();
  c_sweep->add_option("--from", sw_from, "start value, config-file units")->required();
  c_sweep->add_option("--to", sw_to, "end value, config-file units")->required();
  c_sweep->add_option("--steps", sw_steps, "grid points (>= 2)");
  c_sweep->add_option("--metric", sw_metric, "g|omega0|t_2q|fidelity|var_phi|t_m");

  CLI::App* c_cal = app.add_subcommand("calibrate", "solve noise amplitude for a phase-variance target");
  add_shared(c_cal, sh);
  c_cal->add_option("--target-var", cal_target, "target Var(phi), rad^2")->required();
  c_cal->add_option("--gate", cal_gate, "gate whose duration sets the scale");

  CLI::App* c_self = app.add_subcommand("selftest", "run the headless property suite");
  add_shared(c_self, sh);

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(c_params)) return cmd_params(sh);
    if (app.got_subcommand(c_gate))
      return cmd_gate(sh, gate_type, angle, angle_opt->count() > 0, gate_mode,
                      n_traj, ramp_time, ramp_opt->count() > 0, delta_start);
    if (app.got_subcommand(c_readout))
      return cmd_readout(sh, ro_state, ro_span, ro_points);
    if (app.got_subcommand(c_sweep))
      return cmd_sweep(sh, sw_param, sw_from, sw_to, sw_steps, sw_metric);
    if (app.got_subcommand(c_cal)) return cmd_calibrate(sh, cal_target, cal_gate);
    if (app.got_subcommand(c_self)) return cmd_selftest(sh);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
