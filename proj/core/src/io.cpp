#include "ddm/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <ctime>

namespace ddm {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

std::string iso8601_utc_now() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_manifest(std::ostream& out, const RunManifest& m) {
  char hash[24];
  std::snprintf(hash, sizeof hash, "%016" PRIx64, m.config_hash);
  out << "# ddmsim " << m.version << "\n";
  out << "# command: " << m.command << "\n";
  out << "# config_hash: " << hash << "\n";
  out << "# seed: " << m.seed << "\n";
  out << "# timestamp: " << m.timestamp << "\n";
}

void write_trajectory_csv(std::ostream& out, const RunManifest& m,
                          const SimResult& res,
                          const std::vector<NamedObservable>& observables) {
  write_manifest(out, m);
  out << "t_ns,observable_name,value_re,value_im\n";
  for (size_t i = 0; i < res.times.size(); ++i) {
    for (const auto& obs : observables) {
      cx v = expectation(obs.op, res.states[i]);
      out << fmt(res.times[i]) << "," << obs.name << "," << fmt(v.real())
          << "," << fmt(v.imag()) << "\n";
    }
  }
}

void write_fidelity_csv(std::ostream& out, const RunManifest& m,
                        const std::vector<FidelityReport>& reports) {
  write_manifest(out, m);
  out << "gate,mode,n_traj,seed,mean_fidelity,std,t_gate_ns\n";
  for (const auto& r : reports)
    out << r.gate << "," << r.mode << "," << r.n_trajectories << "," << r.seed
        << "," << fmt(r.mean_fidelity) << "," << fmt(r.std_dev) << ","
        << fmt(r.t_gate_ns) << "\n";
}

void write_spectrum_csv(std::ostream& out, const RunManifest& m,
                        const Spectrum& sp) {
  constexpr double two_pi = 2.0 * constants::pi;
  write_manifest(out, m);
  out << "# peak_GHz_linear: " << fmt(sp.peak_omega / two_pi) << "\n";
  out << "# chi_GHz_linear: " << fmt(sp.chi / two_pi) << "\n";
  out << "# fwhm_GHz_linear: " << fmt(sp.fwhm / two_pi) << "\n";
  out << "omega_dr_GHz_linear,transmission\n";
  for (size_t i = 0; i < sp.omega_dr.size(); ++i)
    out << fmt(sp.omega_dr[i] / two_pi) << "," << fmt(sp.transmission[i])
        << "\n";
}

void write_sweep_csv(std::ostream& out, const RunManifest& m,
                     const std::string& param_name,
                     const std::string& metric_name,
                     const std::vector<std::pair<double, double>>& rows) {
  write_manifest(out, m);
  out << param_name << "," << metric_name << "\n";
  for (const auto& [p, v] : rows) out << fmt(p) << "," << fmt(v) << "\n";
}

}  // namespace ddm
