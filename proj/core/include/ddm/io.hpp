#pragma once

// CSV emission with a reproducibility header. Every output file starts with
// `#`-prefixed manifest lines (tool version, command, config hash, seed,
// timestamp); two runs with the same config, flags and seed differ only in
// the timestamp line. All frequencies written here are linear GHz.

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "ddm/dynamics.hpp"
#include "ddm/gates.hpp"
#include "ddm/readout.hpp"

namespace ddm {

struct RunManifest {
  std::string version;
  std::string command;
  uint64_t config_hash = 0;
  uint64_t seed = 0;
  std::string timestamp;  // ISO 8601 UTC
};

std::string iso8601_utc_now();

void write_manifest(std::ostream& out, const RunManifest& m);

struct NamedObservable {
  std::string name;
  Operator op;
};

// rows: t_ns,observable_name,value_re,value_im
void write_trajectory_csv(std::ostream& out, const RunManifest& m,
                          const SimResult& res,
                          const std::vector<NamedObservable>& observables);

// rows: gate,mode,n_traj,seed,mean_fidelity,std,t_gate_ns
void write_fidelity_csv(std::ostream& out, const RunManifest& m,
                        const std::vector<FidelityReport>& reports);

// rows: omega_dr_GHz_linear,transmission
void write_spectrum_csv(std::ostream& out, const RunManifest& m,
                        const Spectrum& sp);

// rows: <param_name>,<metric_name>
void write_sweep_csv(std::ostream& out, const RunManifest& m,
                     const std::string& param_name,
                     const std::string& metric_name,
                     const std::vector<std::pair<double, double>>& rows);

}  // namespace ddm
