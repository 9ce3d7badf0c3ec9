#pragma once

// Flat INI-style configuration with sections [device], [simulation], [noise],
// [readout]. User-facing units are linear GHz, ns, aF, cm, Ohm and mT; the
// conversion to internal angular rad/ns and SI happens exactly once, here.
// Unknown keys are rejected. A [device] section must be complete; the other
// sections may be partial and fall back to defaults.

#include <cstdint>
#include <stdexcept>
#include <string>

#include "ddm/device.hpp"
#include "ddm/noise.hpp"

namespace ddm {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SimulationParams {
  double g = 2 * constants::pi * 0.125;        // operating coupling, rad/ns
  double Omega = 2 * constants::pi * 10.0;     // drive amplitude, rad/ns
  double omega_z = 2 * constants::pi * 0.001;  // z-gate qubit splitting, rad/ns
  double delta_2q = 2 * constants::pi * 1.0;   // two-qubit detuning, rad/ns
  int n_max = 5;
};

struct ReadoutParams {
  double span = 2 * constants::pi * 0.05;  // scan width, rad/ns
  int n_points = 401;
};

struct Config {
  DeviceParams device;
  SimulationParams sim;
  NoiseModel noise;
  ReadoutParams readout;
};

Config default_config();

// Parses INI text; throws ConfigError naming the offending key on unknown
// keys, missing required [device] keys, or malformed values.
Config parse_config(const std::string& text);

// Reads and parses a file; throws ConfigError if unreadable.
Config load_config(const std::string& path);

// Deterministic canonical serialization (file units); input to config_hash.
std::string canonical_text(const Config& c);

// FNV-1a over the canonical text
uint64_t config_hash(const Config& c);

// [noise] fragment with a calibrated sigma, suitable for concatenation onto a
// config file
std::string noise_fragment(const NoiseModel& m);

}  // namespace ddm
