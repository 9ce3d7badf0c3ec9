#include "ddm/config.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <vector>

namespace ddm {

namespace {

constexpr double two_pi = 2.0 * constants::pi;

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

double parse_number(const std::string& section, const std::string& key,
                    const std::string& value) {
  try {
    size_t pos = 0;
    double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing junk");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: bad numeric value for [" + section + "] " +
                      key + ": '" + value + "'");
  }
}

int parse_int(const std::string& section, const std::string& key,
              const std::string& value) {
  try {
    size_t pos = 0;
    int v = std::stoi(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing junk");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: bad integer value for [" + section + "] " +
                      key + ": '" + value + "'");
  }
}

bool parse_bool(const std::string& section, const std::string& key,
                const std::string& value) {
  if (value == "true" || value == "1" || value == "yes" || value == "on")
    return true;
  if (value == "false" || value == "0" || value == "no" || value == "off")
    return false;
  throw ConfigError("config: bad boolean value for [" + section + "] " + key +
                    ": '" + value + "'");
}

using KvMap = std::map<std::string, std::map<std::string, std::string>>;

KvMap parse_ini(const std::string& text) {
  KvMap out;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t cut = line.find_first_of("#;");
    if (cut != std::string::npos) line = line.substr(0, cut);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("config: malformed section header at line " +
                          std::to_string(lineno));
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty())
        throw ConfigError("config: empty section name at line " +
                          std::to_string(lineno));
      out[section];
      continue;
    }
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: expected key = value at line " +
                        std::to_string(lineno));
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError("config: empty key at line " + std::to_string(lineno));
    if (section.empty())
      throw ConfigError("config: key '" + key + "' outside any section");
    if (!out[section].emplace(key, value).second)
      throw ConfigError("config: duplicate key '" + key + "' in [" + section +
                        "]");
  }
  return out;
}

struct FieldSpec {
  const char* key;
  std::function<void(Config&, const std::string&)> apply;
  std::function<std::string(const Config&)> emit;
  bool required;
};

std::string fmt_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_int(int v) { return std::to_string(v); }

std::string fmt_bool(bool v) { return v ? "true" : "false"; }

// one table per section: key name, ingestion (with unit conversion), emission
// (inverse conversion), and whether the key is mandatory when the section is
// present in a user file

#define NUM_FIELD(sec, name, ref, to_internal, to_file, req)              \
  {                                                                       \
    name,                                                                 \
        [](Config& c, const std::string& v) {                            \
          double x = parse_number(sec, name, v);                         \
          c.ref = to_internal;                                           \
        },                                                                \
        [](const Config& c) {                                            \
          double x = c.ref;                                              \
          return fmt_num(to_file);                                       \
        },                                                                \
        req                                                               \
  }

const std::vector<FieldSpec>& device_fields() {
  static const std::vector<FieldSpec> fields = {
      NUM_FIELD("device", "T", device.T, x * two_pi, x / two_pi, true),
      NUM_FIELD("device", "Delta", device.Delta, x * two_pi, x / two_pi, true),
      NUM_FIELD("device", "E_os", device.E_os, x * two_pi, x / two_pi, true),
      NUM_FIELD("device", "mu", device.mu_chem, x * two_pi, x / two_pi, true),
      NUM_FIELD("device", "U", device.U_charge, x * two_pi, x / two_pi, true),
      NUM_FIELD("device", "W", device.W_inter, x * two_pi, x / two_pi, true),
      NUM_FIELD("device", "B_z", device.B_z, x, x, true),
      NUM_FIELD("device", "g_factor", device.g_factor, x, x, true),
      NUM_FIELD("device", "dB_nuc_rms", device.dB_nuc_rms, x, x, true),
      NUM_FIELD("device", "L", device.L, x * 1e-2, x / 1e-2, true),
      NUM_FIELD("device", "Z0", device.Z0, x, x, true),
      NUM_FIELD("device", "C0", device.C0, x * 1e-16, x / 1e-16, true),
      NUM_FIELD("device", "C_c", device.C_c, x * 1e-18, x / 1e-18, true),
      NUM_FIELD("device", "C_tot", device.C_tot, x * 1e-18, x / 1e-18, true),
      NUM_FIELD("device", "Q", device.Q, x, x, true),
      NUM_FIELD("device", "T1", device.T1, x, x, true),
      NUM_FIELD("device", "T2", device.T2, x, x, true),
      NUM_FIELD("device", "T2star", device.T2star, x, x, true),
      NUM_FIELD("device", "T_b", device.T_b, x, x, true),
      NUM_FIELD("device", "n_bar", device.n_bar, x, x, true),
  };
  return fields;
}

const std::vector<FieldSpec>& simulation_fields() {
  static const std::vector<FieldSpec> fields = {
      NUM_FIELD("simulation", "g", sim.g, x * two_pi, x / two_pi, false),
      NUM_FIELD("simulation", "Omega", sim.Omega, x * two_pi, x / two_pi,
                false),
      NUM_FIELD("simulation", "omega_z", sim.omega_z, x * two_pi, x / two_pi,
                false),
      NUM_FIELD("simulation", "delta_2q", sim.delta_2q, x * two_pi, x / two_pi,
                false),
      {"n_max",
       [](Config& c, const std::string& v) {
         c.sim.n_max = parse_int("simulation", "n_max", v);
         if (c.sim.n_max < 1)
           throw ConfigError("config: [simulation] n_max must be >= 1");
       },
       [](const Config& c) { return fmt_int(c.sim.n_max); }, false},
  };
  return fields;
}

const std::vector<FieldSpec>& noise_fields() {
  static const std::vector<FieldSpec> fields = {
      {"kind",
       [](Config& c, const std::string& v) {
         if (v == "quasi_static")
           c.noise.kind = NoiseKind::quasi_static;
         else if (v == "ornstein_uhlenbeck")
           c.noise.kind = NoiseKind::ornstein_uhlenbeck;
         else
           throw ConfigError("config: [noise] kind must be quasi_static or "
                             "ornstein_uhlenbeck, got '" +
                             v + "'");
       },
       [](const Config& c) {
         return std::string(c.noise.kind == NoiseKind::quasi_static
                                ? "quasi_static"
                                : "ornstein_uhlenbeck");
       },
       false},
      NUM_FIELD("noise", "sigma_rad_per_ns", noise.sigma, x, x, false),
      NUM_FIELD("noise", "tau_c", noise.tau_c, x, x, false),
      {"enable_T1",
       [](Config& c, const std::string& v) {
         c.noise.enable_T1 = parse_bool("noise", "enable_T1", v);
       },
       [](const Config& c) { return fmt_bool(c.noise.enable_T1); }, false},
      {"enable_T2",
       [](Config& c, const std::string& v) {
         c.noise.enable_T2 = parse_bool("noise", "enable_T2", v);
       },
       [](const Config& c) { return fmt_bool(c.noise.enable_T2); }, false},
      {"enable_T2star",
       [](Config& c, const std::string& v) {
         c.noise.enable_T2star = parse_bool("noise", "enable_T2star", v);
       },
       [](const Config& c) { return fmt_bool(c.noise.enable_T2star); }, false},
      {"enable_kappa",
       [](Config& c, const std::string& v) {
         c.noise.enable_kappa = parse_bool("noise", "enable_kappa", v);
       },
       [](const Config& c) { return fmt_bool(c.noise.enable_kappa); }, false},
  };
  return fields;
}

const std::vector<FieldSpec>& readout_fields() {
  static const std::vector<FieldSpec> fields = {
      NUM_FIELD("readout", "span", readout.span, x * two_pi, x / two_pi,
                false),
      {"points",
       [](Config& c, const std::string& v) {
         c.readout.n_points = parse_int("readout", "points", v);
         if (c.readout.n_points < 2)
           throw ConfigError("config: [readout] points must be >= 2");
       },
       [](const Config& c) { return fmt_int(c.readout.n_points); }, false},
  };
  return fields;
}

#undef NUM_FIELD

const std::map<std::string, const std::vector<FieldSpec>*>& section_table() {
  static const std::map<std::string, const std::vector<FieldSpec>*> tbl = {
      {"device", &device_fields()},
      {"simulation", &simulation_fields()},
      {"noise", &noise_fields()},
      {"readout", &readout_fields()},
  };
  return tbl;
}

}  // namespace

Config default_config() { return Config{}; }

Config parse_config(const std::string& text) {
  Config c = default_config();
  KvMap kv = parse_ini(text);
  for (const auto& [section, entries] : kv) {
    auto it = section_table().find(section);
    if (it == section_table().end())
      throw ConfigError("config: unknown section [" + section + "]");
    const auto& fields = *it->second;
    std::set<std::string> seen;
    for (const auto& [key, value] : entries) {
      const FieldSpec* match = nullptr;
      for (const auto& f : fields)
        if (key == f.key) {
          match = &f;
          break;
        }
      if (!match)
        throw ConfigError("config: unknown key '" + key + "' in [" + section +
                          "]");
      match->apply(c, value);
      seen.insert(key);
    }
    for (const auto& f : fields)
      if (f.required && !seen.count(f.key))
        throw ConfigError("config: missing required key '" +
                          std::string(f.key) + "' in [" + section + "]");
  }
  return c;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string canonical_text(const Config& c) {
  std::ostringstream out;
  for (const char* section : {"device", "simulation", "noise", "readout"}) {
    out << "[" << section << "]\n";
    for (const auto& f : *section_table().at(section))
      out << f.key << " = " << f.emit(c) << "\n";
    out << "\n";
  }
  return out.str();
}

uint64_t config_hash(const Config& c) {
  const std::string text = canonical_text(c);
  uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

std::string noise_fragment(const NoiseModel& m) {
  std::ostringstream out;
  out << "[noise]\n";
  out << "kind = "
      << (m.kind == NoiseKind::quasi_static ? "quasi_static"
                                            : "ornstein_uhlenbeck")
      << "\n";
  out << "sigma_rad_per_ns = " << fmt_num(m.sigma) << "\n";
  out << "tau_c = " << fmt_num(m.tau_c) << "\n";
  return out.str();
}

}  // namespace ddm
