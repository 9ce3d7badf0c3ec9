#include <string>

#include "ddm/config.hpp"
#include "doctest.h"

using namespace ddm;

namespace {

constexpr double two_pi = 2.0 * constants::pi;

// complete [device] section in file units (linear GHz, mT, cm, Ohm, aF, ns)
const char* device_text =
    "[device]\n"
    "T = 2.5\nDelta = 0\nE_os = 1209.0\nmu = 1209.0\nU = 241.8\nW = 12.09\n"
    "B_z = 100\ng_factor = -0.44\ndB_nuc_rms = 2.584\n"
    "L = 1\nZ0 = 50\nC0 = 333333.3333333333\nC_c = 8\nC_tot = 100\nQ = 10000\n"
    "T1 = 1000\nT2 = 100\nT2star = 10\nT_b = 1\nn_bar = 1\n";

}  // namespace

TEST_CASE("file units convert exactly at the boundary") {
  Config c = parse_config(device_text);
  CHECK(c.device.T == 2.5 * two_pi);  // GHz -> rad/ns is an exact multiply
  CHECK(c.device.U_charge == 241.8 * two_pi);
  CHECK(c.device.B_z == 100.0);
  CHECK(c.device.L == 1e-2);               // cm -> m
  CHECK(c.device.C0 == 333333.3333333333 * 1e-16);  // aF/cm -> F/m
  CHECK(c.device.C_c == 8e-18);            // aF -> F
  CHECK(c.device.Q == 10000.0);
  CHECK(c.device.T2star == 10.0);
}

TEST_CASE("partial sections fall back to defaults") {
  Config c = parse_config("[simulation]\ng = 0.2\n");
  CHECK(c.sim.g == 0.2 * two_pi);
  CHECK(c.sim.Omega == default_config().sim.Omega);
  CHECK(c.device.T == default_config().device.T);
  CHECK(c.noise.kind == NoiseKind::quasi_static);
  CHECK(c.readout.n_points == 401);

  Config empty = parse_config("");
  CHECK(config_hash(empty) == config_hash(default_config()));
}

TEST_CASE("noise section round-trips kinds and toggles") {
  Config c = parse_config(
      "[noise]\nkind = ornstein_uhlenbeck\nsigma_rad_per_ns = 0.02\n"
      "tau_c = 7.5\nenable_T2 = true\nenable_kappa = false\n");
  CHECK(c.noise.kind == NoiseKind::ornstein_uhlenbeck);
  CHECK(c.noise.sigma == 0.02);
  CHECK(c.noise.tau_c == 7.5);
  CHECK(c.noise.enable_T2);
  CHECK_FALSE(c.noise.enable_kappa);
  CHECK_FALSE(c.noise.enable_T1);
}

TEST_CASE("comments, blank lines and inline comments are ignored") {
  Config c = parse_config(
      "# leading comment\n\n[simulation]\n; alt comment\n"
      "g = 0.25  ; inline\nn_max = 7 # inline\n");
  CHECK(c.sim.g == 0.25 * two_pi);
  CHECK(c.sim.n_max == 7);
}

TEST_CASE("parse errors name the offending key") {
  // missing required device key
  std::string no_Q = device_text;
  auto pos = no_Q.find("Q = 10000\n");
  no_Q.erase(pos, std::string("Q = 10000\n").size());
  CHECK_THROWS_WITH_AS(parse_config(no_Q),
                       "config: missing required key 'Q' in [device]",
                       ConfigError);

  CHECK_THROWS_WITH_AS(parse_config("[simulation]\nbogus = 1\n"),
                       "config: unknown key 'bogus' in [simulation]",
                       ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("[nosuch]\nx = 1\n"),
                       "config: unknown section [nosuch]", ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("[simulation]\ng = 1\ng = 2\n"),
                       "config: duplicate key 'g' in [simulation]",
                       ConfigError);
  CHECK_THROWS_AS(parse_config("g = 1\n"), ConfigError);      // outside section
  CHECK_THROWS_AS(parse_config("[simulation]\ng 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[simulation]\ng = abc\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[simulation]\nn_max = 2.5\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[simulation]\nn_max = 0\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[noise]\nenable_T1 = maybe\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[noise]\nkind = pink\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[readout]\npoints = 1\n"), ConfigError);
}

TEST_CASE("canonical text round-trips and hashes stably") {
  Config c = parse_config(
      "[noise]\nsigma_rad_per_ns = 0.015666426716443749\nenable_T2 = true\n");
  std::string text = canonical_text(c);
  Config back = parse_config(text);
  CHECK(canonical_text(back) == text);
  CHECK(config_hash(back) == config_hash(c));

  // order independence: the canonical form ignores input ordering
  Config a = parse_config("[simulation]\ng = 0.3\nOmega = 9\n");
  Config b = parse_config("[simulation]\nOmega = 9\ng = 0.3\n");
  CHECK(config_hash(a) == config_hash(b));

  // sensitivity: any value change moves the hash
  Config d = parse_config("[simulation]\ng = 0.3\nOmega = 9.000000001\n");
  CHECK(config_hash(d) != config_hash(a));
}

TEST_CASE("calibrated noise fragment is valid config input") {
  NoiseModel m;
  m.kind = NoiseKind::ornstein_uhlenbeck;
  m.sigma = 0.0123456789012345;
  m.tau_c = 3.25;
  Config c = parse_config(noise_fragment(m));
  CHECK(c.noise.kind == m.kind);
  CHECK(c.noise.sigma == m.sigma);  // %.17g survives the round trip bitwise
  CHECK(c.noise.tau_c == m.tau_c);
}

TEST_CASE("load_config reports unreadable paths") {
  CHECK_THROWS_AS(load_config("/nonexistent/able.ini"), ConfigError);
}
