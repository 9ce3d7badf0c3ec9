#include <cmath>

#include "ddm/device.hpp"
#include "doctest.h"

using namespace ddm;

namespace {
constexpr double two_pi = 2.0 * constants::pi;
}

TEST_CASE("qubit splitting is the 3-4-5 hypotenuse") {
  CHECK(qubit_splitting(two_pi * 4.0, two_pi * 1.5) ==
        doctest::Approx(two_pi * 5.0).epsilon(1e-14));
  CHECK(qubit_splitting(0, two_pi * 2.5) == doctest::Approx(two_pi * 5.0));
  CHECK(qubit_splitting(0, 0) == 0);
}

TEST_CASE("mixing angle at and away from the optimal point") {
  CHECK(mixing_angle(0, 1.0) == doctest::Approx(constants::pi / 4));
  // Delta = 2T: theta = atan(1)/2 = pi/8
  CHECK(mixing_angle(2.0, 1.0) == doctest::Approx(constants::pi / 8).epsilon(1e-14));
  CHECK(mixing_angle(0, 0) == 0);  // coupling off
}

TEST_CASE("resonator frequency and its inversion round-trip") {
  const double L = 0.03, Z0 = 50.0, C0 = 1.0 / 3.0e10;
  const double w0 = resonator_frequency(L, Z0, C0);
  CHECK(w0 == doctest::Approx(two_pi * 10.0).epsilon(1e-12));

  const double c0_back = c0_for_resonator_frequency(w0, L, Z0);
  CHECK(c0_back == doctest::Approx(C0).epsilon(1e-14));
  CHECK(resonator_frequency(L, Z0, c0_back) == doctest::Approx(w0).epsilon(1e-14));
}

TEST_CASE("Zeeman splitting with GaAs defaults") {
  DeviceParams p;
  const double ez = zeeman_splitting(p);
  CHECK(ez / two_pi == doctest::Approx(0.6158).epsilon(2e-3));
  CHECK(ez > 0);  // magnitude regardless of g-factor sign
}

TEST_CASE("derived quantities are mutually consistent") {
  DeviceParams p;
  DerivedQuantities d = derive(p);
  CHECK(d.omega == doctest::Approx(two_pi * 5.0).epsilon(1e-12));
  CHECK(d.theta == doctest::Approx(constants::pi / 4));
  CHECK(d.omega0 == doctest::Approx(two_pi * 10.0).epsilon(1e-12));
  CHECK(d.kappa == doctest::Approx(d.omega0 / p.Q));
  CHECK(1.0 / d.kappa == doctest::Approx(159.1549).epsilon(1e-5));
  CHECK(d.T_eff == doctest::Approx(d.omega / 2));

  // capacitance estimate lands within one order of the operating coupling
  const double ratio = d.g / (two_pi * 0.125);
  CHECK(ratio > 0.1);
  CHECK(ratio < 10.0);
}

TEST_CASE("coupling vanishes when the tunnel coupling is off") {
  DeviceParams p;
  p.T = 0;
  DerivedQuantities d = derive(p);
  CHECK(d.theta == 0);
  CHECK(d.g == 0);
}

TEST_CASE("two-electron Hamiltonian: singlet block equals the reduced model") {
  DeviceParams p;
  p.Delta = two_pi * 0.7;
  Operator h6 = build_two_electron_hamiltonian(p);
  Operator h2 = build_reduced_hamiltonian(p.Delta, p.T);

  // basis rows 0,1 are |(1,1)S>, |(0,2)S>
  CHECK(std::abs(h6.mat(0, 0) - h2.mat(0, 0)) < 1e-12);
  CHECK(std::abs(h6.mat(0, 1) - h2.mat(0, 1)) < 1e-12);
  CHECK(std::abs(h6.mat(1, 0) - h2.mat(1, 0)) < 1e-12);
  CHECK(std::abs(h6.mat(1, 1) - h2.mat(1, 1)) < 1e-12);
  CHECK(h2.mat(0, 1) == cx(p.T, 0));
  CHECK(h2.mat(1, 1) == cx(-p.Delta, 0));
}

TEST_CASE("two-electron Hamiltonian: triplets split by E_z and decoupled") {
  DeviceParams p;
  Operator h6 = build_two_electron_hamiltonian(p);
  const double ez = zeeman_splitting(p);

  // basis rows 3,4,5 are T0, T+, T-
  CHECK(std::abs(h6.mat(3, 3)) < 1e-12);
  CHECK(std::abs(h6.mat(4, 4) - ez) < 1e-12);
  CHECK(std::abs(h6.mat(5, 5) + ez) < 1e-12);

  // spin is conserved: no singlet-triplet matrix elements
  for (int s = 0; s < 3; ++s)
    for (int t = 3; t < 6; ++t) {
      CHECK(std::abs(h6.mat(s, t)) == 0);
      CHECK(std::abs(h6.mat(t, s)) == 0);
    }
  CHECK(h6.is_hermitian());
}

TEST_CASE("device validation: defaults fail triplet isolation honestly") {
  DeviceParams p;
  DerivedQuantities d = derive(p);
  ValidationReport rep =
      validate_device(p, two_pi * 0.125, std::abs(d.omega - d.omega0), 5);

  bool found_triplet = false;
  for (const auto& c : rep.checks) {
    if (c.name == "triplet_isolation") {
      found_triplet = true;
      CHECK_FALSE(c.pass);  // E_z = 0.62 GHz < omega = 5 GHz at defaults
      CHECK(c.hard);
    }
    if (c.name == "strong_coupling") CHECK(c.pass);
    if (c.name == "dispersive_margin") CHECK(c.pass);
  }
  CHECK(found_triplet);
  CHECK(rep.hard_failure());
  CHECK_FALSE(rep.all_pass());
}

TEST_CASE("device validation passes with a large enough field") {
  DeviceParams p;
  p.B_z = 100000;  // pushes E_z above omega
  DerivedQuantities d = derive(p);
  ValidationReport rep =
      validate_device(p, two_pi * 0.125, std::abs(d.omega - d.omega0), 5);
  for (const auto& c : rep.checks)
    if (c.name == "triplet_isolation") CHECK(c.pass);
}
