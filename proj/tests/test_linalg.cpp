#include <random>

#include "ddm/linalg.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace ddm;

namespace {

Operator random_op(const HilbertSpace& s, unsigned seed) {
  return Operator(s, oracle::random_hermitian(s.dim(), seed));
}

}  // namespace

TEST_CASE("tensor product matches explicit index loops") {
  Operator a = random_op(HilbertSpace{{2}}, 1);
  Operator b = random_op(HilbertSpace{{3}}, 2);
  Operator ab = tensor(a, b);
  Mat want = oracle::kron2(a.mat, b.mat);
  CHECK((ab.mat - want).cwiseAbs().maxCoeff() == doctest::Approx(0).epsilon(1e-15));
  CHECK(ab.space.dims == std::vector<int>{2, 3});
}

TEST_CASE("embed equals identity-padded Kronecker product") {
  HilbertSpace s{{2, 3, 4}};
  Operator x = random_op(HilbertSpace{{3}}, 3);
  Operator e = embed(x, 1, s);
  Mat want = oracle::kron3(Mat::Identity(2, 2), x.mat, Mat::Identity(4, 4));
  CHECK((e.mat - want).cwiseAbs().maxCoeff() < 1e-15);

  Operator y = random_op(HilbertSpace{{2}}, 4);
  Mat want0 = oracle::kron3(y.mat, Mat::Identity(3, 3), Mat::Identity(4, 4));
  CHECK((embed(y, 0, s).mat - want0).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("tensor of states follows the same ordering as operators") {
  Vec va = oracle::random_state(2, 5), vb = oracle::random_state(3, 6);
  State a = State::pure(HilbertSpace{{2}}, va);
  State b = State::pure(HilbertSpace{{3}}, vb);
  State ab = tensor(a, b);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(std::abs(ab.vec(i * 3 + j) - va(i) * vb(j)) < 1e-15);
}

TEST_CASE("propagator agrees with Taylor scaling-and-squaring") {
  Operator h = random_op(HilbertSpace{{6}}, 7);
  const double t = 1.37;
  Mat want = oracle::expm(cx(0, -1) * h.mat * t);
  Propagator p(h);
  CHECK((p.at(t) - want).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((matrix_exponential(h, t).mat - want).cwiseAbs().maxCoeff() < 1e-12);

  Vec psi0 = oracle::random_state(6, 8);
  CHECK((p.apply(psi0, t) - want * psi0).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("propagator is unitary and rejects non-Hermitian input") {
  Operator h = random_op(HilbertSpace{{8}}, 9);
  Mat U = Propagator(h).at(2.9);
  CHECK((U.adjoint() * U - Mat::Identity(8, 8)).cwiseAbs().maxCoeff() < 1e-12);

  Operator bad = h;
  bad.mat(0, 1) += cx(0.1, 0.2);
  CHECK_THROWS_AS(Propagator{bad}, std::invalid_argument);
}

TEST_CASE("partial trace matches the direct index sum") {
  HilbertSpace s{{2, 3, 2}};
  Vec psi = oracle::random_state(12, 10);
  State st = State::pure(s, psi);
  Mat rho = psi * psi.adjoint();

  for (const std::vector<int>& keep :
       {std::vector<int>{0}, {1}, {2}, {0, 2}, {1, 2}, {0, 1}}) {
    State red = partial_trace(st, keep);
    Mat want = oracle::partial_trace(rho, {2, 3, 2}, keep);
    CHECK((red.mat - want).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(std::abs(red.mat.trace().real() - 1.0) < 1e-13);
  }
}

TEST_CASE("partial trace of a product state recovers the factors") {
  State a = State::pure(HilbertSpace{{2}}, oracle::random_state(2, 11));
  State b = State::pure(HilbertSpace{{4}}, oracle::random_state(4, 12));
  State ab = tensor(a, b);
  CHECK(state_fidelity(a, partial_trace(ab, {0})) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(state_fidelity(b, partial_trace(ab, {1})) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("state fidelity special cases") {
  HilbertSpace q{{2}};
  Vec v0(2), v1(2), vp(2);
  v0 << 1, 0;
  v1 << 0, 1;
  vp << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
  State s0 = State::pure(q, v0), s1 = State::pure(q, v1), sp = State::pure(q, vp);

  CHECK(state_fidelity(s0, s1) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(state_fidelity(s0, sp) == doctest::Approx(0.5).epsilon(1e-14));

  // pure vs mixed: <psi|rho|psi>
  Mat rho = 0.25 * v0 * v0.adjoint() + 0.75 * v1 * v1.adjoint();
  CHECK(state_fidelity(s1, State::mixed(q, rho)) == doctest::Approx(0.75));

  // commuting mixed states: Uhlmann fidelity reduces to (sum sqrt(p q))^2
  Mat sig = 0.5 * Mat::Identity(2, 2);
  const double want = std::pow(std::sqrt(0.25 * 0.5) + std::sqrt(0.75 * 0.5), 2);
  CHECK(state_fidelity(State::mixed(q, rho), State::mixed(q, sig)) ==
        doctest::Approx(want).epsilon(1e-10));
}

TEST_CASE("average gate fidelity closed forms") {
  HilbertSpace q{{2}};
  Operator I = identity(q);
  CHECK(average_gate_fidelity(I, I) == doctest::Approx(1.0));

  // z rotation by pi/2: F = (|tr|^2 + d)/(d^2 + d) = (2 + 2)/6
  Operator rz = matrix_exponential(0.5 * sigma_z(), M_PI / 2.0);
  CHECK(average_gate_fidelity(I, rz) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));

  // full flip: |tr| = 0
  CHECK(average_gate_fidelity(I, sigma_x()) == doctest::Approx(1.0 / 3.0));

  // overlap variant does not enforce unitarity and agrees on unitaries
  CHECK(gate_overlap_fidelity(rz.mat, rz.mat) == doctest::Approx(1.0));
  CHECK(gate_overlap_fidelity(I.mat, rz.mat) == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("operator factories have the documented matrix elements") {
  CHECK(sigma_z().mat(0, 0) == cx(-1, 0));  // |0> is the molecular ground state
  CHECK(sigma_z().mat(1, 1) == cx(1, 0));
  CHECK(sigma_plus().mat(1, 0) == cx(1, 0));  // |1><0|
  CHECK(sigma_minus().mat(0, 1) == cx(1, 0));
  CHECK((sigma_x().mat - (sigma_plus().mat + sigma_minus().mat)).norm() < 1e-15);
  // sigma_y consistent with sigma_pm = (x -+ i y)/2 conventions
  Mat want_y = cx(0, -1) * (sigma_plus().mat - sigma_minus().mat);
  CHECK((sigma_y().mat - want_y).norm() < 1e-15);

  Operator a = annihilation(4);
  for (int n = 1; n < 4; ++n)
    CHECK(std::abs(a.mat(n - 1, n) - std::sqrt(double(n))) < 1e-15);
  CHECK((number_op(4).mat - (a.adjoint() * a).mat).norm() < 1e-14);
}

TEST_CASE("basis_state, expectation and top-level population") {
  HilbertSpace s{{2, 3}};
  State st = basis_state(s, {1, 2});
  CHECK(st.vec(1 * 3 + 2) == cx(1, 0));
  CHECK(expectation(embed(sigma_z(), 0, s), st).real() == doctest::Approx(1.0));
  CHECK(top_level_population(st) == doctest::Approx(1.0));
  CHECK(top_level_population(basis_state(s, {1, 0})) == doctest::Approx(0.0));
}

TEST_CASE("Hilbert space equality and dimension bookkeeping") {
  HilbertSpace a{{2, 5}}, b{{2, 5}}, c{{5, 2}};
  CHECK(a == b);
  CHECK_FALSE(a == c);
  CHECK(a.dim() == 10);
  CHECK(a.subsystems() == 2);

  Operator x = random_op(HilbertSpace{{2}}, 20);
  Operator y = random_op(HilbertSpace{{3}}, 21);
  CHECK_THROWS_AS(x + y, std::invalid_argument);
}

TEST_CASE("spectral norm matches the largest singular value") {
  Operator h = random_op(HilbertSpace{{5}}, 22);
  Eigen::JacobiSVD<Mat> svd(h.mat);
  CHECK(spectral_norm(h) == doctest::Approx(svd.singularValues()(0)).epsilon(1e-10));
}
