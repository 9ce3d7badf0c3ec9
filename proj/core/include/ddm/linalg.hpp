#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

// Dense complex linear algebra over small tensor-product Hilbert spaces.
// Conventions, fixed across the whole library:
//   - subsystem 0 is the leftmost tensor factor (slowest-varying index);
//     qubits come first, the resonator mode is always the last subsystem
//   - sigma_z|1> = +|1>, so sigma_z = diag(-1,+1) in basis order (|0>,|1>)
//   - hbar = 1, angular frequencies in rad/ns, times in ns

namespace ddm {

using cx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

// thrown when an integrator or solver leaves its validity envelope
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct HilbertSpace {
  std::vector<int> dims;

  HilbertSpace() = default;
  explicit HilbertSpace(std::vector<int> d);

  int dim() const;
  int subsystems() const { return static_cast<int>(dims.size()); }
  bool operator==(const HilbertSpace&) const = default;
  std::string str() const;
};

struct Operator {
  HilbertSpace space;
  Mat mat;

  Operator() = default;
  Operator(HilbertSpace s, Mat m);

  int dim() const { return space.dim(); }
  Operator adjoint() const { return {space, mat.adjoint()}; }
  bool is_hermitian(double tol = 1e-12) const;
  bool is_unitary(double tol = 1e-9) const;
};

Operator operator+(const Operator& a, const Operator& b);
Operator operator-(const Operator& a, const Operator& b);
Operator operator*(const Operator& a, const Operator& b);
Operator operator*(cx s, const Operator& a);
Operator operator*(double s, const Operator& a);

struct State {
  enum class Kind { pure, mixed };

  HilbertSpace space;
  Kind kind = Kind::pure;
  Vec vec;  // valid when pure
  Mat mat;  // valid when mixed

  static State pure(HilbertSpace s, Vec v);
  static State mixed(HilbertSpace s, Mat rho);

  bool is_pure() const { return kind == Kind::pure; }
  Mat density() const;  // |v><v| for pure states
  double norm_error() const;  // | <v|v> - 1 | or | tr(rho) - 1 |
};

// elementary operators, all on single subsystems
Operator identity(const HilbertSpace& s);
Operator sigma_x();
Operator sigma_y();
Operator sigma_z();
Operator sigma_plus();   // |1><0|
Operator sigma_minus();  // |0><1|
Operator annihilation(int n_levels);  // <n-1|a|n> = sqrt(n)
Operator number_op(int n_levels);

// computational basis state with per-subsystem level indices
State basis_state(const HilbertSpace& s, const std::vector<int>& levels);

Operator tensor(const Operator& a, const Operator& b);
State tensor(const State& a, const State& b);

// A acting on subsystem k, identity elsewhere; bit-exact equal to the
// kron assembly I (x) ... (x) A (x) ... (x) I
Operator embed(const Operator& a, int k, const HilbertSpace& s);

// exp(-i H t) for Hermitian H via eigendecomposition V exp(-i L t) V^dag
Operator matrix_exponential(const Operator& H, double t);

// eigendecomposition cached once, reused for many times t
struct Propagator {
  HilbertSpace space;
  Mat V;
  Eigen::VectorXd evals;

  explicit Propagator(const Operator& H);
  Mat at(double t) const;            // exp(-i H t)
  Vec apply(const Vec& psi, double t) const;
};

// trace out all subsystems not listed in keep (ascending order preserved)
State partial_trace(const State& s, const std::vector<int>& keep);

// pure/pure: |<a|b>|^2, pure/mixed: <a|rho|a>, mixed/mixed: Uhlmann
double state_fidelity(const State& a, const State& b);

// (|tr(U_ideal^dag U_actual)|^2 + d) / (d^2 + d); both inputs must be unitary
double average_gate_fidelity(const Operator& actual, const Operator& ideal);

// same formula without the unitarity check, for maps extracted by projection
double gate_overlap_fidelity(const Mat& actual, const Mat& ideal);

cx expectation(const Operator& op, const State& s);

// population of the top level of the last subsystem (Fock truncation guard)
double top_level_population(const State& s);

double spectral_norm(const Operator& H);  // max |eigenvalue|, Hermitian input

}  // namespace ddm
