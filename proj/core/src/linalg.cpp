#include "ddm/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numeric>
#include <sstream>

namespace ddm {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

void require_same_space(const HilbertSpace& a, const HilbertSpace& b,
                        const char* what) {
  if (!(a == b))
    throw std::invalid_argument(std::string(what) + ": space mismatch " +
                                a.str() + " vs " + b.str());
}

}  // namespace

HilbertSpace::HilbertSpace(std::vector<int> d) : dims(std::move(d)) {
  require(!dims.empty(), "HilbertSpace: no subsystems");
  for (int n : dims) require(n >= 2, "HilbertSpace: subsystem dim < 2");
}

int HilbertSpace::dim() const {
  int d = 1;
  for (int n : dims) d *= n;
  return d;
}

std::string HilbertSpace::str() const {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < dims.size(); ++i) os << (i ? "," : "") << dims[i];
  os << "]";
  return os.str();
}

Operator::Operator(HilbertSpace s, Mat m) : space(std::move(s)), mat(std::move(m)) {
  require(mat.rows() == space.dim() && mat.cols() == space.dim(),
          "Operator: matrix does not match space dimension " + space.str());
}

bool Operator::is_hermitian(double tol) const {
  return (mat - mat.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool Operator::is_unitary(double tol) const {
  Mat d = mat.adjoint() * mat - Mat::Identity(mat.rows(), mat.cols());
  return d.cwiseAbs().maxCoeff() <= tol;
}

Operator operator+(const Operator& a, const Operator& b) {
  require_same_space(a.space, b.space, "operator+");
  return {a.space, a.mat + b.mat};
}

Operator operator-(const Operator& a, const Operator& b) {
  require_same_space(a.space, b.space, "operator-");
  return {a.space, a.mat - b.mat};
}

Operator operator*(const Operator& a, const Operator& b) {
  require_same_space(a.space, b.space, "operator*");
  return {a.space, a.mat * b.mat};
}

Operator operator*(cx s, const Operator& a) { return {a.space, s * a.mat}; }
Operator operator*(double s, const Operator& a) { return {a.space, s * a.mat}; }

State State::pure(HilbertSpace s, Vec v) {
  require(v.size() == s.dim(), "State::pure: vector does not match space");
  State st;
  st.space = std::move(s);
  st.kind = Kind::pure;
  st.vec = std::move(v);
  return st;
}

State State::mixed(HilbertSpace s, Mat rho) {
  require(rho.rows() == s.dim() && rho.cols() == s.dim(),
          "State::mixed: matrix does not match space");
  State st;
  st.space = std::move(s);
  st.kind = Kind::mixed;
  st.mat = std::move(rho);
  return st;
}

Mat State::density() const {
  if (is_pure()) return vec * vec.adjoint();
  return mat;
}

double State::norm_error() const {
  if (is_pure()) return std::abs(vec.squaredNorm() - 1.0);
  return std::abs(mat.trace().real() - 1.0) + std::abs(mat.trace().imag());
}

Operator identity(const HilbertSpace& s) {
  return {s, Mat::Identity(s.dim(), s.dim())};
}

namespace {
HilbertSpace qubit() { return HilbertSpace{{2}}; }
}  // namespace

Operator sigma_x() {
  Mat m(2, 2);
  m << 0, 1, 1, 0;
  return {qubit(), m};
}

Operator sigma_y() {
  Mat m(2, 2);
  m << 0, cx(0, 1), cx(0, -1), 0;
  return {qubit(), m};
}

Operator sigma_z() {
  Mat m(2, 2);
  m << -1, 0, 0, 1;
  return {qubit(), m};
}

Operator sigma_plus() {
  Mat m = Mat::Zero(2, 2);
  m(1, 0) = 1;
  return {qubit(), m};
}

Operator sigma_minus() {
  Mat m = Mat::Zero(2, 2);
  m(0, 1) = 1;
  return {qubit(), m};
}

Operator annihilation(int n_levels) {
  require(n_levels >= 2, "annihilation: need at least 2 levels");
  Mat m = Mat::Zero(n_levels, n_levels);
  for (int n = 1; n < n_levels; ++n) m(n - 1, n) = std::sqrt(double(n));
  return {HilbertSpace{{n_levels}}, m};
}

Operator number_op(int n_levels) {
  require(n_levels >= 2, "number_op: need at least 2 levels");
  Mat m = Mat::Zero(n_levels, n_levels);
  for (int n = 0; n < n_levels; ++n) m(n, n) = double(n);
  return {HilbertSpace{{n_levels}}, m};
}

State basis_state(const HilbertSpace& s, const std::vector<int>& levels) {
  require(levels.size() == s.dims.size(),
          "basis_state: level count does not match subsystem count");
  int idx = 0;
  for (size_t k = 0; k < levels.size(); ++k) {
    require(levels[k] >= 0 && levels[k] < s.dims[k],
            "basis_state: level out of range");
    idx = idx * s.dims[k] + levels[k];
  }
  Vec v = Vec::Zero(s.dim());
  v(idx) = 1.0;
  return State::pure(s, std::move(v));
}

Operator tensor(const Operator& a, const Operator& b) {
  const int da = a.dim(), db = b.dim();
  Mat m(da * db, da * db);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < da; ++j)
      m.block(i * db, j * db, db, db) = a.mat(i, j) * b.mat;
  std::vector<int> dims = a.space.dims;
  dims.insert(dims.end(), b.space.dims.begin(), b.space.dims.end());
  return {HilbertSpace{std::move(dims)}, std::move(m)};
}

State tensor(const State& a, const State& b) {
  std::vector<int> dims = a.space.dims;
  dims.insert(dims.end(), b.space.dims.begin(), b.space.dims.end());
  HilbertSpace s{std::move(dims)};
  if (a.is_pure() && b.is_pure()) {
    Vec v(a.vec.size() * b.vec.size());
    for (int i = 0; i < a.vec.size(); ++i)
      v.segment(i * b.vec.size(), b.vec.size()) = a.vec(i) * b.vec;
    return State::pure(std::move(s), std::move(v));
  }
  Mat ra = a.density(), rb = b.density();
  Mat m(ra.rows() * rb.rows(), ra.cols() * rb.cols());
  for (int i = 0; i < ra.rows(); ++i)
    for (int j = 0; j < ra.cols(); ++j)
      m.block(i * rb.rows(), j * rb.cols(), rb.rows(), rb.cols()) =
          ra(i, j) * rb;
  return State::mixed(std::move(s), std::move(m));
}

Operator embed(const Operator& a, int k, const HilbertSpace& s) {
  require(k >= 0 && k < s.subsystems(), "embed: subsystem index out of range");
  require(a.space.subsystems() == 1 && a.dim() == s.dims[k],
          "embed: operator does not fit subsystem " + std::to_string(k));
  // strides: left block count, operator dim, right block size
  int left = 1, right = 1;
  for (int i = 0; i < k; ++i) left *= s.dims[i];
  for (int i = k + 1; i < s.subsystems(); ++i) right *= s.dims[i];
  const int d = a.dim();
  Mat m = Mat::Zero(s.dim(), s.dim());
  for (int l = 0; l < left; ++l)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        if (a.mat(i, j) == cx(0, 0)) continue;
        for (int r = 0; r < right; ++r)
          m((l * d + i) * right + r, (l * d + j) * right + r) = a.mat(i, j);
      }
  return {s, std::move(m)};
}

Operator matrix_exponential(const Operator& H, double t) {
  Propagator p(H);
  return {H.space, p.at(t)};
}

Propagator::Propagator(const Operator& H) : space(H.space) {
  if (!H.is_hermitian(1e-10 * std::max(1.0, H.mat.cwiseAbs().maxCoeff())))
    throw std::invalid_argument("Propagator: Hamiltonian is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Mat> es(H.mat);
  if (es.info() != Eigen::Success)
    throw NumericalError("Propagator: eigendecomposition failed");
  V = es.eigenvectors();
  evals = es.eigenvalues();
}

Mat Propagator::at(double t) const {
  Vec phases(evals.size());
  for (int i = 0; i < evals.size(); ++i)
    phases(i) = std::exp(cx(0, -evals(i) * t));
  return V * phases.asDiagonal() * V.adjoint();
}

Vec Propagator::apply(const Vec& psi, double t) const {
  Vec c = V.adjoint() * psi;
  for (int i = 0; i < evals.size(); ++i) c(i) *= std::exp(cx(0, -evals(i) * t));
  return V * c;
}

State partial_trace(const State& s, const std::vector<int>& keep) {
  const int ns = s.space.subsystems();
  require(!keep.empty(), "partial_trace: keep set is empty");
  std::vector<bool> keep_mask(ns, false);
  for (size_t i = 0; i < keep.size(); ++i) {
    require(keep[i] >= 0 && keep[i] < ns, "partial_trace: index out of range");
    require(i == 0 || keep[i] > keep[i - 1],
            "partial_trace: keep indices must be strictly ascending");
    keep_mask[keep[i]] = true;
  }

  std::vector<int> kept_dims, traced;
  for (int i = 0; i < ns; ++i)
    if (keep_mask[i]) kept_dims.push_back(s.space.dims[i]);
    else traced.push_back(i);
  HilbertSpace out_space{kept_dims};

  if (traced.empty()) return State::mixed(out_space, s.density());

  // index decomposition helpers over the full space
  const auto& dims = s.space.dims;
  auto decompose = [&](int idx, std::vector<int>& out) {
    for (int k = ns - 1; k >= 0; --k) {
      out[k] = idx % dims[k];
      idx /= dims[k];
    }
  };
  auto kept_index = [&](const std::vector<int>& full) {
    int idx = 0;
    for (int k = 0; k < ns; ++k)
      if (keep_mask[k]) idx = idx * dims[k] + full[k];
    return idx;
  };

  Mat rho = s.density();
  const int d = s.space.dim();
  Mat out = Mat::Zero(out_space.dim(), out_space.dim());
  std::vector<int> fi(ns), fj(ns);
  for (int i = 0; i < d; ++i) {
    decompose(i, fi);
    for (int j = 0; j < d; ++j) {
      decompose(j, fj);
      bool diag = true;
      for (int t : traced)
        if (fi[t] != fj[t]) { diag = false; break; }
      if (diag) out(kept_index(fi), kept_index(fj)) += rho(i, j);
    }
  }
  return State::mixed(std::move(out_space), std::move(out));
}

namespace {

// Uhlmann fidelity (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2
double mixed_fidelity(const Mat& rho, const Mat& sigma) {
  Eigen::SelfAdjointEigenSolver<Mat> es(rho);
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  Mat sqrt_rho = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
  Eigen::SelfAdjointEigenSolver<Mat> es2(sqrt_rho * sigma * sqrt_rho);
  double tr = es2.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
  return tr * tr;
}

}  // namespace

double state_fidelity(const State& a, const State& b) {
  require_same_space(a.space, b.space, "state_fidelity");
  if (a.is_pure() && b.is_pure()) {
    cx ov = a.vec.adjoint() * b.vec;
    return std::norm(ov);
  }
  if (a.is_pure()) return (a.vec.adjoint() * b.mat * a.vec)(0).real();
  if (b.is_pure()) return (b.vec.adjoint() * a.mat * b.vec)(0).real();
  return mixed_fidelity(a.mat, b.mat);
}

double gate_overlap_fidelity(const Mat& actual, const Mat& ideal) {
  if (actual.rows() != ideal.rows() || actual.cols() != ideal.cols())
    throw std::invalid_argument("gate_overlap_fidelity: dimension mismatch");
  const double d = double(ideal.rows());
  const double tr = std::abs((ideal.adjoint() * actual).trace());
  return (tr * tr + d) / (d * d + d);
}

double average_gate_fidelity(const Operator& actual, const Operator& ideal) {
  require_same_space(actual.space, ideal.space, "average_gate_fidelity");
  if (!actual.is_unitary() || !ideal.is_unitary())
    throw std::invalid_argument("average_gate_fidelity: input is not unitary");
  return gate_overlap_fidelity(actual.mat, ideal.mat);
}

cx expectation(const Operator& op, const State& s) {
  require_same_space(op.space, s.space, "expectation");
  if (s.is_pure()) return (s.vec.adjoint() * op.mat * s.vec)(0);
  return (op.mat * s.mat).trace();
}

double top_level_population(const State& s) {
  const int ns = s.space.subsystems();
  const int d_last = s.space.dims[ns - 1];
  double pop = 0;
  Mat rho = s.density();
  for (int i = d_last - 1; i < s.space.dim(); i += d_last)
    pop += rho(i, i).real();
  return pop;
}

double spectral_norm(const Operator& H) {
  Eigen::SelfAdjointEigenSolver<Mat> es(H.mat, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace ddm
