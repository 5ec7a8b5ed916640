#include "covframe/superop.hpp"

#include "covframe/errors.hpp"
#include "covframe/random.hpp"

#include <Eigen/Eigenvalues>

#include <numbers>

namespace covframe {

namespace {

void require_same_dim(const SuperOperator& a, const SuperOperator& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("superoperator dimensions differ");
}

void require_spin_dim(const SuperOperator& s, SpinLabel spin) {
  if (s.dim() != spin.dim())
    throw DimensionMismatch("superoperator dimension " + std::to_string(s.dim()) +
                            " does not match spin dimension " + std::to_string(spin.dim()));
}

// [G, K] with G = A* (x) I - I (x) A for Hermitian A.
Eigen::MatrixXcd generator_commutator(const Operator& a, const Eigen::MatrixXcd& k) {
  const Operator id = Operator::Identity(a.rows(), a.cols());
  const Operator ac = a.conjugate();
  const Eigen::MatrixXcd gk = kron_left_multiply(ac, id, k) - kron_left_multiply(id, a, k);
  const Eigen::MatrixXcd kh = k.adjoint();
  const Eigen::MatrixXcd kg =
      (kron_left_multiply(ac, id, kh) - kron_left_multiply(id, a, kh)).adjoint();
  return gk - kg;
}

}  // namespace

SuperOperator::SuperOperator(int dim, Eigen::MatrixXcd liouville)
    : dim_(dim), k_(std::move(liouville)) {
  if (dim < 1 || k_.rows() != dim * dim || k_.cols() != dim * dim)
    throw DimensionMismatch("Liouville matrix must be d^2 x d^2");
}

SuperOperator SuperOperator::identity(int dim) {
  return SuperOperator(dim, Eigen::MatrixXcd::Identity(dim * dim, dim * dim));
}

SuperOperator operator*(const SuperOperator& a, const SuperOperator& b) {
  require_same_dim(a, b);
  return SuperOperator(a.dim_, a.k_ * b.k_);
}

SuperOperator operator+(const SuperOperator& a, const SuperOperator& b) {
  require_same_dim(a, b);
  return SuperOperator(a.dim_, a.k_ + b.k_);
}

SuperOperator operator-(const SuperOperator& a, const SuperOperator& b) {
  require_same_dim(a, b);
  return SuperOperator(a.dim_, a.k_ - b.k_);
}

SuperOperator operator*(Complex s, const SuperOperator& a) {
  return SuperOperator(a.dim_, s * a.k_);
}

Eigen::VectorXcd vectorize(const Operator& rho) {
  return Eigen::Map<const Eigen::VectorXcd>(rho.data(), rho.size());
}

Operator unvectorize(const Eigen::VectorXcd& v, int dim) {
  if (v.size() != static_cast<Eigen::Index>(dim) * dim)
    throw DimensionMismatch("unvectorize: length is not d^2");
  return Eigen::Map<const Operator>(v.data(), dim, dim);
}

SuperOperator from_kraus(std::span<const Operator> ops) {
  if (ops.empty()) throw std::invalid_argument("from_kraus: empty Kraus set");
  const Eigen::Index d = ops.front().rows();
  Eigen::MatrixXcd k = Eigen::MatrixXcd::Zero(d * d, d * d);
  for (const Operator& e : ops) {
    if (e.rows() != d || e.cols() != d)
      throw DimensionMismatch("from_kraus: Kraus operators must be square of equal size");
    const Operator ec = e.conjugate();
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j)
        if (ec(i, j) != Complex(0.0, 0.0)) k.block(i * d, j * d, d, d) += ec(i, j) * e;
  }
  return SuperOperator(static_cast<int>(d), std::move(k));
}

Operator apply(const SuperOperator& s, const Operator& rho) {
  if (rho.rows() != s.dim() || rho.cols() != s.dim())
    throw DimensionMismatch("apply: state dimension does not match superoperator");
  return unvectorize(s.matrix() * vectorize(rho), s.dim());
}

SuperOperator adjoint_map(const SuperOperator& s) {
  return SuperOperator(s.dim(), s.matrix().adjoint());
}

Operator choi_matrix(const SuperOperator& s) {
  const int d = s.dim();
  Operator c(d * d, d * d);
  const auto& k = s.matrix();
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) c(i * d + a, j * d + b) = k(a + d * b, i + d * j);
  return c;
}

bool is_cp(const SuperOperator& s, double tol) {
  const Operator c = choi_matrix(s);
  if ((c - c.adjoint()).cwiseAbs().maxCoeff() > tol) return false;
  Eigen::SelfAdjointEigenSolver<Operator> es(c, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -tol;
}

bool is_tp(const SuperOperator& s, double tol) {
  const int d = s.dim();
  const auto& k = s.matrix();
  for (int col = 0; col < d * d; ++col) {
    Complex tr = 0.0;
    for (int a = 0; a < d; ++a) tr += k(a + d * a, col);
    const double expected = (col % d == col / d) ? 1.0 : 0.0;
    if (std::abs(tr - expected) > tol) return false;
  }
  return true;
}

bool is_unital(const SuperOperator& s, double tol) {
  const int d = s.dim();
  const Eigen::VectorXcd id = vectorize(Operator::Identity(d, d));
  return (s.matrix() * id - id).cwiseAbs().maxCoeff() <= tol;
}

Operator partial_trace(const Operator& joint, Subsystem traced, int d1, int d2) {
  if (joint.rows() != static_cast<Eigen::Index>(d1) * d2 || joint.cols() != joint.rows())
    throw DimensionMismatch("partial_trace: joint dimension is not d1*d2");
  if (traced == Subsystem::second) {
    Operator out = Operator::Zero(d1, d1);
    for (int i = 0; i < d1; ++i)
      for (int j = 0; j < d1; ++j)
        for (int k = 0; k < d2; ++k) out(i, j) += joint(i * d2 + k, j * d2 + k);
    return out;
  }
  Operator out = Operator::Zero(d2, d2);
  for (int k = 0; k < d1; ++k) out += joint.block(k * d2, k * d2, d2, d2);
  return out;
}

Eigen::MatrixXcd kron_left_multiply(const Operator& a, const Operator& b,
                                    const Eigen::MatrixXcd& k) {
  const Eigen::Index da = a.rows(), db = b.rows();
  if (a.cols() != da || b.cols() != db || k.rows() != da * db)
    throw DimensionMismatch("kron_left_multiply: shape mismatch");
  const Eigen::Index n = k.cols();
  const Eigen::Index block = da * db;
  // Column c of K viewed column-major as a db x da matrix M_c; the result
  // column is B M_c A^T.
  Eigen::Map<const Eigen::MatrixXcd> stacked(k.data(), db, da * n);
  const Eigen::MatrixXcd y = b * stacked;
  const Operator at = a.transpose();
  Eigen::MatrixXcd out(k.rows(), n);
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Map<const Eigen::MatrixXcd> yc(y.data() + c * block, db, da);
    Eigen::Map<Eigen::MatrixXcd> oc(out.data() + c * block, db, da);
    oc.noalias() = yc * at;
  }
  return out;
}

double covariance_defect(const SuperOperator& s, SpinLabel spin, std::uint64_t seed) {
  require_spin_dim(s, spin);
  const auto& k = s.matrix();
  const Eigen::MatrixXcd kh = k.adjoint();
  Rng rng(seed);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const Operator r = rotation_unitary(spin, haar_euler(rng));
    // (R* (x) R) K  and  K (R* (x) R) = ((R^T (x) R^dagger) K^dagger)^dagger
    const Eigen::MatrixXcd lhs = kron_left_multiply(r.conjugate(), r, k);
    const Eigen::MatrixXcd rhs = kron_left_multiply(r.transpose(), r.adjoint(), kh).adjoint();
    worst = std::max(worst, (lhs - rhs).norm());
  }
  for (Axis ax : {Axis::x, Axis::y, Axis::z})
    worst = std::max(worst, generator_commutator(angular_momentum(spin, ax), k).norm());
  return worst;
}

std::vector<Eigen::MatrixXcd> commutant_bases(SpinLabel spin) {
  const Operator flip = rotation_unitary(spin, AxisAngle{Eigen::Vector3d::UnitY(), std::numbers::pi});
  const Operator id = Operator::Identity(spin.dim(), spin.dim());
  std::vector<Eigen::MatrixXcd> out;
  out.reserve(spin.dim());
  for (int two_k = 0; two_k <= 2 * spin.two_j(); two_k += 2) {
    const Eigen::MatrixXcd coupled = coupled_basis(spin, spin, SpinLabel(two_k)).cast<Complex>();
    out.push_back(kron_left_multiply(flip, id, coupled));
  }
  return out;
}

Eigen::VectorXcd commutant_coefficients(const SuperOperator& s, SpinLabel spin) {
  require_spin_dim(s, spin);
  const auto bases = commutant_bases(spin);
  Eigen::VectorXcd c(bases.size());
  for (std::size_t l = 0; l < bases.size(); ++l) {
    const Eigen::MatrixXcd& v = bases[l];
    c(static_cast<Eigen::Index>(l)) =
        (v.adjoint() * (s.matrix() * v)).trace() / static_cast<double>(v.cols());
  }
  return c;
}

std::vector<Operator> commutant_projectors(SpinLabel spin) {
  std::vector<Operator> out;
  for (const auto& v : commutant_bases(spin)) out.push_back(v * v.adjoint());
  return out;
}

SuperOperator twirl(const SuperOperator& s, SpinLabel spin) {
  require_spin_dim(s, spin);
  const auto bases = commutant_bases(spin);
  const Eigen::Index n = s.matrix().rows();
  Eigen::MatrixXcd all(n, n);
  Eigen::VectorXcd weights(n);
  Eigen::Index col = 0;
  for (const auto& v : bases) {
    const Complex c = (v.adjoint() * (s.matrix() * v)).trace() / static_cast<double>(v.cols());
    all.middleCols(col, v.cols()) = v;
    weights.segment(col, v.cols()).setConstant(c);
    col += v.cols();
  }
  return SuperOperator(s.dim(), all * weights.asDiagonal() * all.adjoint());
}

}  // namespace covframe
