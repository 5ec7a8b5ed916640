#include "covframe/spin.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace covframe {

namespace {

constexpr Complex kI{0.0, 1.0};

// sqrt(j(j+1) - m(m+1)) in units where everything is doubled.
double raise_factor(int two_j, int two_m) {
  const double v = 0.25 * (static_cast<double>(two_j) * (two_j + 2) -
                           static_cast<double>(two_m) * (two_m + 2));
  return v > 0.0 ? std::sqrt(v) : 0.0;
}

double lower_factor(int two_j, int two_m) {
  const double v = 0.25 * (static_cast<double>(two_j) * (two_j + 2) -
                           static_cast<double>(two_m) * (two_m - 2));
  return v > 0.0 ? std::sqrt(v) : 0.0;
}

bool same_parity(int a, int b) { return ((a - b) % 2) == 0; }

Operator exp_hermitian(const Operator& generator, double angle) {
  Eigen::SelfAdjointEigenSolver<Operator> es(generator);
  const Eigen::VectorXd& w = es.eigenvalues();
  Eigen::VectorXcd phases(w.size());
  for (Eigen::Index i = 0; i < w.size(); ++i) phases(i) = std::exp(-kI * angle * w(i));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

Eigen::VectorXcd jz_phases(SpinLabel spin, double angle) {
  Eigen::VectorXcd p(spin.dim());
  for (int i = 0; i < spin.dim(); ++i) p(i) = std::exp(-kI * angle * spin.m(i));
  return p;
}

double log_binomial(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace

SpinLabel::SpinLabel(int two_j) : two_j_(two_j) {
  if (two_j < 0) throw std::invalid_argument("SpinLabel: two_j must be non-negative");
}

int SpinLabel::index_of(int two_m) const {
  if (std::abs(two_m) > two_j_ || !same_parity(two_m, two_j_))
    throw std::invalid_argument("magnetic number 2m=" + std::to_string(two_m) +
                                " not valid for 2j=" + std::to_string(two_j_));
  return (two_j_ - two_m) / 2;
}

Operator angular_momentum(SpinLabel spin, Axis component) {
  const int d = spin.dim();
  const int tj = spin.two_j();
  if (component == Axis::z) {
    Operator jz = Operator::Zero(d, d);
    for (int i = 0; i < d; ++i) jz(i, i) = spin.m(i);
    return jz;
  }
  // J+ |m> = sqrt(j(j+1) - m(m+1)) |m+1>; |m+1> sits one index above |m>.
  Operator jp = Operator::Zero(d, d);
  for (int i = 1; i < d; ++i) {
    const int two_m = tj - 2 * i;
    jp(i - 1, i) = raise_factor(tj, two_m);
  }
  switch (component) {
    case Axis::plus:
      return jp;
    case Axis::minus:
      return jp.adjoint();
    case Axis::x:
      return 0.5 * (jp + jp.adjoint());
    case Axis::y:
      return (jp - jp.adjoint()) / (2.0 * kI);
    case Axis::z:
      break;
  }
  return {};
}

double casimir_check(SpinLabel spin) {
  const Operator jx = angular_momentum(spin, Axis::x);
  const Operator jy = angular_momentum(spin, Axis::y);
  const Operator jz = angular_momentum(spin, Axis::z);
  const Operator j2 = jx * jx + jy * jy + jz * jz;
  return (j2 - spin.lambda() * Operator::Identity(spin.dim(), spin.dim())).norm();
}

Operator rotation_unitary(SpinLabel spin, const Rotation& rotation) {
  if (const auto* aa = std::get_if<AxisAngle>(&rotation)) {
    const double len = aa->axis.norm();
    if (!(len > 0.0)) throw std::invalid_argument("rotation_unitary: zero-length axis");
    const Eigen::Vector3d n = aa->axis / len;
    const Operator gen = n.x() * angular_momentum(spin, Axis::x) +
                         n.y() * angular_momentum(spin, Axis::y) +
                         n.z() * angular_momentum(spin, Axis::z);
    return exp_hermitian(gen, aa->angle);
  }
  const auto& e = std::get<EulerAngles>(rotation);
  const Operator dy = exp_hermitian(angular_momentum(spin, Axis::y), e.beta);
  return jz_phases(spin, e.alpha).asDiagonal() * dy * jz_phases(spin, e.gamma).asDiagonal();
}

Operator haar_rotation(SpinLabel spin, const HaarPoint& point) {
  return std::exp(-kI * point.alpha) * rotation_unitary(spin, point.euler());
}

Complex highest_weight_overlap(SpinLabel spin, int two_m, const HaarPoint& point) {
  spin.index_of(two_m);  // validates |m| <= j
  const double j = spin.j();
  const double m = 0.5 * two_m;
  const int jpm = (spin.two_j() + two_m) / 2;
  const int jmm = (spin.two_j() - two_m) / 2;
  const double c = std::cos(point.theta);
  const double s = -std::sin(point.theta);
  const double mag = std::exp(0.5 * log_binomial(spin.two_j(), jpm)) * std::pow(c, jpm) *
                     std::pow(s, jmm);
  const double phase =
      -point.alpha - m * (point.phi + point.psi) - j * (point.phi - point.psi);
  return mag * std::exp(kI * phase);
}

bool triangle_ok(SpinLabel j1, SpinLabel j2, SpinLabel J) {
  const int a = j1.two_j(), b = j2.two_j(), c = J.two_j();
  return c >= std::abs(a - b) && c <= a + b && same_parity(a + b, c);
}

RealMatrix coupled_basis(SpinLabel j1, SpinLabel j2, SpinLabel J) {
  if (!triangle_ok(j1, j2, J))
    throw std::invalid_argument("coupled_basis: triangle rule violated");
  const int d2 = j2.dim();
  const int a = j1.two_j(), b = j2.two_j(), tJ = J.two_j();
  RealMatrix out = RealMatrix::Zero(j1.dim() * d2, J.dim());
  const double lambda1 = 0.25 * a * (a + 2), lambda2 = 0.25 * b * (b + 2);
  const double target = 0.25 * tJ * (tJ + 2);

  // In each M sector, J^2 = J1^2 + J2^2 + 2 J1z J2z + J1+ J2- + J1- J2+ is
  // tridiagonal over m1. Its eigenvalues J(J+1) are at least 2 apart, so
  // the eigenvectors come out accurate to roundoff for every J at once.
  for (int col = 0; col < J.dim(); ++col) {
    const int two_M = tJ - 2 * col;
    const int lo = std::max(-a, two_M - b), hi = std::min(a, two_M + b);
    const int n = (hi - lo) / 2 + 1;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
    // Sector index r <-> two_m1 = hi - 2r, descending like the basis.
    for (int r = 0; r < n; ++r) {
      const int tm1 = hi - 2 * r, tm2 = two_M - tm1;
      h(r, r) = lambda1 + lambda2 + 0.5 * tm1 * tm2;
      if (r + 1 < n) {
        // <m1-1, m2+1| J1- J2+ |m1, m2>
        const double v = lower_factor(a, tm1) * raise_factor(b, tm2);
        h(r + 1, r) = v;
        h(r, r + 1) = v;
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    Eigen::Index pick = 0;
    (es.eigenvalues().array() - target).abs().minCoeff(&pick);
    if (std::abs(es.eigenvalues()(pick) - target) > 0.5)
      throw std::runtime_error("coupled_basis: J^2 eigenvalue not found");
    Eigen::VectorXd v = es.eigenvectors().col(pick);
    // Condon-Shortley makes the largest-m1 component positive: it has
    // m1 = j1 or m2 = -j2, where the Racah sum has a single positive term.
    if (v(0) < 0.0) v = -v;
    for (int r = 0; r < n; ++r) {
      const int tm1 = hi - 2 * r, tm2 = two_M - tm1;
      out(j1.index_of(tm1) * d2 + j2.index_of(tm2), col) = v(r);
    }
  }
  return out;
}

double clebsch_gordan(SpinLabel j1, SpinLabel j2, int two_m1, int two_m2, SpinLabel J,
                      int two_M) {
  if (!triangle_ok(j1, j2, J))
    throw std::invalid_argument("clebsch_gordan: triangle rule violated");
  const int i1 = j1.index_of(two_m1);
  const int i2 = j2.index_of(two_m2);
  J.index_of(two_M);
  if (two_M != two_m1 + two_m2) return 0.0;
  const RealMatrix basis = coupled_basis(j1, j2, J);
  return basis(i1 * j2.dim() + i2, J.index_of(two_M));
}

Operator total_J_projector(SpinLabel j1, SpinLabel j2, SpinLabel J) {
  const RealMatrix v = coupled_basis(j1, j2, J);
  return (v * v.transpose()).cast<Complex>();
}

Eigen::VectorXcd basis_state(SpinLabel spin, int two_m) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(spin.dim());
  v(spin.index_of(two_m)) = 1.0;
  return v;
}

Operator basis_projector(SpinLabel spin, int two_m) {
  const Eigen::VectorXcd v = basis_state(spin, two_m);
  return v * v.adjoint();
}

Operator maximally_mixed(SpinLabel spin) {
  return Operator::Identity(spin.dim(), spin.dim()) / static_cast<double>(spin.dim());
}

Operator kron(const Operator& a, const Operator& b) {
  Operator out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace covframe
