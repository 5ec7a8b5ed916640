#include "covframe/covariant.hpp"

#include "covframe/errors.hpp"
#include "covframe/vandermonde.hpp"

#include <cmath>
#include <iostream>
#include <string>
#include <vector>

namespace covframe {

namespace {

void require_nontrivial(SpinLabel spin) {
  if (spin.two_j() < 1) throw std::invalid_argument("covariant channels need j >= 1/2");
}

void require_dim(const SuperOperator& s, SpinLabel spin) {
  if (s.dim() != spin.dim())
    throw DimensionMismatch("channel acts on dimension " + std::to_string(s.dim()) +
                            ", spin 2j=" + std::to_string(spin.two_j()) + " needs " +
                            std::to_string(spin.dim()));
}

std::vector<double> magnetic_nodes(SpinLabel spin) {
  std::vector<double> m(spin.dim());
  for (int i = 0; i < spin.dim(); ++i) m[i] = spin.m(i);
  return m;
}

std::vector<double> to_std(const RealVector& v) { return {v.data(), v.data() + v.size()}; }

// Polynomial in m through the points (m_i, h_i); coefficient k multiplies m^k.
RealVector fit_in_m(SpinLabel spin, const std::vector<double>& h) {
  if (spin.two_j() > kMaxConditionedTwoJ)
    throw IllConditioned("polynomial fit in m beyond 2j=40", 0.0);
  const auto nodes = magnetic_nodes(spin);
  const auto a = vandermonde::solve_interpolation<double>(nodes, h);
  const double res = vandermonde::interpolation_residual<double>(nodes, a, h);
  if (res > 1e-8)
    throw IllConditioned("polynomial fit in m has residual " + std::to_string(res),
                         vandermonde::condition_estimate(nodes));
  return Eigen::Map<const RealVector>(a.data(), static_cast<Eigen::Index>(a.size()));
}

RecursionTable table_from_heisenberg_diagonals(SpinLabel spin, int l_max,
                                               const std::vector<std::vector<double>>& h) {
  RecursionTable t{spin, l_max, RealMatrix::Zero(l_max + 1, spin.dim())};
  for (int l = 0; l <= l_max; ++l) t.a.row(l) = fit_in_m(spin, h[l]).transpose();
  return t;
}

void require_l_max(SpinLabel spin, int l_max) {
  if (l_max < 0 || l_max > spin.two_j())
    throw std::invalid_argument("l_max must lie in [0, 2j]");
}

}  // namespace

SuperOperator zeta_superop(SpinLabel spin) {
  require_nontrivial(spin);
  const double scale = 1.0 / std::sqrt(spin.lambda());
  const std::vector<Operator> ops{scale * angular_momentum(spin, Axis::x),
                                  scale * angular_momentum(spin, Axis::y),
                                  scale * angular_momentum(spin, Axis::z)};
  return from_kraus(ops);
}

SuperOperator zeta_power(SpinLabel spin, int n) {
  if (n < 0) throw std::invalid_argument("zeta_power: negative exponent");
  SuperOperator result = SuperOperator::identity(spin.dim());
  if (n == 0) return result;
  SuperOperator base = zeta_superop(spin);
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

RealVector NuSpectrum::nodes() const { return nu / spin.lambda(); }

NuSpectrum nu_spectrum(SpinLabel spin) {
  require_nontrivial(spin);
  RealVector nu(spin.dim());
  for (int l = 0; l <= spin.two_j(); ++l) nu(l) = spin.lambda() - 0.5 * l * (l + 1);
  return {spin, nu};
}

CovariantChannel classify(const SuperOperator& s, SpinLabel spin, const ClassifyOptions& opts) {
  require_nontrivial(spin);
  require_dim(s, spin);
  CovariantChannel out{spin, RealVector::Zero(spin.dim())};
  out.covariance_defect = covariance_defect(s, spin, opts.seed);
  if (out.covariance_defect > opts.covariance_tol)
    throw NotCovariant("channel is not rotationally covariant (defect " +
                           std::to_string(out.covariance_defect) + ")",
                       out.covariance_defect);

  const auto bases = commutant_bases(spin);
  const Eigen::Index n = s.matrix().rows();
  std::vector<Complex> c(bases.size());
  Eigen::MatrixXcd all(n, n);
  Eigen::VectorXcd weights(n);
  Eigen::Index col = 0;
  for (std::size_t l = 0; l < bases.size(); ++l) {
    const auto& v = bases[l];
    c[l] = (v.adjoint() * (s.matrix() * v)).trace() / static_cast<double>(v.cols());
    all.middleCols(col, v.cols()) = v;
    weights.segment(col, v.cols()).setConstant(c[l]);
    col += v.cols();
  }
  const double off_commutant = (s.matrix() - all * weights.asDiagonal() * all.adjoint()).norm();

  const auto nodes = to_std(nu_spectrum(spin).nodes());
  const auto q = vandermonde::solve_interpolation<Complex>(nodes, c);
  out.vandermonde_residual = vandermonde::interpolation_residual<Complex>(nodes, q, c);
  if (out.vandermonde_residual > opts.residual_tol)
    throw IllConditioned("node solve residual " + std::to_string(out.vandermonde_residual),
                         vandermonde::condition_estimate(nodes));

  for (std::size_t k = 0; k < q.size(); ++k) {
    out.residual_imag = std::max(out.residual_imag, std::abs(q[k].imag()));
    out.q(static_cast<Eigen::Index>(k)) = q[k].real();
  }
  if (out.residual_imag > opts.imag_tol)
    throw NotCovariant("extracted coefficients are not real (max imaginary part " +
                           std::to_string(out.residual_imag) + ")",
                       out.covariance_defect);

  double in_commutant = 0.0;
  for (std::size_t l = 0; l < nodes.size(); ++l) {
    double p = 0.0;
    for (Eigen::Index k = out.q.size(); k-- > 0;) p = p * nodes[l] + out.q(k);
    in_commutant += (2.0 * l + 1.0) * std::norm(c[l] - p);
  }
  out.reconstruction_error = std::sqrt(off_commutant * off_commutant + in_commutant);
  return out;
}

SuperOperator reconstruct(const CovariantChannel& ch) {
  const int d = ch.spin.dim();
  if (ch.q.size() != d) throw DimensionMismatch("reconstruct: q must have 2j+1 entries");
  const SuperOperator z = zeta_superop(ch.spin);
  // conj(Jy) (x) Jy is real, so in this basis the whole Horner sum is real.
  if (z.matrix().imag().cwiseAbs().maxCoeff() == 0.0) {
    const RealMatrix zr = z.matrix().real();
    RealMatrix acc = RealMatrix::Identity(d * d, d * d) * ch.q(d - 1);
    for (int k = d - 1; k-- > 0;) {
      acc = acc * zr;
      acc.diagonal().array() += ch.q(k);
    }
    return SuperOperator(d, acc.cast<Complex>());
  }
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(d * d, d * d);
  Eigen::MatrixXcd acc = ch.q(d - 1) * id;
  for (int k = d - 1; k-- > 0;) acc = acc * z.matrix() + ch.q(k) * id;
  return SuperOperator(d, std::move(acc));
}

bool conservation_bound_check(const CovariantChannel& ch, int d_subsystem, double tol) {
  for (Eigen::Index n = std::max(d_subsystem, 0); n < ch.q.size(); ++n)
    if (std::abs(ch.q(n)) > tol) return false;
  return true;
}

MomentVector moments(const Operator& rho, int l_max, SpinLabel spin) {
  if (rho.rows() != spin.dim() || rho.cols() != spin.dim())
    throw DimensionMismatch("moments: state dimension does not match spin");
  const Operator off = rho - Operator(rho.diagonal().asDiagonal());
  if (off.cwiseAbs().maxCoeff() > 1e-10)
    std::clog << "covframe: moments() discarding off-diagonal part of a non-diagonal state\n";
  return eigenvalues_to_moments(rho.diagonal().real(), spin, l_max);
}

MomentVector eigenvalues_to_moments(const RealVector& p, SpinLabel spin, int l_max) {
  if (p.size() != spin.dim()) throw DimensionMismatch("eigenvalues_to_moments: length is not 2j+1");
  if (l_max < 0) throw std::invalid_argument("eigenvalues_to_moments: negative l_max");
  MomentVector mv{spin, RealVector::Zero(l_max), p.sum()};
  for (int i = 0; i < spin.dim(); ++i) {
    const double m = spin.m(i);
    double pw = 1.0;
    for (int l = 1; l <= l_max; ++l) {
      pw *= m;
      mv.values(l - 1) += p(i) * pw;
    }
  }
  return mv;
}

RealVector moments_to_eigenvalues(const MomentVector& mv) {
  const SpinLabel spin = mv.spin;
  if (mv.l_max() < spin.two_j())
    throw std::invalid_argument("moments_to_eigenvalues: needs all 2j moments");
  const auto nodes = magnetic_nodes(spin);
  if (spin.two_j() > kMaxConditionedTwoJ)
    throw IllConditioned("moment inversion beyond 2j=40", vandermonde::condition_estimate(nodes));
  std::vector<double> b(spin.dim());
  for (int l = 0; l <= spin.two_j(); ++l) b[l] = mv[l];
  const auto p = vandermonde::solve_moments<double>(nodes, b);
  const double res = vandermonde::moments_residual<double>(nodes, p, b);
  if (res > 1e-8)
    throw IllConditioned("moment inversion residual " + std::to_string(res),
                         vandermonde::condition_estimate(nodes));
  return Eigen::Map<const RealVector>(p.data(), static_cast<Eigen::Index>(p.size()));
}

double RecursionTable::structural_defect() const {
  double worst = 0.0;
  for (Eigen::Index l = 0; l < a.rows(); ++l)
    for (Eigen::Index i = 0; i < a.cols(); ++i)
      if (i > l || (l - i) % 2 != 0) worst = std::max(worst, std::abs(a(l, i)));
  return worst;
}

RealMatrix diagonal_action(const SuperOperator& s) {
  const int d = s.dim();
  RealMatrix t(d, d);
  for (int out = 0; out < d; ++out)
    for (int in = 0; in < d; ++in) t(out, in) = s.matrix()(out * (d + 1), in * (d + 1)).real();
  return t;
}

RealMatrix diagonal_action(std::span<const Operator> kraus) {
  if (kraus.empty()) throw std::invalid_argument("diagonal_action: empty Kraus set");
  const Eigen::Index d = kraus.front().rows();
  RealMatrix t = RealMatrix::Zero(d, d);
  for (const auto& e : kraus) {
    if (e.rows() != d || e.cols() != d) throw DimensionMismatch("diagonal_action: ragged Kraus set");
    t += e.cwiseAbs2();
  }
  return t;
}

RecursionTable recursion_coeffs(const SuperOperator& xi, SpinLabel spin, int l_max,
                                const ClassifyOptions& opts) {
  require_nontrivial(spin);
  require_dim(xi, spin);
  require_l_max(spin, l_max);
  const double defect = covariance_defect(xi, spin, opts.seed);
  if (defect > opts.covariance_tol)
    throw NotCovariant("recursion_coeffs: channel is not covariant", defect);

  const int d = spin.dim();
  const Eigen::MatrixXcd heis = xi.matrix().adjoint();
  std::vector<std::vector<double>> h(l_max + 1, std::vector<double>(d));
  for (int l = 0; l <= l_max; ++l) {
    Eigen::VectorXcd jz_l = Eigen::VectorXcd::Zero(d * d);
    for (int i = 0; i < d; ++i) jz_l(i * (d + 1)) = std::pow(spin.m(i), l);
    const Operator x = unvectorize(heis * jz_l, d);
    const double scale = std::max(1.0, x.diagonal().cwiseAbs().maxCoeff());
    const Operator off = x - Operator(x.diagonal().asDiagonal());
    if (off.cwiseAbs().maxCoeff() > 1e-9 * scale)
      throw NonDiagonalHeisenbergImage("adjoint image of Jz^" + std::to_string(l) +
                                       " has off-diagonal entries");
    for (int i = 0; i < d; ++i) h[l][i] = x(i, i).real();
  }
  return table_from_heisenberg_diagonals(spin, l_max, h);
}

RecursionTable recursion_coeffs(const RealMatrix& diag_action, SpinLabel spin, int l_max) {
  require_nontrivial(spin);
  require_l_max(spin, l_max);
  const int d = spin.dim();
  if (diag_action.rows() != d || diag_action.cols() != d)
    throw DimensionMismatch("recursion_coeffs: diagonal action must be (2j+1) x (2j+1)");
  std::vector<std::vector<double>> h(l_max + 1, std::vector<double>(d));
  RealVector pw = RealVector::Ones(d);
  for (int l = 0; l <= l_max; ++l) {
    const RealVector hl = diag_action.transpose() * pw;
    for (int i = 0; i < d; ++i) h[l][i] = hl(i);
    for (int i = 0; i < d; ++i) pw(i) *= spin.m(i);
  }
  return table_from_heisenberg_diagonals(spin, l_max, h);
}

RealVector zeta_heisenberg_poly(SpinLabel spin, int l) {
  require_nontrivial(spin);
  if (l < 0) throw std::invalid_argument("zeta_heisenberg_poly: negative power");
  const double inv_lambda = 1.0 / spin.lambda();
  // z[k] holds zeta(Jz^k), g the companion G(k); both as coefficient
  // vectors in powers of Jz. Right-multiplying by Jz shifts by one.
  auto shifted = [](const RealVector& v) {
    RealVector out = RealVector::Zero(v.size() + 1);
    out.tail(v.size()) = v;
    return out;
  };
  auto padded = [](const RealVector& v, Eigen::Index n) {
    RealVector out = RealVector::Zero(n);
    out.head(v.size()) = v;
    return out;
  };
  std::vector<RealVector> z{RealVector::Ones(1)};
  if (l == 0) return z[0];
  RealVector g = RealVector::Zero(2);
  g(1) = -inv_lambda;
  z.push_back(shifted(z[0]) + g);
  for (int k = 2; k <= l; ++k) {
    g = shifted(g) + padded(z[k - 2], k + 1);
    g(k) -= inv_lambda;
    z.push_back(shifted(z[k - 1]) + g);
  }
  return z[l];
}

RecursionTable recursion_from_q(const CovariantChannel& ch, int l_max) {
  const SpinLabel spin = ch.spin;
  require_l_max(spin, l_max);
  RealMatrix z = RealMatrix::Zero(l_max + 1, l_max + 1);
  for (int l = 0; l <= l_max; ++l) z.row(l).head(l + 1) = zeta_heisenberg_poly(spin, l).transpose();
  RealMatrix acc = RealMatrix::Zero(l_max + 1, l_max + 1);
  for (Eigen::Index n = ch.q.size(); n-- > 0;) {
    acc = acc * z;
    acc.diagonal().array() += ch.q(n);
  }
  RecursionTable t{spin, l_max, RealMatrix::Zero(l_max + 1, spin.dim())};
  t.a.leftCols(l_max + 1) = acc;
  return t;
}

}  // namespace covframe
