#include "covframe/random.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>

namespace covframe {

EulerAngles haar_euler(Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double two_pi = 2.0 * std::numbers::pi;
  return {two_pi * u(rng), std::acos(1.0 - 2.0 * u(rng)), two_pi * u(rng)};
}

RealVector random_distribution(int dim, Rng& rng) {
  std::exponential_distribution<double> e(1.0);
  RealVector p(dim);
  for (int i = 0; i < dim; ++i) p(i) = e(rng);
  return p / p.sum();
}

Operator random_ginibre(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Operator g(rows, cols);
  for (int c = 0; c < cols; ++c)
    for (int r = 0; r < rows; ++r) g(r, c) = Complex(n(rng), n(rng));
  return g;
}

Operator random_density_matrix(int dim, Rng& rng) {
  const Operator g = random_ginibre(dim, dim, rng);
  Operator rho = g * g.adjoint();
  return rho / rho.trace();
}

std::vector<Operator> random_kraus(int dim, int count, Rng& rng) {
  const Operator g = random_ginibre(dim * count, dim, rng);
  // E = G (G^dagger G)^{-1/2}, split into dim x dim blocks.
  Eigen::SelfAdjointEigenSolver<Operator> es(g.adjoint() * g);
  const Eigen::VectorXd inv_sqrt = es.eigenvalues().cwiseSqrt().cwiseInverse();
  const Operator w = es.eigenvectors() * inv_sqrt.cast<Complex>().asDiagonal() *
                     es.eigenvectors().adjoint();
  const Operator stacked = g * w;
  std::vector<Operator> out;
  out.reserve(count);
  for (int k = 0; k < count; ++k) out.push_back(stacked.block(k * dim, 0, dim, dim));
  return out;
}

}  // namespace covframe
