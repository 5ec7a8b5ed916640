#pragma once

#include <Eigen/Dense>

namespace covframe {

struct QuadratureRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};

/// n-point Gauss-Legendre rule on [-1, 1] (Golub-Welsch); exact for
/// polynomials of degree <= 2n - 1.
QuadratureRule gauss_legendre(int n);

}  // namespace covframe
