#include "covframe/vandermonde.hpp"

#include <Eigen/SVD>

#include <limits>

namespace covframe::vandermonde {

double condition_estimate(std::span<const double> x) {
  const auto n = static_cast<Eigen::Index>(x.size());
  if (n == 0) return 1.0;
  Eigen::MatrixXd v(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double p = 1.0;
    for (Eigen::Index k = 0; k < n; ++k) {
      v(i, k) = p;
      p *= x[static_cast<std::size_t>(i)];
    }
  }
  const Eigen::VectorXd s = Eigen::JacobiSVD<Eigen::MatrixXd>(v).singularValues();
  const double smallest = s(n - 1);
  if (smallest <= 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / smallest;
}

}  // namespace covframe::vandermonde
