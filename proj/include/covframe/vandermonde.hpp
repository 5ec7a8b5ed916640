#pragma once

// Bjorck-Pereyra solvers for Vandermonde systems with exactly known, distinct
// real nodes x_0..x_n. Both run in O(n^2) and never form the matrix.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

namespace covframe::vandermonde {

/// Interpolation form: find a with  sum_k a_k x_i^k = f_i  for every node i.
template <class Scalar>
std::vector<Scalar> solve_interpolation(std::span<const double> x, std::span<const Scalar> f) {
  const std::size_t size = x.size();
  if (f.size() != size) throw std::invalid_argument("vandermonde: size mismatch");
  std::vector<Scalar> a(f.begin(), f.end());
  if (size < 2) return a;
  const std::size_t n = size - 1;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = n; i > k; --i) a[i] = (a[i] - a[i - 1]) / (x[i] - x[i - k - 1]);
  for (std::size_t k = n; k-- > 0;)
    for (std::size_t i = k; i < n; ++i) a[i] = a[i] - a[i + 1] * x[k];
  return a;
}

/// Moment (transposed) form: find z with  sum_i x_i^k z_i = b_k  for k = 0..n.
template <class Scalar>
std::vector<Scalar> solve_moments(std::span<const double> x, std::span<const Scalar> b) {
  const std::size_t size = x.size();
  if (b.size() != size) throw std::invalid_argument("vandermonde: size mismatch");
  std::vector<Scalar> z(b.begin(), b.end());
  if (size < 2) return z;
  const std::size_t n = size - 1;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = n; i > k; --i) z[i] = z[i] - x[k] * z[i - 1];
  for (std::size_t k = n; k-- > 0;) {
    for (std::size_t i = k + 1; i <= n; ++i) z[i] = z[i] / (x[i] - x[i - k - 1]);
    for (std::size_t i = k; i < n; ++i) z[i] = z[i] - z[i + 1];
  }
  return z;
}

/// max_i | sum_k a_k x_i^k - f_i | / max(1, max_i |f_i|)
template <class Scalar>
double interpolation_residual(std::span<const double> x, std::span<const Scalar> a,
                              std::span<const Scalar> f) {
  double worst = 0.0, scale = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    Scalar acc{};
    for (std::size_t k = a.size(); k-- > 0;) acc = acc * x[i] + a[k];
    worst = std::max(worst, std::abs(acc - f[i]));
    scale = std::max(scale, static_cast<double>(std::abs(f[i])));
  }
  return worst / scale;
}

/// max_k | sum_i x_i^k z_i - b_k | / max(1, max_k |b_k|)
template <class Scalar>
double moments_residual(std::span<const double> x, std::span<const Scalar> z,
                        std::span<const Scalar> b) {
  double worst = 0.0, scale = 1.0;
  std::vector<double> pw(x.size(), 1.0);
  for (std::size_t k = 0; k < b.size(); ++k) {
    Scalar acc{};
    for (std::size_t i = 0; i < x.size(); ++i) {
      acc += pw[i] * z[i];
      pw[i] *= x[i];
    }
    worst = std::max(worst, std::abs(acc - b[k]));
    scale = std::max(scale, static_cast<double>(std::abs(b[k])));
  }
  return worst / scale;
}

/// 2-norm condition number of V_ik = x_i^k (SVD; intended for reporting).
double condition_estimate(std::span<const double> x);

}  // namespace covframe::vandermonde
