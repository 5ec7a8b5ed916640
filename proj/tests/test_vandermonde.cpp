#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "covframe/quadrature.hpp"
#include "covframe/vandermonde.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

using namespace covframe;

namespace {

Eigen::MatrixXd vander(const std::vector<double>& x) {
  const int n = static_cast<int>(x.size());
  Eigen::MatrixXd v(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) v(i, k) = std::pow(x[i], k);
  return v;
}

}  // namespace

TEST_CASE("interpolation solve matches a dense LU solve") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int n : {1, 2, 5, 9}) {
    std::vector<double> x(n), f(n);
    for (int i = 0; i < n; ++i) {
      x[i] = -1.0 + 2.0 * i / std::max(1, n - 1) + 0.01 * u(rng);
      f[i] = u(rng);
    }
    const auto a = vandermonde::solve_interpolation<double>(x, f);
    const Eigen::VectorXd ref = vander(x).partialPivLu().solve(Eigen::Map<Eigen::VectorXd>(f.data(), n));
    for (int k = 0; k < n; ++k) CHECK(a[k] == doctest::Approx(ref(k)).epsilon(1e-9));
    CHECK(vandermonde::interpolation_residual<double>(x, a, f) < 1e-12);
  }
}

TEST_CASE("interpolation recovers a known polynomial with complex values") {
  const std::vector<double> x{1.0, 0.5, -0.25, -1.5};
  const std::vector<std::complex<double>> coef{{1, 2}, {-3, 0}, {0.5, -1}, {2, 0.25}};
  std::vector<std::complex<double>> f;
  for (double xi : x) f.push_back(coef[0] + xi * (coef[1] + xi * (coef[2] + xi * coef[3])));
  const auto a = vandermonde::solve_interpolation<std::complex<double>>(x, f);
  for (int k = 0; k < 4; ++k) CHECK(std::abs(a[k] - coef[k]) < 1e-13);
}

TEST_CASE("moment solve is the transposed system") {
  const std::vector<double> m{1.5, 0.5, -0.5, -1.5};
  const std::vector<double> p{0.4, 0.3, 0.2, 0.1};
  std::vector<double> b(4, 0.0);
  for (int k = 0; k < 4; ++k)
    for (int i = 0; i < 4; ++i) b[k] += std::pow(m[i], k) * p[i];
  const auto z = vandermonde::solve_moments<double>(m, b);
  for (int i = 0; i < 4; ++i) CHECK(z[i] == doctest::Approx(p[i]).epsilon(1e-12));
  CHECK(vandermonde::moments_residual<double>(m, z, b) < 1e-14);
}

TEST_CASE("condition estimate grows with the number of nodes") {
  std::vector<double> prev_x{0.0, 1.0};
  double prev = vandermonde::condition_estimate(prev_x);
  for (int n = 3; n <= 12; ++n) {
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) x[i] = static_cast<double>(i) / (n - 1);
    const double c = vandermonde::condition_estimate(x);
    CHECK(c > prev);
    prev = c;
  }
  CHECK(vandermonde::condition_estimate(std::vector<double>{1.0, -1.0}) == doctest::Approx(1.0));
}

TEST_CASE("size mismatch is rejected") {
  const std::vector<double> x{0.0, 1.0}, f{1.0};
  CHECK_THROWS_AS(vandermonde::solve_interpolation<double>(x, f), std::invalid_argument);
}

TEST_CASE("Gauss-Legendre is exact to degree 2n-1") {
  for (int n = 1; n <= 12; ++n) {
    const QuadratureRule r = gauss_legendre(n);
    CHECK(r.weights.sum() == doctest::Approx(2.0));
    for (int deg = 0; deg <= 2 * n - 1; ++deg) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += r.weights(i) * std::pow(r.nodes(i), deg);
      const double exact = deg % 2 == 1 ? 0.0 : 2.0 / (deg + 1);
      CHECK(s == doctest::Approx(exact).epsilon(1e-12));
    }
  }
}
