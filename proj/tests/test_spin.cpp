#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "covframe/spin.hpp"

#include <cmath>
#include <numbers>

using namespace covframe;

namespace {

long double fact(int n) {
  long double r = 1.0L;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

// Racah's single-sum formula, all arguments doubled.
double racah_cg(int a, int b, int ma, int mb, int c, int mc) {
  if (ma + mb != mc) return 0.0;
  const int ja = a, jb = b, jc = c;
  const long double pref =
      std::sqrt((jc + 1) * fact((ja + jb - jc) / 2) * fact((ja - jb + jc) / 2) *
                fact((-ja + jb + jc) / 2) / fact((ja + jb + jc) / 2 + 1)) *
      std::sqrt(fact((ja + ma) / 2) * fact((ja - ma) / 2) * fact((jb + mb) / 2) *
                fact((jb - mb) / 2) * fact((jc + mc) / 2) * fact((jc - mc) / 2));
  long double sum = 0.0L;
  for (int k = 0; k <= (ja + jb - jc) / 2; ++k) {
    const int d1 = (ja + jb - jc) / 2 - k, d2 = (ja - ma) / 2 - k, d3 = (jb + mb) / 2 - k;
    const int d4 = (jc - jb + ma) / 2 + k, d5 = (jc - ja - mb) / 2 + k;
    if (d1 < 0 || d2 < 0 || d3 < 0 || d4 < 0 || d5 < 0) continue;
    const long double term = 1.0L / (fact(k) * fact(d1) * fact(d2) * fact(d3) * fact(d4) * fact(d5));
    sum += (k % 2 == 0) ? term : -term;
  }
  return static_cast<double>(pref * sum);
}

Operator exact_ry_pi_half() {
  Operator r(2, 2);
  r << 0.0, -1.0, 1.0, 0.0;
  return r;
}

}  // namespace

TEST_CASE("spin-1/2 operators are Pauli matrices over two") {
  const SpinLabel half(1);
  Operator z(2, 2), x(2, 2);
  z << 0.5, 0, 0, -0.5;
  x << 0, 0.5, 0.5, 0;
  CHECK((angular_momentum(half, Axis::z) - z).norm() == doctest::Approx(0.0));
  CHECK((angular_momentum(half, Axis::x) - x).norm() == doctest::Approx(0.0));
}

TEST_CASE("spin-1 raising operator has entries sqrt 2") {
  const Operator jp = angular_momentum(SpinLabel(2), Axis::plus);
  CHECK(jp(0, 1).real() == doctest::Approx(std::sqrt(2.0)));
  CHECK(jp(1, 2).real() == doctest::Approx(std::sqrt(2.0)));
  CHECK(std::abs(jp(1, 0)) == 0.0);
}

TEST_CASE("commutation relations and Casimir up to j = 25") {
  const Complex i(0, 1);
  for (int tj = 1; tj <= 50; ++tj) {
    const SpinLabel s(tj);
    const Operator jx = angular_momentum(s, Axis::x), jy = angular_momentum(s, Axis::y),
                   jz = angular_momentum(s, Axis::z);
    CHECK((jx * jy - jy * jx - i * jz).norm() < 1e-12 * s.lambda());
    CHECK((jy * jz - jz * jy - i * jx).norm() < 1e-12 * s.lambda());
    CHECK(casimir_check(s) < 1e-12 * s.lambda());
  }
}

TEST_CASE("rotations") {
  SUBCASE("zero angle is the identity") {
    const Operator u = rotation_unitary(SpinLabel(5), AxisAngle{Eigen::Vector3d(1, 2, 3).normalized(), 0.0});
    CHECK((u - Operator::Identity(6, 6)).norm() < 1e-12);
  }
  SUBCASE("pi about y at j = 1/2") {
    const Operator u = rotation_unitary(SpinLabel(1), AxisAngle{Eigen::Vector3d::UnitY(), std::numbers::pi});
    CHECK((u - exact_ry_pi_half()).norm() < 1e-12);
  }
  SUBCASE("2 pi about z gives the double-cover sign") {
    for (int tj = 1; tj <= 6; ++tj) {
      const Operator u = rotation_unitary(SpinLabel(tj), AxisAngle{Eigen::Vector3d::UnitZ(), 2 * std::numbers::pi});
      const double sign = tj % 2 == 0 ? 1.0 : -1.0;
      CHECK((u - sign * Operator::Identity(tj + 1, tj + 1)).norm() < 1e-12);
    }
  }
  SUBCASE("Euler product matches axis-angle factors") {
    const SpinLabel s(7);
    const EulerAngles e{0.3, 1.1, -0.7};
    const Operator product = rotation_unitary(s, AxisAngle{Eigen::Vector3d::UnitZ(), e.alpha}) *
                             rotation_unitary(s, AxisAngle{Eigen::Vector3d::UnitY(), e.beta}) *
                             rotation_unitary(s, AxisAngle{Eigen::Vector3d::UnitZ(), e.gamma});
    const Operator u = rotation_unitary(s, e);
    CHECK((u - product).norm() < 1e-12);
    CHECK((u.adjoint() * u - Operator::Identity(8, 8)).norm() < 1e-12);
  }
  SUBCASE("zero axis is rejected") {
    CHECK_THROWS_AS(rotation_unitary(SpinLabel(2), AxisAngle{Eigen::Vector3d::Zero(), 1.0}), std::invalid_argument);
  }
}

TEST_CASE("highest-weight overlap agrees with the rotation matrix column") {
  for (int tj : {1, 2, 5, 8}) {
    const SpinLabel s(tj);
    for (const HaarPoint p : {HaarPoint{0.0, 0.0, 0.0, 0.0}, HaarPoint{0.4, 0.3, 1.2, -0.5},
                              HaarPoint{-1.0, 1.2, 2.5, 0.9}}) {
      const Operator u = haar_rotation(s, p);
      for (int i = 0; i < s.dim(); ++i) {
        const int two_m = tj - 2 * i;
        CHECK(std::abs(highest_weight_overlap(s, two_m, p) - u(i, 0)) < 1e-10);
      }
    }
  }
  CHECK(std::abs(highest_weight_overlap(SpinLabel(4), 4, HaarPoint{})) == doctest::Approx(1.0));
  // A rotation by pi/2 about y is theta = pi/4 in these coordinates.
  CHECK(std::abs(highest_weight_overlap(SpinLabel(1), -1, HaarPoint{0, std::numbers::pi / 4, 0, 0})) ==
        doctest::Approx(std::sqrt(0.5)));
}

TEST_CASE("Clebsch-Gordan coefficients match the Racah formula") {
  CHECK(clebsch_gordan(SpinLabel(1), SpinLabel(1), 1, 1, SpinLabel(2), 2) == doctest::Approx(1.0));
  CHECK(clebsch_gordan(SpinLabel(1), SpinLabel(1), 1, -1, SpinLabel(0), 0) == doctest::Approx(std::sqrt(0.5)));
  double worst = 0.0;
  for (int a = 1; a <= 10; ++a)
    for (int b = 1; b <= 4; ++b)
      for (int c = std::abs(a - b); c <= a + b; c += 2)
        for (int ma = -a; ma <= a; ma += 2)
          for (int mb = -b; mb <= b; mb += 2) {
            if (std::abs(ma + mb) > c) continue;
            const double got = clebsch_gordan(SpinLabel(a), SpinLabel(b), ma, mb, SpinLabel(c), ma + mb);
            worst = std::max(worst, std::abs(got - racah_cg(a, b, ma, mb, c, ma + mb)));
          }
  CHECK(worst < 1e-12);
  CHECK_THROWS_AS(clebsch_gordan(SpinLabel(1), SpinLabel(1), 1, 1, SpinLabel(6), 2), std::invalid_argument);
}

TEST_CASE("coupled basis is orthonormal and complete") {
  for (int a : {2, 5, 16})
    for (int b : {1, 2, 6}) {
      const int d = (a + 1) * (b + 1);
      RealMatrix all(d, 0);
      for (int c = std::abs(a - b); c <= a + b; c += 2) {
        const RealMatrix v = coupled_basis(SpinLabel(a), SpinLabel(b), SpinLabel(c));
        RealMatrix grown(d, all.cols() + v.cols());
        grown << all, v;
        all = grown;
      }
      REQUIRE(all.cols() == d);
      CHECK((all.transpose() * all - RealMatrix::Identity(d, d)).norm() < 1e-12);
    }
}

TEST_CASE("total angular momentum projectors") {
  SUBCASE("triplet of two spin-1/2") {
    const Operator p = total_J_projector(SpinLabel(1), SpinLabel(1), SpinLabel(2));
    CHECK(p.trace().real() == doctest::Approx(3.0));
  }
  SUBCASE("j (x) 1/2 upper multiplet has dimension 2j+2") {
    for (int tj = 1; tj <= 9; ++tj)
      CHECK(total_J_projector(SpinLabel(tj), SpinLabel(1), SpinLabel(tj + 1)).trace().real() ==
            doctest::Approx(tj + 2.0));
  }
  SUBCASE("1 (x) 1 decomposes into ranks 1, 3, 5") {
    Operator sum = Operator::Zero(9, 9);
    std::vector<Operator> ps;
    for (int c : {0, 2, 4}) {
      ps.push_back(total_J_projector(SpinLabel(2), SpinLabel(2), SpinLabel(c)));
      CHECK(ps.back().trace().real() == doctest::Approx(c + 1.0));
      CHECK((ps.back() * ps.back() - ps.back()).norm() < 1e-12);
      CHECK((ps.back() - ps.back().adjoint()).norm() < 1e-12);
      sum += ps.back();
    }
    CHECK((sum - Operator::Identity(9, 9)).norm() < 1e-12);
    CHECK((ps[0] * ps[1]).norm() < 1e-12);
    CHECK((ps[1] * ps[2]).norm() < 1e-12);
  }
}

TEST_CASE("spin labels are exact") {
  CHECK(SpinLabel(3).lambda() == 3.75);
  CHECK(SpinLabel(3).dim() == 4);
  CHECK(SpinLabel(3).m(0) == 1.5);
  CHECK(SpinLabel(3).index_of(-3) == 3);
  CHECK_THROWS_AS(SpinLabel(-1), std::invalid_argument);
  CHECK_THROWS_AS(SpinLabel(3).index_of(2), std::invalid_argument);
}
