#pragma once

// Spin-j operators, rotations and Clebsch-Gordan couplings.
//
// Basis convention used everywhere in the library: index 0 <-> m = +j,
// descending in m. Product spaces are row-major over |j1,m1> (x) |j2,m2>,
// i.e. index = i1 * d2 + i2.

#include <Eigen/Dense>

#include <complex>
#include <compare>
#include <variant>

namespace covframe {

using Complex = std::complex<double>;
using Operator = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// A spin quantum number stored as twice its value so that half-integers
/// are exact.
class SpinLabel {
 public:
  constexpr SpinLabel() = default;
  explicit SpinLabel(int two_j);

  constexpr int two_j() const noexcept { return two_j_; }
  constexpr int dim() const noexcept { return two_j_ + 1; }
  constexpr double j() const noexcept { return 0.5 * two_j_; }
  /// j(j+1), exact for two_j <= 1e6.
  constexpr double lambda() const noexcept {
    return static_cast<double>(static_cast<long long>(two_j_) * (two_j_ + 2)) / 4.0;
  }
  /// Magnetic quantum number of basis vector `index`.
  constexpr double m(int index) const noexcept { return 0.5 * (two_j_ - 2 * index); }
  /// Basis index of the state with magnetic number two_m / 2.
  int index_of(int two_m) const;

  friend constexpr auto operator<=>(SpinLabel, SpinLabel) = default;

 private:
  int two_j_ = 0;
};

enum class Axis { x, y, z, plus, minus };

struct AxisAngle {
  Eigen::Vector3d axis;
  double angle = 0.0;
};

/// z-y-z Euler angles: U = exp(-i alpha Jz) exp(-i beta Jy) exp(-i gamma Jz).
struct EulerAngles {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

using Rotation = std::variant<AxisAngle, EulerAngles>;

/// Coordinates (alpha, theta, phi, psi) of U(2) used for Haar integration,
/// with measure (2 pi)^-3 2 sin(theta) cos(theta) dtheta dalpha dphi dpsi,
/// theta in [0, pi/2]. The rotation they denote is
///   exp(-i alpha) exp(-i (phi+psi) Jz) exp(+i 2 theta Jy) exp(-i (phi-psi) Jz).
struct HaarPoint {
  double alpha = 0.0;
  double theta = 0.0;
  double phi = 0.0;
  double psi = 0.0;

  EulerAngles euler() const { return {phi + psi, -2.0 * theta, phi - psi}; }
};

Operator angular_momentum(SpinLabel spin, Axis component);

/// || Jx^2 + Jy^2 + Jz^2 - j(j+1) I ||_F
double casimir_check(SpinLabel spin);

/// Spin-j representation of a rotation. Axis-angle rotations are computed
/// by exponentiating the Hermitian generator through its eigendecomposition.
/// Throws std::invalid_argument for a zero-length axis.
Operator rotation_unitary(SpinLabel spin, const Rotation& rotation);

/// rotation_unitary of the Euler angles of `point`, times its global phase.
Operator haar_rotation(SpinLabel spin, const HaarPoint& point);

/// <j,m| R(point) |j,j> in closed form.
Complex highest_weight_overlap(SpinLabel spin, int two_m, const HaarPoint& point);

/// Condon-Shortley <j1 m1; j2 m2 | J M>. Zero when M != m1 + m2.
/// Throws std::invalid_argument if the triangle rule or |m| <= j fails.
double clebsch_gordan(SpinLabel j1, SpinLabel j2, int two_m1, int two_m2, SpinLabel J,
                      int two_M);

/// Columns |J,M>, M = J..-J, expanded in the product basis of j1 (x) j2.
/// Eigenvectors of total J^2 within each M sector, signs fixed by
/// Condon-Shortley.
RealMatrix coupled_basis(SpinLabel j1, SpinLabel j2, SpinLabel J);

/// Projector onto total angular momentum J inside j1 (x) j2.
Operator total_J_projector(SpinLabel j1, SpinLabel j2, SpinLabel J);

bool triangle_ok(SpinLabel j1, SpinLabel j2, SpinLabel J);

Eigen::VectorXcd basis_state(SpinLabel spin, int two_m);
/// |j,m><j,m|
Operator basis_projector(SpinLabel spin, int two_m);
/// I / (2j+1)
Operator maximally_mixed(SpinLabel spin);

Operator kron(const Operator& a, const Operator& b);

}  // namespace covframe
