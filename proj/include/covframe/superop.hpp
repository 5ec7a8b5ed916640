#pragma once

// Liouville (column-stacking) representation of channels on d x d matrices.
//
// vec(rho) stacks columns, so vec index = row + d * col and
// vec(A X B) = (B^T (x) A) vec(X). A Kraus map rho -> sum E rho E^dagger is
// therefore K = sum conj(E) (x) E.

#include "covframe/spin.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace covframe {

class SuperOperator {
 public:
  SuperOperator() = default;
  SuperOperator(int dim, Eigen::MatrixXcd liouville);

  static SuperOperator identity(int dim);

  int dim() const noexcept { return dim_; }
  const Eigen::MatrixXcd& matrix() const noexcept { return k_; }

  /// Composition: (a * b)(rho) = a(b(rho)).
  friend SuperOperator operator*(const SuperOperator& a, const SuperOperator& b);
  friend SuperOperator operator+(const SuperOperator& a, const SuperOperator& b);
  friend SuperOperator operator-(const SuperOperator& a, const SuperOperator& b);
  friend SuperOperator operator*(Complex s, const SuperOperator& a);

 private:
  int dim_ = 0;
  Eigen::MatrixXcd k_;
};

enum class Subsystem { first, second };

Eigen::VectorXcd vectorize(const Operator& rho);
Operator unvectorize(const Eigen::VectorXcd& v, int dim);

/// Throws DimensionMismatch if the operators are not all square of one size.
SuperOperator from_kraus(std::span<const Operator> ops);

Operator apply(const SuperOperator& s, const Operator& rho);

/// Heisenberg-picture map: Tr[S(rho) X] = Tr[rho S^dagger(X)] for
/// Hermiticity-preserving S.
SuperOperator adjoint_map(const SuperOperator& s);

/// Choi matrix C = sum_ij |i><j| (x) S(|i><j|).
Operator choi_matrix(const SuperOperator& s);

bool is_cp(const SuperOperator& s, double tol = 1e-10);
bool is_tp(const SuperOperator& s, double tol = 1e-10);
bool is_unital(const SuperOperator& s, double tol = 1e-10);

Operator partial_trace(const Operator& joint, Subsystem traced, int d1, int d2);

/// (A (x) B) K without forming the Kronecker product; O(d^5) for d^2 x d^2 K.
Eigen::MatrixXcd kron_left_multiply(const Operator& a, const Operator& b,
                                    const Eigen::MatrixXcd& k);

inline constexpr std::uint64_t kDefaultSeed = 20080114;

/// Largest commutator norm ||[R* (x) R, K]||_F over 20 Haar-random rotations
/// (fixed seed) and the three infinitesimal generators J*_k (x) I - I (x) J_k.
double covariance_defect(const SuperOperator& s, SpinLabel spin,
                         std::uint64_t seed = kDefaultSeed);

/// Orthonormal bases V_k (d^2 x (2k+1)) of the commutant blocks,
/// V_k = (exp(-i pi Jy) (x) I) * |k, M> coupled vectors of j (x) j.
std::vector<Eigen::MatrixXcd> commutant_bases(SpinLabel spin);

/// Block values c_k = Tr[Pi~_k K] / (2k+1), k = 0..2j.
Eigen::VectorXcd commutant_coefficients(const SuperOperator& s, SpinLabel spin);

/// Pi~_k = V_k V_k^dagger for k = 0..2j.
std::vector<Operator> commutant_projectors(SpinLabel spin);

/// Hilbert-Schmidt projection of K(S) onto the span of the commutant
/// projectors, which equals the Haar twirl of S.
SuperOperator twirl(const SuperOperator& s, SpinLabel spin);

}  // namespace covframe
