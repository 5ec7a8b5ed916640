#pragma once

// Rotationally covariant channels on a single spin-j system.
//
// Every covariant map is a polynomial of degree <= 2j in the zeta map
// rho -> (1/lambda) sum_k J_k rho J_k. The polynomial coefficients q_n are
// recovered from the eigenvalues of the map on the commutant blocks, which
// sit at the nodes x_l = nu_l / lambda.

#include "covframe/spin.hpp"
#include "covframe/superop.hpp"

#include <cstdint>
#include <span>

namespace covframe {

/// Requires two_j >= 1 (the zeta map is undefined for j = 0).
SuperOperator zeta_superop(SpinLabel spin);
SuperOperator zeta_power(SpinLabel spin, int n);

struct NuSpectrum {
  SpinLabel spin;
  RealVector nu;  ///< nu(l) = lambda - l(l+1)/2, l = 0..2j

  int multiplicity(int l) const { return 2 * l + 1; }
  /// nu / lambda: eigenvalues of the zeta map on each commutant block.
  RealVector nodes() const;
};

NuSpectrum nu_spectrum(SpinLabel spin);

struct ClassifyOptions {
  double covariance_tol = 1e-9;
  double imag_tol = 1e-9;
  double residual_tol = 1e-8;
  std::uint64_t seed = kDefaultSeed;
};

struct CovariantChannel {
  SpinLabel spin;
  RealVector q;  ///< q(n) multiplies the n-fold composition of zeta
  double residual_imag = 0.0;
  double covariance_defect = 0.0;
  double vandermonde_residual = 0.0;
  /// Frobenius distance between the input and reconstruct() of this result,
  /// evaluated blockwise without forming the reconstruction.
  double reconstruction_error = 0.0;
};

/// Throws NotCovariant when the covariance defect or the imaginary parts of
/// q exceed their tolerances, IllConditioned when the node solve misses
/// residual_tol.
CovariantChannel classify(const SuperOperator& s, SpinLabel spin, const ClassifyOptions& opts = {});

/// sum_n q_n zeta^n, evaluated by Horner's rule on superoperators.
SuperOperator reconstruct(const CovariantChannel& ch);

/// True iff |q_n| <= tol for every n >= d_subsystem. A joint map on
/// j (x) s that conserves total angular momentum cannot populate higher
/// powers than 2s.
bool conservation_bound_check(const CovariantChannel& ch, int d_subsystem, double tol = 1e-9);

// ---------------------------------------------------------------------------
// Moments

struct MomentVector {
  SpinLabel spin;
  RealVector values;   ///< values(l-1) = Tr[rho Jz^l], l = 1..l_max
  double trace = 1.0;  ///< Tr[rho]; differs from 1 only for non-TP evolution

  int l_max() const { return static_cast<int>(values.size()); }
  /// Tr[rho Jz^l] with l = 0 giving the trace.
  double operator[](int l) const { return l == 0 ? trace : values(l - 1); }
};

/// Uses the diagonal part of rho; rho must be diagonal in the Jz basis.
MomentVector moments(const Operator& rho, int l_max, SpinLabel spin);
MomentVector eigenvalues_to_moments(const RealVector& p, SpinLabel spin, int l_max);

/// Inverse of eigenvalues_to_moments for a full set of 2j moments.
/// Throws IllConditioned above two_j = 40.
RealVector moments_to_eigenvalues(const MomentVector& mv);

inline constexpr int kMaxConditionedTwoJ = 40;

// ---------------------------------------------------------------------------
// Recursion coefficients: Tr[xi(rho) Jz^l] = sum_i A(l, i) Tr[rho Jz^i].

struct RecursionTable {
  SpinLabel spin;
  int l_max = 0;
  RealMatrix a;  ///< (l_max+1) x (l_max+1), row l, column i

  double operator()(int l, int i) const { return a(l, i); }
  /// Largest |A(l, i)| among entries that must vanish: i > l, or i and l of
  /// different parity.
  double structural_defect() const;
};

/// T(i', i) = <m'| xi(|m><m|) |m'>, the action of xi on diagonal states.
RealMatrix diagonal_action(const SuperOperator& s);
RealMatrix diagonal_action(std::span<const Operator> kraus);

/// Heisenberg-picture fit: adjoint(xi)(Jz^l) must be diagonal, and its
/// diagonal is fitted as a polynomial in m of degree 2j. Requires
/// 0 <= l_max <= 2j and two_j <= 40; throws NotCovariant,
/// NonDiagonalHeisenbergImage or IllConditioned.
RecursionTable recursion_coeffs(const SuperOperator& xi, SpinLabel spin, int l_max,
                                 const ClassifyOptions& opts = {});

/// Same fit driven by a diagonal action matrix (no covariance check).
RecursionTable recursion_coeffs(const RealMatrix& diag_action, SpinLabel spin, int l_max);

/// Coefficients c with zeta(Jz^l) = sum_k c(k) Jz^k, from the two-term
/// operator recursion for zeta(Jz^l) and its companion G(l).
RealVector zeta_heisenberg_poly(SpinLabel spin, int l);

/// Recursion table of sum_n q_n zeta^n assembled from zeta_heisenberg_poly.
RecursionTable recursion_from_q(const CovariantChannel& ch, int l_max);

}  // namespace covframe
