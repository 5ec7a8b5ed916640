#pragma once

// The concrete uses of a spin-j reference frame: measuring the z component
// of a maximally mixed spin-s reservoir, and implementing a Pauli-Z gate on
// a qubit by three different couplings. Each use disturbs the frame by a
// covariant channel; the quality of each use is an affine function of the
// frame's moments.

#include "covframe/covariant.hpp"
#include "covframe/spin.hpp"
#include "covframe/superop.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace covframe {

enum class TaskKind { measurement, gate_method1, gate_method2, gate_method3 };

struct TaskSpec {
  TaskKind kind = TaskKind::measurement;
  SpinLabel spin{2};
  SpinLabel measured{1};  ///< reservoir spin s, measurement only

  /// Throws InvalidTask when j <= s for a measurement or j = 0.
  void validate() const;
  std::string name() const;
};

/// F = constant + sum_l weights(l-1) Tr[rho Jz^l].
struct MomentFunctional {
  double constant = 0.0;
  RealVector weights;

  int order() const { return static_cast<int>(weights.size()); }
  double operator()(const MomentVector& mv) const;
};

struct MeasurementChannel {
  SpinLabel spin;
  SpinLabel measured;
  std::vector<Operator> joint_kraus;        ///< Pi_{j+mu}, mu = s..-s
  std::vector<Operator> disturbance_kraus;  ///< <mu''|Pi_J|mu> / sqrt(2s+1)

  SuperOperator joint_superop() const;
  SuperOperator disturbance() const;
};

MeasurementChannel measurement_channel(SpinLabel j, SpinLabel s);

/// Probability of identifying the reservoir's m value:
/// (1/(2s+1)) sum_mu Tr[Pi_{j+mu} (rho (x) |s,mu><s,mu|)].
double measurement_fidelity(const Operator& rho, SpinLabel j, SpinLabel s);

/// The same quantity as a functional of the moments, fitted exactly from
/// the per-m success probabilities (degree 2s in m).
MomentFunctional measurement_functional(SpinLabel j, SpinLabel s);

struct GateConstruction {
  SpinLabel spin;
  int method = 1;
  Operator gamma;                           ///< on j (x) 1/2; empty for method 1
  std::vector<Operator> disturbance_kraus;  ///< empty for method 1
  SuperOperator disturbance;
  MomentFunctional fidelity;                ///< closed form
  bool trace_preserving = true;
};

/// Covariant measurement with POVM (2j+1) R|j,j><j,j|R^dagger, then the
/// rotated Z on the qubit. Disturbance = twirl of the map
/// sigma -> (2j+1) <j,j|sigma|j,j> |j,j><j,j|.
GateConstruction gate_method1(SpinLabel j);
/// Filter (j/(j+1)) P_{j+1/2} - P_{j-1/2}; not trace preserving.
GateConstruction gate_method2(SpinLabel j);
/// Unitary P_{j+1/2} - P_{j-1/2}.
GateConstruction gate_method3(SpinLabel j);

/// Method 1 disturbance by explicit integration over SU(2): trapezoid grids
/// in phi and psi, Gauss-Legendre in cos(2 theta). Exact up to roundoff.
SuperOperator method1_quadrature_oracle(SpinLabel j);

/// Method 1 gate fidelity for a diagonal frame state, integrated over the
/// measurement outcomes instead of taken from the closed form.
double method1_fidelity_quadrature(const Operator& rho, SpinLabel j);

/// <m'| xi(|m><m|) |m'> for the Method 1 disturbance, in closed form.
RealMatrix method1_diagonal_action(SpinLabel j);

/// Kraus operators of the qubit map sigma -> Tr_j[Gamma (rho (x) sigma) Gamma^dagger]
/// for a diagonal rho.
std::vector<Operator> induced_qubit_kraus(const Operator& gamma, const Operator& rho, SpinLabel j);

/// (sum_k |Tr[E_k^dagger U]|^2 + d) / (d^2 + d).
double gate_fidelity(std::span<const Operator> kraus, const Operator& target);

// Uniform access used by the evolution code and the CLI.
SuperOperator task_disturbance(const TaskSpec& task);
RealMatrix task_diagonal_action(const TaskSpec& task);
MomentFunctional task_fidelity(const TaskSpec& task);
bool task_trace_preserving(const TaskSpec& task);

/// Accepts meas-half, meas-one (alias example-a), gate1, gate2, gate3.
/// Throws InvalidTask for anything else.
TaskSpec parse_task(std::string_view name, SpinLabel spin);

}  // namespace covframe
