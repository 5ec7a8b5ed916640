#include "covframe/tasks.hpp"

#include "covframe/errors.hpp"
#include "covframe/quadrature.hpp"
#include "covframe/vandermonde.hpp"

#include <cmath>
#include <numbers>

namespace covframe {

namespace {

const SpinLabel kQubit{1};

double log_factorial(int n) { return std::lgamma(n + 1.0); }

// Blocks <b''| op |b> of an operator on spin (x) aux, as operators on spin.
std::vector<Operator> aux_blocks(const Operator& op, int d, int d_aux, double scale) {
  std::vector<Operator> out;
  out.reserve(static_cast<std::size_t>(d_aux) * d_aux);
  for (int out_aux = 0; out_aux < d_aux; ++out_aux)
    for (int in_aux = 0; in_aux < d_aux; ++in_aux) {
      Operator e(d, d);
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) e(r, c) = scale * op(r * d_aux + out_aux, c * d_aux + in_aux);
      if (e.cwiseAbs().maxCoeff() > 0.0) out.push_back(std::move(e));
    }
  return out;
}

Operator filter_gamma(SpinLabel j, double upper_weight) {
  const SpinLabel up(j.two_j() + 1);
  Operator g = upper_weight * total_J_projector(j, kQubit, up);
  if (j.two_j() >= 1) g -= total_J_projector(j, kQubit, SpinLabel(j.two_j() - 1));
  return g;
}

GateConstruction gamma_gate(SpinLabel j, int method, Operator gamma, MomentFunctional f,
                            bool tp) {
  GateConstruction g;
  g.spin = j;
  g.method = method;
  g.gamma = std::move(gamma);
  g.disturbance_kraus = aux_blocks(g.gamma, j.dim(), 2, std::sqrt(0.5));
  g.disturbance = from_kraus(g.disturbance_kraus);
  g.fidelity = std::move(f);
  g.trace_preserving = tp;
  return g;
}

MomentFunctional second_moment_functional(double constant, double weight) {
  MomentFunctional f{constant, RealVector::Zero(2)};
  f.weights(1) = weight;
  return f;
}

}  // namespace

void TaskSpec::validate() const {
  if (spin.two_j() < 1) throw InvalidTask("the reference frame needs j >= 1/2");
  if (kind == TaskKind::measurement) {
    if (measured.two_j() < 1) throw InvalidTask("measured spin must be at least 1/2");
    if (spin.two_j() <= measured.two_j())
      throw InvalidTask("measuring spin 2s=" + std::to_string(measured.two_j()) +
                        " needs 2j > 2s, got 2j=" + std::to_string(spin.two_j()));
  }
}

std::string TaskSpec::name() const {
  switch (kind) {
    case TaskKind::measurement:
      if (measured.two_j() == 1) return "meas-half";
      if (measured.two_j() == 2) return "meas-one";
      return "meas-2s" + std::to_string(measured.two_j());
    case TaskKind::gate_method1:
      return "gate1";
    case TaskKind::gate_method2:
      return "gate2";
    case TaskKind::gate_method3:
      return "gate3";
  }
  return {};
}

double MomentFunctional::operator()(const MomentVector& mv) const {
  if (mv.l_max() < order()) throw std::invalid_argument("fidelity needs more moments");
  double f = constant;
  for (int l = 1; l <= order(); ++l) f += weights(l - 1) * mv[l];
  return f;
}

SuperOperator MeasurementChannel::joint_superop() const { return from_kraus(joint_kraus); }
SuperOperator MeasurementChannel::disturbance() const { return from_kraus(disturbance_kraus); }

MeasurementChannel measurement_channel(SpinLabel j, SpinLabel s) {
  TaskSpec{TaskKind::measurement, j, s}.validate();
  MeasurementChannel ch;
  ch.spin = j;
  ch.measured = s;
  const double scale = 1.0 / std::sqrt(static_cast<double>(s.dim()));
  for (int two_mu = s.two_j(); two_mu >= -s.two_j(); two_mu -= 2) {
    ch.joint_kraus.push_back(total_J_projector(j, s, SpinLabel(j.two_j() + two_mu)));
    auto blocks = aux_blocks(ch.joint_kraus.back(), j.dim(), s.dim(), scale);
    for (auto& b : blocks) ch.disturbance_kraus.push_back(std::move(b));
  }
  return ch;
}

double measurement_fidelity(const Operator& rho, SpinLabel j, SpinLabel s) {
  TaskSpec{TaskKind::measurement, j, s}.validate();
  if (rho.rows() != j.dim() || rho.cols() != j.dim())
    throw DimensionMismatch("measurement_fidelity: state dimension does not match j");
  const int d = j.dim(), ds = s.dim();
  Complex total = 0.0;
  for (int k = 0; k < ds; ++k) {
    const int two_mu = s.two_j() - 2 * k;
    const Operator pi = total_J_projector(j, s, SpinLabel(j.two_j() + two_mu));
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) total += rho(r, c) * pi(c * ds + k, r * ds + k);
  }
  return total.real() / ds;
}

MomentFunctional measurement_functional(SpinLabel j, SpinLabel s) {
  TaskSpec{TaskKind::measurement, j, s}.validate();
  const int d = j.dim(), ds = s.dim();
  std::vector<double> success(d, 0.0);
  for (int k = 0; k < ds; ++k) {
    const int two_mu = s.two_j() - 2 * k;
    const RealMatrix v = coupled_basis(j, s, SpinLabel(j.two_j() + two_mu));
    for (int i = 0; i < d; ++i) success[i] += v.row(i * ds + k).squaredNorm() / ds;
  }
  std::vector<double> nodes(d);
  for (int i = 0; i < d; ++i) nodes[i] = j.m(i);
  const std::span<const double> fit_nodes(nodes.data(), ds);
  const std::span<const double> fit_values(success.data(), ds);
  const auto c = vandermonde::solve_interpolation<double>(fit_nodes, fit_values);
  const double res = vandermonde::interpolation_residual<double>(nodes, c, success);
  if (res > 1e-10)
    throw std::runtime_error("measurement success probability is not a degree-2s polynomial in m");
  MomentFunctional f{c[0], RealVector(ds - 1)};
  for (int l = 1; l < ds; ++l) f.weights(l - 1) = c[l];
  return f;
}

GateConstruction gate_method1(SpinLabel j) {
  TaskSpec{TaskKind::gate_method1, j}.validate();
  const int d = j.dim();
  Operator seed = Operator::Zero(d, d);
  seed(0, 0) = std::sqrt(static_cast<double>(d));
  const std::vector<Operator> kraus{seed};
  GateConstruction g;
  g.spin = j;
  g.disturbance = twirl(from_kraus(kraus), j);
  g.fidelity = task_fidelity({TaskKind::gate_method1, j});
  return g;
}

GateConstruction gate_method2(SpinLabel j) {
  TaskSpec{TaskKind::gate_method2, j}.validate();
  return gamma_gate(j, 2, filter_gamma(j, j.j() / (j.j() + 1)),
                    task_fidelity({TaskKind::gate_method2, j}), false);
}

GateConstruction gate_method3(SpinLabel j) {
  TaskSpec{TaskKind::gate_method3, j}.validate();
  return gamma_gate(j, 3, filter_gamma(j, 1.0), task_fidelity({TaskKind::gate_method3, j}),
                    true);
}

SuperOperator method1_quadrature_oracle(SpinLabel j) {
  TaskSpec{TaskKind::gate_method1, j}.validate();
  const int d = j.dim();
  const int n_angle = 2 * j.two_j() + 4;
  const QuadratureRule gl = gauss_legendre(j.two_j() + 2);
  const double angle_step = 2.0 * std::numbers::pi / n_angle;
  const Eigen::Index n_nodes = static_cast<Eigen::Index>(n_angle) * n_angle * gl.nodes.size();

  // K = sum_nodes w (2j+1) u u^dagger with u = conj(v) (x) v, v = R |j,j>.
  Eigen::MatrixXcd u(d * d, n_nodes);
  Eigen::Index col = 0;
  for (Eigen::Index g = 0; g < gl.nodes.size(); ++g) {
    const double theta = 0.5 * std::acos(gl.nodes(g));
    const double w = 0.5 * gl.weights(g) / (static_cast<double>(n_angle) * n_angle) * d;
    const double sw = std::sqrt(w);
    for (int a = 0; a < n_angle; ++a)
      for (int b = 0; b < n_angle; ++b) {
        const HaarPoint pt{0.0, theta, a * angle_step, b * angle_step};
        const Eigen::VectorXcd v = haar_rotation(j, pt).col(0);
        for (int r = 0; r < d; ++r) u.col(col).segment(r * d, d) = sw * std::conj(v(r)) * v;
        ++col;
      }
  }
  return SuperOperator(d, u * u.adjoint());
}

double method1_fidelity_quadrature(const Operator& rho, SpinLabel j) {
  TaskSpec{TaskKind::gate_method1, j}.validate();
  if (rho.rows() != j.dim() || rho.cols() != j.dim())
    throw DimensionMismatch("method1_fidelity_quadrature: state dimension does not match j");
  // Outcome Omega occurs with density p = (2j+1) <j,j|R^dagger rho R|j,j>;
  // the qubit then receives R Z R^dagger, whose overlap with Z is
  // 2 cos(2 theta). Only theta matters once the phases are averaged.
  const QuadratureRule gl = gauss_legendre(j.two_j() + 2);
  double overlap2 = 0.0;
  for (Eigen::Index g = 0; g < gl.nodes.size(); ++g) {
    const double t = gl.nodes(g);
    const HaarPoint pt{0.0, 0.5 * std::acos(t), 0.0, 0.0};
    const Eigen::VectorXcd v = haar_rotation(j, pt).col(0);
    const double p = j.dim() * (v.adjoint() * rho * v)(0, 0).real();
    overlap2 += 0.5 * gl.weights(g) * p * 4.0 * t * t;
  }
  return (overlap2 + 2.0) / 6.0;
}

RealMatrix method1_diagonal_action(SpinLabel j) {
  TaskSpec{TaskKind::gate_method1, j}.validate();
  const int d = j.dim(), tj = j.two_j();
  const double log_norm = std::log(static_cast<double>(d)) - log_factorial(2 * tj + 1);
  auto log_binom = [&](int k) { return log_factorial(tj) - log_factorial(k) - log_factorial(tj - k); };
  RealMatrix t(d, d);
  for (int out = 0; out < d; ++out)
    for (int in = 0; in < d; ++in) {
      const int a = (tj - out) + (tj - in);
      const int b = out + in;
      t(out, in) = std::exp(log_norm + log_binom(tj - out) + log_binom(tj - in) +
                            log_factorial(a) + log_factorial(b));
    }
  return t;
}

std::vector<Operator> induced_qubit_kraus(const Operator& gamma, const Operator& rho, SpinLabel j) {
  const int d = j.dim();
  if (gamma.rows() != 2 * d || gamma.cols() != 2 * d || rho.rows() != d || rho.cols() != d)
    throw DimensionMismatch("induced_qubit_kraus: shapes do not match j (x) 1/2");
  std::vector<Operator> out;
  for (int in = 0; in < d; ++in) {
    const double p = rho(in, in).real();
    if (p <= 0.0) continue;
    for (int o = 0; o < d; ++o) {
      Operator e = std::sqrt(p) * gamma.block(o * 2, in * 2, 2, 2);
      if (e.cwiseAbs().maxCoeff() > 0.0) out.push_back(std::move(e));
    }
  }
  return out;
}

double gate_fidelity(std::span<const Operator> kraus, const Operator& target) {
  const double d = static_cast<double>(target.rows());
  double acc = 0.0;
  for (const auto& e : kraus) {
    if (e.rows() != target.rows() || e.cols() != target.cols())
      throw DimensionMismatch("gate_fidelity: Kraus and target shapes differ");
    acc += std::norm((e.adjoint() * target).trace());
  }
  return (acc + d) / (d * d + d);
}

SuperOperator task_disturbance(const TaskSpec& task) {
  task.validate();
  switch (task.kind) {
    case TaskKind::measurement:
      return measurement_channel(task.spin, task.measured).disturbance();
    case TaskKind::gate_method1:
      return gate_method1(task.spin).disturbance;
    case TaskKind::gate_method2:
      return gate_method2(task.spin).disturbance;
    case TaskKind::gate_method3:
      return gate_method3(task.spin).disturbance;
  }
  throw InvalidTask("unknown task");
}

RealMatrix task_diagonal_action(const TaskSpec& task) {
  task.validate();
  switch (task.kind) {
    case TaskKind::measurement:
      return diagonal_action(measurement_channel(task.spin, task.measured).disturbance_kraus);
    case TaskKind::gate_method1:
      return method1_diagonal_action(task.spin);
    case TaskKind::gate_method2:
      return diagonal_action(aux_blocks(filter_gamma(task.spin, task.spin.j() / (task.spin.j() + 1)),
                                        task.spin.dim(), 2, std::sqrt(0.5)));
    case TaskKind::gate_method3:
      return diagonal_action(aux_blocks(filter_gamma(task.spin, 1.0), task.spin.dim(), 2,
                                        std::sqrt(0.5)));
  }
  throw InvalidTask("unknown task");
}

MomentFunctional task_fidelity(const TaskSpec& task) {
  task.validate();
  const double j = task.spin.j();
  switch (task.kind) {
    case TaskKind::measurement:
      return measurement_functional(task.spin, task.measured);
    case TaskKind::gate_method1:
      return second_moment_functional(1.0 / 3.0 + 2.0 / (3.0 * (2 * j + 3)),
                                      4.0 / (3.0 * (j + 1) * (2 * j + 3)));
    case TaskKind::gate_method2:
      return second_moment_functional(1.0 / 3.0, (2.0 / 3.0) / ((j + 1) * (j + 1)));
    case TaskKind::gate_method3: {
      const double w = 2.0 / (2 * j + 1);
      return second_moment_functional(1.0 / 3.0, (2.0 / 3.0) * w * w);
    }
  }
  throw InvalidTask("unknown task");
}

bool task_trace_preserving(const TaskSpec& task) { return task.kind != TaskKind::gate_method2; }

TaskSpec parse_task(std::string_view name, SpinLabel spin) {
  if (name == "meas-half") return {TaskKind::measurement, spin, SpinLabel(1)};
  if (name == "meas-one" || name == "example-a") return {TaskKind::measurement, spin, SpinLabel(2)};
  if (name == "gate1") return {TaskKind::gate_method1, spin};
  if (name == "gate2") return {TaskKind::gate_method2, spin};
  if (name == "gate3") return {TaskKind::gate_method3, spin};
  throw InvalidTask("unknown task '" + std::string(name) + "'");
}

}  // namespace covframe
