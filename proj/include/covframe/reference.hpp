#pragma once

// Closed-form recursion coefficients and fidelities for the shipped tasks,
// as functions of the real spin j. Used as oracles by the tests and the
// validation runner; the library itself derives every number numerically.

namespace covframe::reference {

inline double sq(double x) { return x * x; }

// Spin-1/2 measurement.
inline double meas_half_a11(double j) { return 1.0 - 2.0 / sq(2.0 * j + 1.0); }
inline double meas_half_fidelity(double j, double m1) { return 0.5 + m1 / (2.0 * j + 1.0); }

// Spin-1 measurement.
inline double meas_one_a11(double j) {
  const double j2 = j * j, j3 = j2 * j, j4 = j3 * j;
  return (3 * j4 + 6 * j3 - j2 - 4 * j + 2) / (3 * j2 * sq(j + 1));
}
inline double meas_one_a02(double j) {
  const double j3 = j * j * j, j4 = j3 * j;
  return 2 * (8 * j4 + 16 * j3 - 8 * j - 3) / (3 * j * (j + 1) * sq(2 * j + 1));
}
inline double meas_one_a22(double j) {
  const double j2 = j * j, j3 = j2 * j, j4 = j3 * j, j5 = j4 * j, j6 = j5 * j;
  return (4 * j6 + 12 * j5 - 3 * j4 - 26 * j3 + j2 + 16 * j + 6) /
         (j2 * sq(j + 1) * sq(2 * j + 1));
}
inline double meas_one_fidelity(double j, double m1, double m2) {
  const double d = 2 * j + 1;
  return 1.0 / 6.0 + (d * d - 2) / (6 * j * (j + 1) * d) * m1 + m2 / (2 * j * (j + 1));
}

// Pauli-Z gate, measure-and-rotate.
inline double method1_a02(double j) { return j - 2 * j / (2 * j + 3); }
inline double method1_a22(double j) { return 1 - 3 * (2 * j + 1) / ((2 * j + 3) * (j + 1)); }
inline double method1_fidelity(double j, double m2) {
  return 1.0 / 3.0 + 2 * (j + 1 + 2 * m2) / (3 * (j + 1) * (2 * j + 3));
}

// Pauli-Z gate, filtering.
inline double method2_a02(double j) { return j / (j + 1); }
inline double method2_a22(double j) { return (j / (j + 1)) * (1 - 3 / (j * (j + 1))); }
inline double method2_fidelity(double j, double m2) {
  return 1.0 / 3.0 + (2.0 / 3.0) * m2 / sq(j + 1);
}

// Pauli-Z gate, unitary coupling.
inline double method3_a02(double j) { return 1 - 1 / sq(2 * j + 1); }
inline double method3_a22(double j) { return 1 - 12 / sq(2 * j + 1); }
inline double method3_fidelity(double j, double m2) {
  return 1.0 / 3.0 + (2.0 / 3.0) * sq(2 / (2 * j + 1)) * m2;
}

// Earlier-literature disturbance map a * rho + b * zeta(rho).
inline double brst_q0(double j) { return 0.5 + 1 / (2 * sq(2 * j + 1)); }
inline double brst_q1(double j) { return 2 * j * (j + 1) / sq(2 * j + 1); }

}  // namespace covframe::reference
