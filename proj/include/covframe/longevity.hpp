#pragma once

// Repeated use of a reference frame: the frame state after k uses, the
// task fidelity along the way, and the number of uses before the fidelity
// drops below a threshold.

#include "covframe/spin.hpp"
#include "covframe/tasks.hpp"

#include <optional>
#include <vector>

namespace covframe {

struct ThresholdRule {
  enum class Kind { absolute, relative };
  Kind kind = Kind::relative;
  double value = 0.5;

  static ThresholdRule absolute(double c) { return {Kind::absolute, c}; }
  /// c = F_inf + r (F_0 - F_inf)
  static ThresholdRule relative(double r) { return {Kind::relative, r}; }
};

struct QualitySpec {
  TaskSpec task;
  ThresholdRule threshold;
};

/// moments: the recursion table acting on (Tr rho, Tr rho Jz, ...);
/// eigenvalues: the diagonal action acting on the populations.
enum class EvolutionPath { moments, eigenvalues };

struct EvolveOptions {
  std::optional<EvolutionPath> path;  ///< default: moments up to 2j = 40
};

struct FidelityReport {
  EvolutionPath path = EvolutionPath::moments;
  double initial = 0.0;
  std::vector<double> per_step;  ///< per_step[k] after k uses; per_step[0] = initial
  double asymptote = 0.0;
  /// Row k: Tr rho, Tr rho Jz, Tr rho Jz^2, ... after k uses.
  RealMatrix moments;
};

/// Populations of a Jz-diagonal state. Throws std::invalid_argument if rho
/// has off-diagonal entries above 1e-10.
RealVector diagonal_populations(const Operator& rho);
RealVector highest_weight_populations(SpinLabel spin);

FidelityReport evolve(const TaskSpec& task, int steps, const RealVector& p0,
                      const EvolveOptions& opts = {});
FidelityReport evolve(const TaskSpec& task, int steps, const Operator& rho0,
                      const EvolveOptions& opts = {});

struct Crossing {
  long long n_star = 0;  ///< smallest k with F(k) < threshold
  double threshold = 0.0;
  double initial = 0.0;
  double asymptote = 0.0;
  double at_crossing = 0.0;  ///< F(n_star)
};

/// Geometric stepping over k = 1, 2, 4, ... with matrix powers, then
/// bisection; assumes F(k) is nonincreasing. Throws ThresholdUnreachable
/// when the threshold is at or below the asymptote.
Crossing longevity(const TaskSpec& task, const ThresholdRule& rule, const RealVector& p0,
                   const EvolveOptions& opts = {});

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

struct LongevityRow {
  int two_j = 0;
  long long n_star = 0;
  double initial = 0.0;
  double at_crossing = 0.0;
};

struct LongevityResult {
  std::vector<LongevityRow> rows;
  LinearFit fit;  ///< ln n_star against ln j
};

/// Least squares y = slope x + intercept. Throws DegenerateFit for fewer
/// than two points or constant x.
LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

/// Runs longevity for each spin starting from |j,j><j,j| and fits
/// ln n_star against ln j. The task's spin field is replaced per row.
/// Throws DegenerateFit with fewer than 4 spins, a zero n_star, or all
/// n_star equal.
LongevityResult scan_and_fit(const QualitySpec& quality, const std::vector<SpinLabel>& spins);

}  // namespace covframe
