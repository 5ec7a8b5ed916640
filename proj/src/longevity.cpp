#include "covframe/longevity.hpp"

#include "covframe/covariant.hpp"
#include "covframe/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace covframe {

namespace {

// x(k+1) = step x(k); moments(k) = readout x(k).
struct Dynamics {
  EvolutionPath path;
  RealMatrix step;
  RealVector start;
  RealMatrix readout;
  MomentFunctional fidelity;

  double quality(const RealVector& x) const {
    const RealVector mom = readout * x;
    double f = fidelity.constant;
    for (int l = 1; l <= fidelity.order(); ++l) f += fidelity.weights(l - 1) * mom(l);
    return f;
  }
};

Dynamics build(const TaskSpec& task, const RealVector& p0, const EvolveOptions& opts) {
  task.validate();
  const SpinLabel spin = task.spin;
  if (p0.size() != spin.dim()) throw DimensionMismatch("initial populations must have 2j+1 entries");
  const MomentFunctional f = task_fidelity(task);
  const int l_max = std::max(2, f.order());
  const bool moments_possible = spin.two_j() >= l_max && spin.two_j() <= kMaxConditionedTwoJ;
  const EvolutionPath path =
      opts.path.value_or(moments_possible ? EvolutionPath::moments : EvolutionPath::eigenvalues);

  const RealMatrix t = task_diagonal_action(task);
  if (path == EvolutionPath::eigenvalues) {
    RealMatrix readout(l_max + 1, spin.dim());
    for (int i = 0; i < spin.dim(); ++i)
      for (int l = 0; l <= l_max; ++l) readout(l, i) = std::pow(spin.m(i), l);
    return {path, t, p0, readout, f};
  }
  if (spin.two_j() < l_max)
    throw std::invalid_argument("moment evolution needs 2j >= " + std::to_string(l_max));
  const RecursionTable table = recursion_coeffs(t, spin, l_max);
  const MomentVector mv = eigenvalues_to_moments(p0, spin, l_max);
  RealVector x(l_max + 1);
  for (int l = 0; l <= l_max; ++l) x(l) = mv[l];
  return {path, table.a.leftCols(l_max + 1), x, RealMatrix::Identity(l_max + 1, l_max + 1), f};
}

// Repeated squaring until successive powers stop getting closer; past
// that point roundoff on the unit eigenvalue only compounds.
RealMatrix limit_by_squaring(RealMatrix m) {
  double last_change = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 200; ++it) {
    const RealMatrix m2 = m * m;
    const double scale = std::max(1.0, m.norm());
    if (!std::isfinite(m2.norm()) || m2.norm() > 1e12)
      throw std::runtime_error("evolution diverges; no asymptotic fidelity");
    const double change = (m2 - m).norm();
    if (change <= 1e-14 * scale) return m2;
    if (change >= last_change && change <= 1e-8 * scale) return m;
    last_change = change;
    m = m2;
  }
  throw std::runtime_error("evolution does not converge to a fixed point");
}

// lim_k step^k x for a lower-triangular moment recursion: each component is
// an affine map of itself driven by the lower ones.
RealVector triangular_limit(const Dynamics& dyn, bool& ok) {
  const RealMatrix& a = dyn.step;
  const Eigen::Index n = a.rows();
  RealVector lim = RealVector::Zero(n);
  ok = false;
  for (Eigen::Index l = 0; l < n; ++l)
    for (Eigen::Index i = l + 1; i < n; ++i)
      if (std::abs(a(l, i)) > 1e-12) return lim;
  for (Eigen::Index l = 0; l < n; ++l) {
    const double diag = a(l, l);
    double drive = 0.0, coupling = 0.0;
    for (Eigen::Index i = 0; i < l; ++i) {
      drive += a(l, i) * lim(i);
      coupling = std::max(coupling, std::abs(a(l, i)));
    }
    if (std::abs(diag) < 1.0 - 1e-12) {
      lim(l) = drive / (1.0 - diag);
    } else if (std::abs(diag - 1.0) <= 1e-12 && coupling <= 1e-15) {
      lim(l) = dyn.start(l);
    } else {
      return lim;
    }
  }
  ok = true;
  return lim;
}

double asymptote(const Dynamics& dyn) {
  if (dyn.path == EvolutionPath::moments) {
    bool ok = false;
    const RealVector lim = triangular_limit(dyn, ok);
    if (ok) return dyn.quality(lim);
  }
  return dyn.quality(limit_by_squaring(dyn.step) * dyn.start);
}

}  // namespace

RealVector diagonal_populations(const Operator& rho) {
  if (rho.rows() != rho.cols()) throw DimensionMismatch("state must be square");
  const Operator off = rho - Operator(rho.diagonal().asDiagonal());
  if (off.size() > 0 && off.cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("initial state must be diagonal in the Jz basis");
  return rho.diagonal().real();
}

RealVector highest_weight_populations(SpinLabel spin) {
  RealVector p = RealVector::Zero(spin.dim());
  p(0) = 1.0;
  return p;
}

FidelityReport evolve(const TaskSpec& task, int steps, const RealVector& p0,
                      const EvolveOptions& opts) {
  if (steps < 0) throw std::invalid_argument("steps must be non-negative");
  const Dynamics dyn = build(task, p0, opts);
  FidelityReport report;
  report.path = dyn.path;
  report.moments.resize(steps + 1, dyn.readout.rows());
  report.per_step.reserve(steps + 1);
  RealVector x = dyn.start;
  for (int k = 0; k <= steps; ++k) {
    if (k > 0) x = dyn.step * x;
    report.moments.row(k) = (dyn.readout * x).transpose();
    report.per_step.push_back(dyn.quality(x));
  }
  report.initial = report.per_step.front();
  report.asymptote = asymptote(dyn);
  return report;
}

FidelityReport evolve(const TaskSpec& task, int steps, const Operator& rho0,
                      const EvolveOptions& opts) {
  return evolve(task, steps, diagonal_populations(rho0), opts);
}

Crossing longevity(const TaskSpec& task, const ThresholdRule& rule, const RealVector& p0,
                   const EvolveOptions& opts) {
  const Dynamics dyn = build(task, p0, opts);
  Crossing out;
  out.initial = dyn.quality(dyn.start);
  out.asymptote = asymptote(dyn);
  out.threshold = rule.kind == ThresholdRule::Kind::absolute
                      ? rule.value
                      : out.asymptote + rule.value * (out.initial - out.asymptote);
  if (!(out.threshold > out.asymptote))
    throw ThresholdUnreachable("threshold " + std::to_string(out.threshold) +
                               " is not above the asymptotic fidelity " +
                               std::to_string(out.asymptote));
  if (out.initial < out.threshold) {
    out.at_crossing = out.initial;
    return out;
  }

  // powers[i] = step^(2^i)
  std::vector<RealMatrix> powers{dyn.step};
  long long lo = 0, hi = 1;
  while (true) {
    const double f = dyn.quality(powers.back() * dyn.start);
    if (f < out.threshold) break;
    lo = hi;
    if (powers.size() >= 62)
      throw ThresholdUnreachable("fidelity stays above the threshold for 2^62 uses");
    powers.push_back(powers.back() * powers.back());
    hi *= 2;
  }
  auto state_at = [&](long long k) {
    RealVector x = dyn.start;
    for (std::size_t bit = 0; k > 0; ++bit, k >>= 1)
      if (k & 1) x = powers[bit] * x;
    return x;
  };
  while (hi - lo > 1) {
    const long long mid = lo + (hi - lo) / 2;
    if (dyn.quality(state_at(mid)) < out.threshold)
      hi = mid;
    else
      lo = mid;
  }
  out.n_star = hi;
  out.at_crossing = dyn.quality(state_at(hi));
  return out;
}

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw DegenerateFit("need at least two points");
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw DegenerateFit("all abscissae are equal");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return fit;
}

LongevityResult scan_and_fit(const QualitySpec& quality, const std::vector<SpinLabel>& spins) {
  if (spins.size() < 4) throw DegenerateFit("a scaling fit needs at least 4 values of j");
  LongevityResult result;
  std::vector<double> lx, ly;
  for (SpinLabel spin : spins) {
    TaskSpec task = quality.task;
    task.spin = spin;
    const Crossing c = longevity(task, quality.threshold, highest_weight_populations(spin));
    result.rows.push_back({spin.two_j(), c.n_star, c.initial, c.at_crossing});
    if (c.n_star == 0)
      throw DegenerateFit("n* = 0 at 2j=" + std::to_string(spin.two_j()) + "; log undefined");
    lx.push_back(std::log(spin.j()));
    ly.push_back(std::log(static_cast<double>(c.n_star)));
  }
  const bool all_equal = std::all_of(result.rows.begin(), result.rows.end(),
                                     [&](const LongevityRow& r) { return r.n_star == result.rows[0].n_star; });
  if (all_equal) throw DegenerateFit("every n* is equal; no scaling to fit");
  result.fit = fit_line(lx, ly);
  return result;
}

}  // namespace covframe
