#include "covframe/cli/validation.hpp"

#include "covframe/cli/channel_spec.hpp"
#include "covframe/covariant.hpp"
#include "covframe/errors.hpp"
#include "covframe/random.hpp"
#include "covframe/reference.hpp"
#include "covframe/tasks.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>
#include <sstream>

namespace covframe::cli {

namespace {

// A suite returns an empty string on success, otherwise the first problem.
using Suite = std::function<std::string(int max_two_j, Rng& rng)>;

std::string failure(const std::string& what, int two_j, double error) {
  std::ostringstream os;
  os << what << " at two_j=" << two_j << " (error " << error << ")";
  return os.str();
}

std::string spin_algebra(int max_two_j, Rng&) {
  for (int tj = 1; tj <= max_two_j; ++tj) {
    const SpinLabel s(tj);
    const Operator jx = angular_momentum(s, Axis::x), jy = angular_momentum(s, Axis::y),
                   jz = angular_momentum(s, Axis::z);
    const Complex i(0.0, 1.0);
    const double comm = std::max({(jx * jy - jy * jx - i * jz).norm(), (jy * jz - jz * jy - i * jx).norm(),
                                  (jz * jx - jx * jz - i * jy).norm()});
    if (comm > 1e-10) return failure("[Jx,Jy] = iJz", tj, comm);
    if (casimir_check(s) > 1e-10) return failure("Casimir", tj, casimir_check(s));
  }
  return {};
}

std::string clebsch_gordan_suite(int max_two_j, Rng&) {
  const int cap = std::min(max_two_j, 12);
  for (int t1 = 1; t1 <= cap; ++t1) {
    for (int t2 = 1; t2 <= std::min(t1, 4); ++t2) {
      const SpinLabel a(t1), b(t2);
      const int d = a.dim() * b.dim();
      RealMatrix all(d, 0);
      for (int tJ = t1 - t2; tJ <= t1 + t2; tJ += 2) {
        const RealMatrix c = coupled_basis(a, b, SpinLabel(tJ));
        RealMatrix grown(d, all.cols() + c.cols());
        grown << all, c;
        all = grown;
        // Columns against the closed-form coefficients.
        for (int col = 0; col < c.cols(); ++col) {
          const int two_M = tJ - 2 * col;
          for (int i1 = 0; i1 < a.dim(); ++i1)
            for (int i2 = 0; i2 < b.dim(); ++i2) {
              const int tm1 = t1 - 2 * i1, tm2 = t2 - 2 * i2;
              const double cg = tm1 + tm2 == two_M ? clebsch_gordan(a, b, tm1, tm2, SpinLabel(tJ), two_M) : 0.0;
              const double err = std::abs(cg - c(i1 * b.dim() + i2, col));
              if (err > 1e-10) return failure("coupled basis vs CG", t1, err);
            }
        }
      }
      const double unitary = (all.transpose() * all - RealMatrix::Identity(d, d)).norm();
      if (unitary > 1e-10) return failure("CG completeness", t1, unitary);
    }
  }
  return {};
}

std::string kraus_superop(int max_two_j, Rng& rng) {
  for (int tj = 1; tj <= std::min(max_two_j, 12); ++tj) {
    const int d = tj + 1;
    const auto kraus = random_kraus(d, 3, rng);
    const SuperOperator s = from_kraus(kraus);
    const Operator rho = random_density_matrix(d, rng);
    Operator direct = Operator::Zero(d, d);
    for (const auto& e : kraus) direct += e * rho * e.adjoint();
    const double err = (covframe::apply(s, rho) - direct).norm();
    if (err > 1e-12) return failure("Liouville vs Kraus action", tj, err);
    if (!is_tp(s) || !is_cp(s)) return failure("random Kraus set not CPTP", tj, 0.0);
    const Operator x = random_density_matrix(d, rng);
    const double duality = std::abs((covframe::apply(s, rho) * x).trace() - (rho * covframe::apply(adjoint_map(s), x)).trace());
    if (duality > 1e-12) return failure("adjoint duality", tj, duality);
  }
  return {};
}

std::string zeta_suite(int max_two_j, Rng&) {
  for (int tj = 1; tj <= std::min(max_two_j, 20); ++tj) {
    const SpinLabel s(tj);
    const SuperOperator z = zeta_superop(s);
    if (!is_tp(z) || !is_cp(z) || !is_unital(z)) return failure("zeta is not a unital channel", tj, 0.0);
    const double cov = covariance_defect(z, s);
    if (cov > 1e-10) return failure("zeta covariance", tj, cov);
  }
  return {};
}

std::string nu_suite(int max_two_j, Rng&) {
  for (int tj = 1; tj <= std::min(max_two_j, 20); ++tj) {
    const SpinLabel s(tj);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(s.dim() * s.dim(), s.dim() * s.dim());
    for (Axis a : {Axis::x, Axis::y, Axis::z}) {
      const Operator j = angular_momentum(s, a);
      m += kron(j.conjugate(), j);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
    std::vector<double> direct(es.eigenvalues().data(), es.eigenvalues().data() + m.rows());
    std::vector<double> expected;
    const NuSpectrum nu = nu_spectrum(s);
    for (int l = 0; l <= tj; ++l)
      for (int k = 0; k < nu.multiplicity(l); ++k) expected.push_back(nu.nu(l));
    std::sort(expected.begin(), expected.end());
    double err = 0.0;
    for (std::size_t i = 0; i < direct.size(); ++i) err = std::max(err, std::abs(direct[i] - expected[i]));
    if (err > 1e-10) return failure("nu spectrum", tj, err);
  }
  return {};
}

std::string round_trip(int max_two_j, Rng& rng) {
  std::normal_distribution<double> normal;
  for (int tj = 1; tj <= std::min(max_two_j, 12); ++tj) {
    const SpinLabel s(tj);
    for (int rep = 0; rep < 5; ++rep) {
      CovariantChannel ch;
      ch.spin = s;
      ch.q = RealVector::NullaryExpr(tj + 1, [&] { return normal(rng); });
      ch.q /= ch.q.sum();
      const SuperOperator original = reconstruct(ch);
      const CovariantChannel back = classify(original, s);
      const double err = (reconstruct(back).matrix() - original.matrix()).norm();
      if (err > 1e-9) return failure("classify/reconstruct round trip", tj, err);
    }
  }
  return {};
}

std::string brst_suite(int max_two_j, Rng&) {
  for (int tj = 1; tj <= std::min(max_two_j, 12); ++tj) {
    const SpinLabel s(tj);
    const double j = s.j();
    const SuperOperator xi = Complex(reference::brst_q0(j)) * SuperOperator::identity(s.dim()) +
                             Complex(reference::brst_q1(j)) * zeta_superop(s);
    const CovariantChannel ch = classify(xi, s);
    RealVector want = RealVector::Zero(tj + 1);
    want(0) = reference::brst_q0(j);
    want(1) = reference::brst_q1(j);
    const double err = (ch.q - want).cwiseAbs().maxCoeff();
    if (err > 1e-9) return failure("prior-work coefficients", tj, err);
  }
  return {};
}

std::string tables_suite(int max_two_j, Rng&) {
  for (int tj = 2; tj <= std::min(max_two_j, 24); ++tj) {
    const SpinLabel s(tj);
    const double j = s.j();
    const RecursionTable half = recursion_coeffs(measurement_channel(s, SpinLabel(1)).disturbance(), s, 1);
    if (std::abs(half(1, 1) - reference::meas_half_a11(j)) > 1e-10)
      return failure("spin-1/2 A(1,1)", tj, std::abs(half(1, 1) - reference::meas_half_a11(j)));
    if (tj >= 3) {
      const RecursionTable one = recursion_coeffs(measurement_channel(s, SpinLabel(2)).disturbance(), s, 2);
      const double err = std::max({std::abs(one(1, 1) - reference::meas_one_a11(j)),
                                   std::abs(one(2, 0) - reference::meas_one_a02(j)),
                                   std::abs(one(2, 2) - reference::meas_one_a22(j))});
      if (err > 1e-10) return failure("spin-1 table", tj, err);
    }
    const std::array<std::pair<double, double>, 3> want{
        std::pair{reference::method1_a02(j), reference::method1_a22(j)},
        std::pair{reference::method2_a02(j), reference::method2_a22(j)},
        std::pair{reference::method3_a02(j), reference::method3_a22(j)}};
    const std::array<TaskKind, 3> kinds{TaskKind::gate_method1, TaskKind::gate_method2, TaskKind::gate_method3};
    for (int m = 0; m < 3; ++m) {
      TaskSpec t;
      t.kind = kinds[m];
      t.spin = s;
      const RecursionTable a = recursion_coeffs(task_diagonal_action(t), s, 2);
      const double err = std::max(std::abs(a(2, 0) - want[m].first), std::abs(a(2, 2) - want[m].second));
      if (err > 1e-10) return failure("method " + std::to_string(m + 1) + " table", tj, err);
    }
  }
  return {};
}

std::string quadrature_suite(int max_two_j, Rng&) {
  for (int tj = 1; tj <= std::min(max_two_j, 12); ++tj) {
    const SpinLabel s(tj);
    const double err = (gate_method1(s).disturbance.matrix() - method1_quadrature_oracle(s).matrix()).norm();
    if (err > 1e-8) return failure("method 1 twirl vs quadrature", tj, err);
  }
  return {};
}

std::string parity_suite(int max_two_j, Rng& rng) {
  for (int tj = 1; tj <= std::min(max_two_j, 8); ++tj) {
    const SpinLabel s(tj);
    for (int rep = 0; rep < 10; ++rep) {
      const SuperOperator xi = twirl(from_kraus(random_kraus(s.dim(), 3, rng)), s);
      const RecursionTable a = recursion_coeffs(xi, s, std::min(tj, 6));
      if (a.structural_defect() > 1e-10) return failure("parity", tj, a.structural_defect());
    }
    const RecursionTable z = recursion_coeffs(zeta_superop(s), s, tj);
    for (int l = 0; l <= tj; ++l) {
      const RealVector c = zeta_heisenberg_poly(s, l);
      double err = 0.0;
      for (int i = 0; i <= l; ++i) err = std::max(err, std::abs(c(i) - z(l, i)));
      if (err > 1e-10) return failure("zeta operator recursion vs matrix path", tj, err);
    }
  }
  return {};
}

std::string conservation_suite(int max_two_j, Rng&) {
  for (int tj = 2; tj <= std::min(max_two_j, 12); ++tj) {
    const SpinLabel s(tj);
    for (int ts : {1, 2}) {
      if (tj <= ts) continue;
      const CovariantChannel ch = classify(measurement_channel(s, SpinLabel(ts)).disturbance(), s);
      if (!conservation_bound_check(ch, ts + 1)) return failure("q_n beyond 2s", tj, ch.q.tail(tj - ts).cwiseAbs().maxCoeff());
    }
    const CovariantChannel m1 = classify(gate_method1(s).disturbance, s);
    if (!(m1.q(tj) > 1e-6)) return failure("method 1 top coefficient", tj, m1.q(tj));
  }
  return {};
}

std::string path_suite(int max_two_j, Rng&) {
  for (int tj = 2; tj <= std::min(max_two_j, 40); tj += 2) {
    for (const char* name : {"meas-one", "gate1", "gate2", "gate3"}) {
      const SpinLabel s(tj);
      const TaskSpec t = parse_task(name, s);
      if (t.kind == TaskKind::measurement && tj <= 2) continue;
      const RealVector p0 = highest_weight_populations(s);
      const FidelityReport a = evolve(t, 50, p0, {EvolutionPath::moments});
      const FidelityReport b = evolve(t, 50, p0, {EvolutionPath::eigenvalues});
      double err = std::abs(a.asymptote - b.asymptote);
      for (int k = 0; k <= 50; ++k) err = std::max(err, std::abs(a.per_step[k] - b.per_step[k]));
      if (err > 1e-9) return failure(std::string(name) + " moment vs eigenvalue path", tj, err);
    }
  }
  return {};
}

std::string fig3_suite(int, Rng&) {
  const SpinLabel s(16);
  const std::array<std::pair<const char*, double>, 3> want{std::pair{"gate1", reference::method1_fidelity(8.0, 64.0)},
                                                           std::pair{"gate2", reference::method2_fidelity(8.0, 64.0)},
                                                           std::pair{"gate3", reference::method3_fidelity(8.0, 64.0)}};
  for (const auto& [name, f0] : want) {
    const FidelityReport r = evolve(parse_task(name, s), 0, highest_weight_populations(s));
    if (std::abs(r.initial - f0) > 1e-9) return failure(std::string(name) + " initial fidelity", 16, std::abs(r.initial - f0));
  }
  return {};
}

}  // namespace

ValidationLevel parse_level(const std::string& text) {
  if (text == "fast") return ValidationLevel::fast;
  if (text == "full") return ValidationLevel::full;
  throw SpecError("level must be fast or full");
}

int cmd_validate(ValidationLevel level, const std::optional<std::filesystem::path>& input,
                 const RunConfig& cfg, std::ostream& report) {
  const int max_two_j = std::min(level == ValidationLevel::fast ? 12 : 40, cfg.max_two_j);
  std::vector<std::pair<std::string, Suite>> suites{
      {"spin_algebra", spin_algebra},     {"clebsch_gordan", clebsch_gordan_suite},
      {"kraus_superop", kraus_superop},   {"zeta_channel", zeta_suite},
      {"nu_spectrum", nu_suite},          {"classify_round_trip", round_trip},
      {"prior_work_map", brst_suite},     {"recursion_tables", tables_suite},
      {"twirl_quadrature", quadrature_suite}, {"parity", parity_suite},
      {"conservation_bound", conservation_suite}, {"path_agreement", path_suite},
      {"fig3_initial", fig3_suite}};
  if (input) {
    suites.emplace_back("input_spec_trace_preserving", [&](int, Rng&) -> std::string {
      const ChannelSpec spec = load_channel_spec(*input);
      const double defect = trace_preservation_defect(spec);
      if (spec.trace_preserving && defect > spec.tolerance) {
        std::ostringstream os;
        os << "declared trace preserving but |sum E^dag E - I| = " << defect;
        return os.str();
      }
      return {};
    });
  }

  Rng rng(cfg.seed);
  int failures = 0;
  char line[160];
  std::snprintf(line, sizeof line, "%-28s %-6s %10s\n", "suite", "status", "seconds");
  report << line;
  for (const auto& [name, run] : suites) {
    const auto start = std::chrono::steady_clock::now();
    std::string problem;
    try {
      problem = run(max_two_j, rng);
    } catch (const std::exception& e) {
      problem = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::snprintf(line, sizeof line, "%-28s %-6s %10.3f\n", name.c_str(), problem.empty() ? "ok" : "FAIL", secs);
    report << line;
    if (!problem.empty()) {
      ++failures;
      report << "  FAILED " << name << ": " << problem << '\n';
    }
  }
  report << (failures == 0 ? "all suites passed" : std::to_string(failures) + " suite(s) failed") << '\n';
  return failures == 0 ? kOk : kValidationFailed;
}

}  // namespace covframe::cli
