// Acceptance checks. Run with a criterion number (1-10) or with no
// argument for all of them; prints one PASS/FAIL line per criterion and
// exits nonzero if any checked criterion fails.

#include "covframe/covariant.hpp"
#include "covframe/longevity.hpp"
#include "covframe/random.hpp"
#include "covframe/reference.hpp"
#include "covframe/tasks.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>

using namespace covframe;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

Operator jz_power(SpinLabel s, int l) {
  Operator out = Operator::Identity(s.dim(), s.dim());
  const Operator jz = angular_momentum(s, Axis::z);
  for (int i = 0; i < l; ++i) out = out * jz;
  return out;
}

Outcome round_trip() {
  Rng rng(kDefaultSeed);
  std::normal_distribution<double> normal;
  double worst = 0.0;
  for (int tj = 1; tj <= 12; ++tj) {
    const SpinLabel s(tj);
    for (int rep = 0; rep < 50; ++rep) {
      CovariantChannel ch;
      ch.spin = s;
      ch.q = RealVector::NullaryExpr(s.dim(), [&] { return normal(rng); });
      ch.q /= ch.q.sum();
      const SuperOperator original = reconstruct(ch);
      worst = std::max(worst, (reconstruct(classify(original, s)).matrix() - original.matrix()).norm());
    }
  }
  return {worst <= 1e-9, fmt("max Frobenius error %.3g (tol 1e-9) over 600 channels, two_j 1..12", worst)};
}

Outcome prior_work() {
  double worst = 0.0;
  for (int tj = 1; tj <= 12; ++tj) {
    const SpinLabel s(tj);
    const double j = s.j();
    const SuperOperator xi = Complex(0.5 + 1 / (2 * std::pow(2 * j + 1, 2))) * SuperOperator::identity(s.dim()) +
                             Complex(2 * j * (j + 1) / std::pow(2 * j + 1, 2)) * zeta_superop(s);
    const CovariantChannel ch = classify(xi, s);
    RealVector want = RealVector::Zero(s.dim());
    want(0) = reference::brst_q0(j);
    want(1) = reference::brst_q1(j);
    worst = std::max(worst, (ch.q - want).cwiseAbs().maxCoeff());
  }
  return {worst <= 1e-9, fmt("max |q - printed| %.3g (tol 1e-9), two_j 1..12", worst)};
}

Outcome measurement_tables() {
  double worst = 0.0;
  for (int tj = 2; tj <= 20; ++tj) {
    const SpinLabel s(tj);
    const double j = s.j();
    const RecursionTable half = recursion_coeffs(measurement_channel(s, SpinLabel(1)).disturbance(), s, 1);
    worst = std::max(worst, std::abs(half(1, 1) - (1 - 2 / std::pow(2 * j + 1, 2))));
    if (tj < 3) continue;
    const RecursionTable one = recursion_coeffs(measurement_channel(s, SpinLabel(2)).disturbance(), s, 2);
    worst = std::max({worst, std::abs(one(1, 1) - reference::meas_one_a11(j)),
                      std::abs(one(2, 0) - reference::meas_one_a02(j)),
                      std::abs(one(2, 2) - reference::meas_one_a22(j))});
  }
  return {worst <= 1e-10, fmt("max |A - printed| %.3g (tol 1e-10), j up to 10", worst)};
}

Outcome gate_tables() {
  double worst = 0.0;
  for (int tj = 2; tj <= 24; tj += 2) {
    const SpinLabel s(tj);
    const double j = s.j();
    const std::array<std::pair<const char*, std::pair<double, double>>, 3> rows{
        std::pair{"gate1", std::pair{reference::method1_a02(j), reference::method1_a22(j)}},
        std::pair{"gate2", std::pair{reference::method2_a02(j), reference::method2_a22(j)}},
        std::pair{"gate3", std::pair{reference::method3_a02(j), reference::method3_a22(j)}}};
    for (const auto& [name, want] : rows) {
      const RecursionTable a = recursion_coeffs(task_disturbance(parse_task(name, s)), s, 2);
      worst = std::max({worst, std::abs(a(2, 0) - want.first), std::abs(a(2, 2) - want.second)});
    }
  }
  return {worst <= 1e-10, fmt("max |A - printed| %.3g (tol 1e-10), methods 1-3, j 1..12", worst)};
}

Outcome parity() {
  Rng rng(kDefaultSeed + 5);
  double parity_worst = 0.0;
  int channels = 0;
  for (int tj = 1; tj <= 8; ++tj) {
    const SpinLabel s(tj);
    for (int rep = 0; rep < 25; ++rep, ++channels) {
      const SuperOperator xi = twirl(from_kraus(random_kraus(s.dim(), 1 + rep % 4, rng)), s);
      parity_worst = std::max(parity_worst, recursion_coeffs(xi, s, std::min(tj, 6)).structural_defect());
    }
  }
  double poly_worst = 0.0;
  for (int tj = 1; tj <= 20; ++tj) {
    const SpinLabel s(tj);
    const SuperOperator z = zeta_superop(s);
    for (int l = 0; l <= 8; ++l) {
      const RealVector c = zeta_heisenberg_poly(s, l);
      const Operator image = covframe::apply(z, jz_power(s, l));
      const double scale = std::max(1.0, std::pow(s.j(), l));
      for (int i = 0; i < s.dim(); ++i) {
        double p = 0.0;
        for (int k = static_cast<int>(c.size()); k-- > 0;) p = p * s.m(i) + c(k);
        poly_worst = std::max(poly_worst, std::abs(p - image(i, i).real()) / scale);
      }
    }
  }
  const bool ok = parity_worst <= 1e-10 && poly_worst <= 1e-10 && channels == 200;
  return {ok, fmt("parity defect %.3g over 200 channels; operator recursion vs matrix %.3g (tol 1e-10)",
                  parity_worst, poly_worst)};
}

Outcome spectrum() {
  double nu_worst = 0.0;
  for (int tj = 1; tj <= 20; ++tj) {
    const SpinLabel s(tj);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(s.dim() * s.dim(), s.dim() * s.dim());
    for (Axis a : {Axis::x, Axis::y, Axis::z}) {
      const Operator j = angular_momentum(s, a);
      m += kron(j.conjugate(), j);
    }
    const Eigen::VectorXd direct = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(m, Eigen::EigenvaluesOnly).eigenvalues();
    std::vector<double> expected;
    const NuSpectrum nu = nu_spectrum(s);
    for (int l = 0; l <= tj; ++l) expected.insert(expected.end(), nu.multiplicity(l), nu.nu(l));
    std::sort(expected.begin(), expected.end());
    for (int i = 0; i < direct.size(); ++i) nu_worst = std::max(nu_worst, std::abs(direct(i) - expected[i]));
  }
  Rng rng(kDefaultSeed + 6);
  double imag = 0.0, top = 0.0;
  for (int tj = 1; tj <= 12; ++tj) {
    const SpinLabel s(tj);
    std::vector<SuperOperator> cp;
    for (int rep = 0; rep < 5; ++rep) cp.push_back(twirl(from_kraus(random_kraus(s.dim(), 1 + rep, rng)), s));
    for (const char* g : {"gate1", "gate2", "gate3"}) cp.push_back(task_disturbance(parse_task(g, s)));
    if (tj > 1) cp.push_back(measurement_channel(s, SpinLabel(1)).disturbance());
    if (tj > 2) cp.push_back(measurement_channel(s, SpinLabel(2)).disturbance());
    for (const auto& x : cp) {
      ClassifyOptions opts;
      opts.imag_tol = 1.0;  // measured here rather than enforced
      const CovariantChannel ch = classify(x, s, opts);
      imag = std::max(imag, ch.residual_imag);
      top = std::min(top, ch.q(tj));
    }
  }
  const bool ok = nu_worst <= 1e-10 && imag <= 1e-9 && top >= -1e-10;
  return {ok, fmt("nu vs diagonalization %.3g; max Im q %.3g; min q_2j %.3g", nu_worst, imag, top)};
}

Outcome twirl_quadrature() {
  double worst = 0.0;
  for (int tj = 1; tj <= 12; ++tj) {
    const SpinLabel s(tj);
    worst = std::max(worst, (gate_method1(s).disturbance.matrix() - method1_quadrature_oracle(s).matrix()).norm());
  }
  return {worst <= 1e-8, fmt("max Frobenius difference %.3g (tol 1e-8), j 1/2..6", worst)};
}

Outcome fig2_slopes() {
  std::vector<SpinLabel> spins;
  for (int tj = 8; tj <= 80; tj += 4) spins.emplace_back(tj);
  struct Row {
    const char* name;
    double lo, hi;
  };
  const Row rows[] = {{"meas-one", 1.85, 2.15}, {"gate1", 0.85, 1.15}, {"gate2", 0.85, 1.15}, {"gate3", 1.85, 2.15}};
  bool ok = true;
  std::ostringstream os;
  for (const Row& r : rows) {
    const LongevityResult res = scan_and_fit({parse_task(r.name, spins[0]), ThresholdRule::relative(0.5)}, spins);
    const bool row_ok = res.fit.slope >= r.lo && res.fit.slope <= r.hi && res.fit.r_squared >= 0.99;
    ok = ok && row_ok;
    char buf[128];
    std::snprintf(buf, sizeof buf, "%s slope %.4f r2 %.4f%s; ", r.name, res.fit.slope, res.fit.r_squared,
                  row_ok ? "" : " (out of range)");
    os << buf;
  }
  return {ok, os.str()};
}

Outcome fig3() {
  const SpinLabel s(16);
  const char* names[] = {"gate1", "gate2", "gate3"};
  const double want[] = {reference::method1_fidelity(8, 64), reference::method2_fidelity(8, 64),
                         reference::method3_fidelity(8, 64)};
  std::vector<FidelityReport> reps;
  double init_err = 0.0;
  bool monotone = true;
  for (int m = 0; m < 3; ++m) {
    reps.push_back(evolve(parse_task(names[m], s), 500, highest_weight_populations(s)));
    init_err = std::max(init_err, std::abs(reps.back().initial - want[m]));
    for (int k = 1; k <= 500; ++k) monotone = monotone && reps.back().per_step[k] <= reps.back().per_step[k - 1] + 1e-12;
  }
  int first_violation = -1;
  for (int k = 1; k <= 500 && first_violation < 0; ++k)
    if (reps[2].per_step[k] < std::max(reps[0].per_step[k], reps[1].per_step[k]) - 1e-12) first_violation = k;
  const bool ok = init_err <= 1e-6 && monotone && first_violation < 0;
  std::ostringstream os;
  os << fmt("initial %.6f / %.6f / %.6f", reps[0].initial, reps[1].initial, reps[2].initial)
     << fmt(" (max err %.3g); ", init_err) << (monotone ? "monotone" : "NOT monotone") << "; method 3 ";
  if (first_violation < 0)
    os << "on top for k=1..500";
  else
    os << "below method 1 from k=" << first_violation
       << fmt(" (F500: %.6f vs %.6f)", reps[2].per_step[500], reps[0].per_step[500]);
  return {ok, os.str()};
}

Outcome conservation() {
  double signed_tail = -1.0, abs_tail = 0.0;
  int worst_tj = 0;
  double top_min = 1.0;
  for (int tj = 1; tj <= 16; ++tj) {
    const SpinLabel s(tj);
    for (int ts : {1, 2}) {
      if (tj <= ts) continue;
      const CovariantChannel ch = classify(measurement_channel(s, SpinLabel(ts)).disturbance(), s);
      for (int n = ts + 1; n <= tj; ++n) {
        if (ch.q(n) > signed_tail) {
          signed_tail = ch.q(n);
          worst_tj = tj;
        }
        abs_tail = std::max(abs_tail, std::abs(ch.q(n)));
      }
    }
    top_min = std::min(top_min, classify(gate_method1(s).disturbance, s).q(tj));
  }
  const bool ok = signed_tail <= 1e-9 && top_min > 1e-6;
  std::ostringstream os;
  os << fmt("measurement max q_n for n >= 2s+1: %.3g at two_j=%g (tol 1e-9, max |q_n| %.3g); ", signed_tail,
            worst_tj, abs_tail)
     << fmt("method 1 min q_2j %.3g", top_min);
  return {ok, os.str()};
}

}  // namespace

// Wall-clock budgets; zero means none.
constexpr double kSecondsAllowed[10] = {30, 0, 60, 0, 0, 0, 0, 300, 0, 0};

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"classification round trip", round_trip},
      {"prior-work map recovery", prior_work},
      {"measurement coefficient tables", measurement_tables},
      {"gate coefficient tables", gate_tables},
      {"parity and operator recursion", parity},
      {"spectrum and realness of q", spectrum},
      {"twirl vs quadrature", twirl_quadrature},
      {"longevity scaling slopes", fig2_slopes},
      {"fidelity curves at j=8", fig3},
      {"conservation bound", conservation}};
  int first = 1, last = 10;
  if (argc > 1) {
    first = last = std::atoi(argv[1]);
    if (first < 1 || first > 10) {
      std::fprintf(stderr, "criterion must be 1..10\n");
      return 2;
    }
  }
  bool all = true;
  for (int id = first; id <= last; ++id) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[id - 1].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const double limit = kSecondsAllowed[id - 1];
    if (limit > 0 && secs > limit) {
      o.pass = false;
      o.detail += fmt("; over the %.0f s budget", limit);
    }
    std::printf("AC%02d %s  %s: %s [%.2f s]\n", id, o.pass ? "PASS" : "FAIL", criteria[id - 1].first,
                o.detail.c_str(), secs);
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
