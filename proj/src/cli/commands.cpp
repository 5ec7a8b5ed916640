#include "covframe/cli/commands.hpp"

#include "covframe/cli/channel_spec.hpp"
#include "covframe/covariant.hpp"
#include "covframe/errors.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

namespace covframe::cli {

namespace {

using nlohmann::json;

double parse_double(std::string_view text, const std::string& what) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw SpecError("cannot parse " + what + " from '" + std::string(text) + "'");
  return v;
}

int parse_int(std::string_view text, const std::string& what) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw SpecError("cannot parse " + what + " from '" + std::string(text) + "'");
  return v;
}

SpinLabel checked_spin(int two_j, const RunConfig& cfg) {
  if (two_j < 1) throw InvalidTask("two_j must be at least 1");
  if (two_j > cfg.max_two_j)
    throw InvalidTask("two_j=" + std::to_string(two_j) + " exceeds COVFRAME_MAX_TWO_J=" +
                      std::to_string(cfg.max_two_j));
  return SpinLabel(two_j);
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

void write_fig2(const std::filesystem::path& dir) {
  const std::vector<std::pair<const char*, const char*>> series{
      {"A", "meas-one"}, {"B1", "gate1"}, {"B2", "gate2"}, {"B3", "gate3"}};
  std::vector<SpinLabel> spins;
  for (int two_j = 8; two_j <= 80; two_j += 4) spins.emplace_back(two_j);
  std::ostringstream csv;
  csv << "task,two_j,n_star\n";
  json fits = json::object();
  for (const auto& [label, task] : series) {
    const LongevityResult r =
        scan_and_fit({parse_task(task, spins.front()), ThresholdRule::relative(0.5)}, spins);
    for (const auto& row : r.rows) csv << label << ',' << row.two_j << ',' << row.n_star << '\n';
    fits[label] = {{"slope", r.fit.slope}, {"intercept", r.fit.intercept}, {"r_squared", r.fit.r_squared}};
  }
  auto out = open_output(dir / "fig2.csv");
  out << csv.str();
  auto fit_out = open_output(dir / "fig2_fit.json");
  fit_out << fits.dump(2) << '\n';
  if (!out || !fit_out) throw IoError("write failed in " + dir.string());
}

void write_fig3(const std::filesystem::path& dir) {
  const SpinLabel spin(16);
  const int steps = 500;
  std::ostringstream csv;
  csv << "method,k,fidelity\n";
  const std::vector<std::pair<const char*, const char*>> series{
      {"method1", "gate1"}, {"method2", "gate2"}, {"method3", "gate3"}};
  for (const auto& [label, task] : series) {
    const FidelityReport rep = evolve(parse_task(task, spin), steps, highest_weight_populations(spin));
    for (int k = 0; k <= steps; ++k) csv << label << ',' << k << ',' << csv_number(rep.per_step[k]) << '\n';
  }
  auto out = open_output(dir / "fig3.csv");
  out << csv.str();
  if (!out) throw IoError("write failed for " + (dir / "fig3.csv").string());
}

}  // namespace

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const IoError*>(&e)) return kIoError;
  if (dynamic_cast<const SpecError*>(&e) || dynamic_cast<const json::exception*>(&e)) return kParseError;
  if (dynamic_cast<const NotCovariant*>(&e)) return kNotCovariant;
  if (dynamic_cast<const DimensionMismatch*>(&e)) return kDimensionMismatch;
  if (dynamic_cast<const InvalidTask*>(&e) || dynamic_cast<const DegenerateFit*>(&e) ||
      dynamic_cast<const IllConditioned*>(&e))
    return kInvalidTask;
  if (dynamic_cast<const ThresholdUnreachable*>(&e)) return kThresholdUnreachable;
  if (dynamic_cast<const std::filesystem::filesystem_error*>(&e)) return kIoError;
  return kValidationFailed;
}

int max_two_j_from_env() {
  const char* raw = std::getenv("COVFRAME_MAX_TWO_J");
  if (raw == nullptr || *raw == '\0') return 80;
  const int v = parse_int(raw, "COVFRAME_MAX_TWO_J");
  if (v < 1) throw SpecError("COVFRAME_MAX_TWO_J must be positive");
  return v;
}

void check_tolerance(double tol) {
  if (!(tol > 0.0 && tol <= 1e-3)) throw SpecError("tolerance must lie in (0, 1e-3]");
}

ThresholdRule parse_threshold(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw SpecError("threshold must be abs:<c> or rel:<r>");
  const std::string kind = text.substr(0, colon);
  const double v = parse_double(std::string_view(text).substr(colon + 1), "threshold");
  if (kind == "abs") return ThresholdRule::absolute(v);
  if (kind == "rel") return ThresholdRule::relative(v);
  throw SpecError("threshold must be abs:<c> or rel:<r>");
}

std::vector<int> parse_two_j_range(const std::string& text) {
  std::vector<int> out;
  if (text.find(':') != std::string::npos) {
    std::vector<int> parts;
    std::string_view rest = text;
    while (true) {
      const auto pos = rest.find(':');
      parts.push_back(parse_int(rest.substr(0, pos), "two_j range"));
      if (pos == std::string_view::npos) break;
      rest = rest.substr(pos + 1);
    }
    if (parts.size() != 3 || parts[2] < 1 || parts[1] < parts[0])
      throw SpecError("two_j range must be start:stop:step with step >= 1");
    for (int v = parts[0]; v <= parts[1]; v += parts[2]) out.push_back(v);
    return out;
  }
  std::string_view rest = text;
  while (true) {
    const auto pos = rest.find(',');
    out.push_back(parse_int(rest.substr(0, pos), "two_j list"));
    if (pos == std::string_view::npos) break;
    rest = rest.substr(pos + 1);
  }
  return out;
}

RealVector parse_initial_state(const std::string& selector, SpinLabel spin) {
  if (selector == "highest") return highest_weight_populations(spin);
  if (selector == "mixed") return RealVector::Constant(spin.dim(), 1.0 / spin.dim());
  std::ifstream in(selector);
  if (!in) throw IoError("cannot open initial-state file " + selector);
  std::vector<double> values;
  std::string token;
  while (in >> token) {
    std::string_view rest = token;
    while (!rest.empty()) {
      const auto pos = rest.find(',');
      const auto piece = rest.substr(0, pos);
      if (!piece.empty()) values.push_back(parse_double(piece, "population"));
      if (pos == std::string_view::npos) break;
      rest = rest.substr(pos + 1);
    }
  }
  if (static_cast<int>(values.size()) != spin.dim())
    throw DimensionMismatch("initial-state file has " + std::to_string(values.size()) +
                            " populations, 2j+1 = " + std::to_string(spin.dim()));
  RealVector p = Eigen::Map<RealVector>(values.data(), spin.dim());
  if (p.minCoeff() < 0.0 || std::abs(p.sum() - 1.0) > 1e-9)
    throw SpecError("populations must be non-negative and sum to 1");
  return p;
}

json cmd_classify(const std::filesystem::path& input, int two_j, const RunConfig& cfg) {
  check_tolerance(cfg.tolerance);
  const SpinLabel spin = checked_spin(two_j, cfg);
  const ChannelSpec spec = load_channel_spec(input);
  if (spec.dim != spin.dim())
    throw DimensionMismatch("channel dim " + std::to_string(spec.dim) + " but two_j=" +
                            std::to_string(two_j) + " needs " + std::to_string(spin.dim()));
  const SuperOperator s = from_kraus(spec.kraus);
  ClassifyOptions opts;
  opts.covariance_tol = cfg.tolerance;
  opts.seed = cfg.seed;
  const CovariantChannel ch = classify(s, spin, opts);
  json out{{"two_j", two_j},
           {"q", std::vector<double>(ch.q.data(), ch.q.data() + ch.q.size())},
           {"residual_imag", ch.residual_imag},
           {"covariance_defect", ch.covariance_defect},
           {"is_tp", is_tp(s)},
           {"is_cp", is_cp(s)},
           {"reconstruction_error", ch.reconstruction_error}};
  if (!spec.label.empty()) out["label"] = spec.label;
  return out;
}

void cmd_evolve(const std::string& task_name, int two_j, int steps, const std::string& rho0,
                const RunConfig& cfg, std::ostream& csv) {
  const SpinLabel spin = checked_spin(two_j, cfg);
  if (steps < 0) throw SpecError("steps must be non-negative");
  const TaskSpec task = parse_task(task_name, spin);
  task.validate();
  const RealVector p0 = parse_initial_state(rho0, spin);
  const FidelityReport rep = evolve(task, steps, p0);
  csv << "k,trace,moment1,moment2,fidelity\n";
  for (int k = 0; k <= steps; ++k)
    csv << k << ',' << csv_number(rep.moments(k, 0)) << ',' << csv_number(rep.moments(k, 1)) << ','
        << csv_number(rep.moments(k, 2)) << ',' << csv_number(rep.per_step[k]) << '\n';
}

json cmd_longevity(const std::string& task_name, const std::vector<int>& two_js,
                   const std::string& threshold, const RunConfig& cfg, std::ostream& csv) {
  const ThresholdRule rule = parse_threshold(threshold);
  std::vector<SpinLabel> spins;
  for (int two_j : two_js) spins.push_back(checked_spin(two_j, cfg));
  if (spins.empty()) throw SpecError("empty two_j range");
  const TaskSpec task = parse_task(task_name, spins.front());
  for (SpinLabel s : spins) {
    TaskSpec t = task;
    t.spin = s;
    t.validate();
  }
  const LongevityResult r = scan_and_fit({task, rule}, spins);
  csv << "two_j,n_star\n";
  for (const auto& row : r.rows) csv << row.two_j << ',' << row.n_star << '\n';
  return {{"task", task_name},
          {"threshold", threshold},
          {"points", r.rows.size()},
          {"slope", r.fit.slope},
          {"intercept", r.fit.intercept},
          {"r_squared", r.fit.r_squared}};
}

void cmd_figures(const std::string& which, const std::filesystem::path& dir, const RunConfig& cfg) {
  if (which != "fig2" && which != "fig3" && which != "all")
    throw SpecError("figure must be fig2, fig3 or all");
  if (cfg.max_two_j < 80 && which != "fig3")
    throw InvalidTask("fig2 needs two_j up to 80; COVFRAME_MAX_TWO_J is " +
                      std::to_string(cfg.max_two_j));
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  if (which != "fig3") write_fig2(dir);
  if (which != "fig2") write_fig3(dir);
}

std::string csv_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace covframe::cli
