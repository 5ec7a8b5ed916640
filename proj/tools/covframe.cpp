// covframe: classify covariant spin channels, evolve reference-frame
// moments, and measure frame longevity.

#include "covframe/cli/channel_spec.hpp"
#include "covframe/cli/commands.hpp"
#include "covframe/cli/validation.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace covframe::cli;

namespace {

// Sends `text` to --out when given, otherwise to stdout.
void emit(const RunConfig& cfg, const std::string& text) {
  if (!cfg.out) {
    std::cout << text;
    return;
  }
  std::ofstream file(*cfg.out);
  if (!file || !(file << text)) throw IoError("cannot write " + cfg.out->string());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Covariant channels on spin-j reference frames"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string out_path;
  app.add_option("--seed", cfg.seed, "Seed for sampled rotations and random tests");
  app.add_option("--tol", cfg.tolerance, "Covariance tolerance, in (0, 1e-3]");
  app.add_option("--out", out_path, "Write the primary output here instead of stdout");

  int two_j = 0;
  std::string input, task, rho0 = "highest", threshold = "rel:0.5", range, level = "fast", figure;
  int steps = 100;

  auto* classify = app.add_subcommand("classify", "Expand a channel file in powers of zeta");
  classify->add_option("--input", input, "Channel JSON file")->required();
  classify->add_option("--two-j", two_j, "Twice the spin")->required();

  auto* evolve = app.add_subcommand("evolve", "Moments and fidelity after k uses, as CSV");
  evolve->add_option("--task", task, "meas-half, meas-one, gate1, gate2 or gate3")->required();
  evolve->add_option("--two-j", two_j, "Twice the spin")->required();
  evolve->add_option("--steps", steps, "Number of uses");
  evolve->add_option("--rho0", rho0, "highest, mixed, or a file of 2j+1 populations");

  auto* longevity = app.add_subcommand("longevity", "Uses until the fidelity crosses a threshold");
  longevity->add_option("--task", task, "meas-half, meas-one, gate1, gate2 or gate3")->required();
  longevity->add_option("--two-j-range", range, "start:stop:step or a comma list")->required();
  longevity->add_option("--threshold", threshold, "abs:<c> or rel:<r>");

  auto* figures = app.add_subcommand("figures", "Write the scaling and fidelity-curve CSV files");
  figures->add_option("which", figure, "fig2, fig3 or all")->required();
  figures->add_option("dir", out_path, "Output directory")->required();

  auto* validate = app.add_subcommand("validate", "Run the invariant suites");
  validate->add_option("--level", level, "fast or full");
  validate->add_option("--input", input, "Also check this channel file");

  for (auto* sub : {classify, evolve, longevity, figures, validate}) {
    sub->add_option("--seed", cfg.seed);
    sub->add_option("--tol", cfg.tolerance);
    if (sub != figures) sub->add_option("--out", out_path);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kParseError;
  }

  try {
    cfg.max_two_j = max_two_j_from_env();
    check_tolerance(cfg.tolerance);
    if (!out_path.empty()) cfg.out = out_path;

    if (*classify) {
      emit(cfg, cmd_classify(input, two_j, cfg).dump(2) + "\n");
    } else if (*evolve) {
      std::ostringstream csv;
      cmd_evolve(task, two_j, steps, rho0, cfg, csv);
      emit(cfg, csv.str());
    } else if (*longevity) {
      std::ostringstream csv;
      const auto fit = cmd_longevity(task, parse_two_j_range(range), threshold, cfg, csv);
      emit(cfg, csv.str());
      std::cout << fit.dump() << '\n';
    } else if (*figures) {
      cmd_figures(figure, out_path, cfg);
    } else if (*validate) {
      std::optional<std::filesystem::path> spec;
      if (!input.empty()) spec = input;
      std::ostringstream report;
      const int rc = cmd_validate(parse_level(level), spec, cfg, report);
      emit(cfg, report.str());
      return rc;
    }
  } catch (const std::exception& e) {
    std::cerr << "covframe: " << e.what() << '\n';
    return exit_code_for(e);
  }
  return kOk;
}
