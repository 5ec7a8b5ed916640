#pragma once

#include "covframe/longevity.hpp"
#include "covframe/superop.hpp"

#include <json.hpp>

#include <cstdint>
#include <exception>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace covframe::cli {

enum ExitCode : int {
  kOk = 0,
  kValidationFailed = 1,
  kParseError = 2,
  kNotCovariant = 3,
  kDimensionMismatch = 4,
  kInvalidTask = 5,
  kThresholdUnreachable = 6,
  kIoError = 7,
};

/// Maps library and CLI exceptions to the documented exit codes.
int exit_code_for(const std::exception& e);

struct RunConfig {
  double tolerance = 1e-9;
  std::uint64_t seed = kDefaultSeed;
  int max_two_j = 80;
  std::optional<std::filesystem::path> out;
};

/// COVFRAME_MAX_TWO_J, default 80. A malformed value is a parse error.
int max_two_j_from_env();

/// Rejects tolerances outside (0, 1e-3] with SpecError.
void check_tolerance(double tol);

ThresholdRule parse_threshold(const std::string& text);
/// "a:b:s" (inclusive, step s) or a comma-separated list of two_j values.
std::vector<int> parse_two_j_range(const std::string& text);
/// "highest", "mixed", or the path of a text file with 2j+1 populations.
RealVector parse_initial_state(const std::string& selector, SpinLabel spin);

nlohmann::json cmd_classify(const std::filesystem::path& input, int two_j, const RunConfig& cfg);

/// CSV with header k,trace,moment1,moment2,fidelity; one row per k = 0..steps.
void cmd_evolve(const std::string& task, int two_j, int steps, const std::string& rho0,
                const RunConfig& cfg, std::ostream& csv);

/// CSV (two_j,n_star) to `csv`; returns the fit summary.
nlohmann::json cmd_longevity(const std::string& task, const std::vector<int>& two_js,
                             const std::string& threshold, const RunConfig& cfg,
                             std::ostream& csv);

/// Writes fig2.csv (task,two_j,n_star) or fig3.csv (method,k,fidelity) into dir.
void cmd_figures(const std::string& which, const std::filesystem::path& dir, const RunConfig& cfg);

/// Fixed-format CSV number: 12 significant digits.
std::string csv_number(double v);

}  // namespace covframe::cli
