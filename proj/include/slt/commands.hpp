#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "slt/model.hpp"
#include "slt/table.hpp"

namespace slt {

enum class Units { mu, lambda };
enum class Format { csv, json };

struct RunConfig {
  std::string command;  // scan | solve | charfn | eigenfunction | asymptotics | example
  std::string problem = "paper-example";
  std::optional<std::pair<double, double>> range;
  Units units = Units::mu;
  int n_max = 10;
  std::string out;  // empty or "-" for stdout
  Format format = Format::csv;
  bool strict = false;
  std::optional<double> mu;   // eigenfunction
  std::optional<int> points;  // grid size, command-specific default
  double tol = 1e-10;
  double window_pad = 0.5;
  std::optional<double> lambda_floor;
};

/// Throws ErrorKind::Config on an unusable configuration.
void check_config(const RunConfig& config);

struct CommandOutput {
  Table table;
  std::vector<std::string> warnings;
};

/// w on a uniform grid over the range (default mu in [0, 10], 1001 points).
CommandOutput cmd_charfn(const ValidatedProblem& problem, const RunConfig& config);
/// phi at lambda = mu^2 on both pieces, unnormalized (default 201 points per piece).
CommandOutput cmd_eigenfunction(const ValidatedProblem& problem, const RunConfig& config);
/// Eigenvalues with their residual report; filtered to the range if one is given.
CommandOutput cmd_solve(const ValidatedProblem& problem, const RunConfig& config);
/// Seeds against refined eigenvalues, with w / asym_char a quarter gap past each seed.
CommandOutput cmd_asymptotics(const ValidatedProblem& problem, const RunConfig& config);
/// Sign-change brackets of w over the range.
CommandOutput cmd_scan(const ValidatedProblem& problem, const RunConfig& config);

inline constexpr const char* kDegenerateNote = "Delta24=0: leading terms vanish";

/// Runs a command end to end. Returns the exit code: 0 success, 1 invalid
/// input or configuration, 2 numerical failure. Diagnostics go to `err`.
int run(const RunConfig& config, std::ostream& err);

}  // namespace slt
