#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "slt/commands.hpp"

namespace {

bool parse_range(const std::string& text, std::pair<double, double>& out) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) return false;
  try {
    std::size_t used = 0;
    const std::string lo = text.substr(0, colon), hi = text.substr(colon + 1);
    out.first = std::stod(lo, &used);
    if (used != lo.size()) return false;
    out.second = std::stod(hi, &used);
    return used == hi.size();
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral solver for two-interval Sturm-Liouville problems with "
               "eigenparameter-dependent boundary conditions"};
  slt::RunConfig config;
  std::string range;

  app.add_option("command", config.command,
                 "scan | solve | charfn | eigenfunction | asymptotics | example")
      ->required();
  app.add_option("--problem", config.problem,
                 "problem file or built-in: paper-example, desk-benchmark, dirichlet")
      ->capture_default_str();
  app.add_option("--range", range, "lo:hi in the chosen units");
  app.add_option("--units", config.units, "mu or lambda")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, slt::Units>{{"mu", slt::Units::mu}, {"lambda", slt::Units::lambda}}));
  app.add_option("--n-max", config.n_max, "highest seed index")->capture_default_str();
  app.add_option("--out", config.out, "output file (default stdout)");
  app.add_option("--format", config.format, "csv or json")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, slt::Format>{{"csv", slt::Format::csv}, {"json", slt::Format::json}}));
  app.add_flag("--strict", config.strict, "sign assumptions are errors");
  app.add_option("--mu", config.mu, "mu for eigenfunction");
  app.add_option("--points", config.points, "grid size (per piece for eigenfunction)");
  app.add_option("--tol", config.tol, "integrator tolerance")->capture_default_str();
  app.add_option("--window-pad", config.window_pad, "seed window half-width in gaps")
      ->capture_default_str();
  app.add_option("--lambda-floor", config.lambda_floor, "lowest lambda searched");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  if (!range.empty()) {
    std::pair<double, double> r;
    if (!parse_range(range, r)) {
      std::cerr << "error: ConfigError: --range expects lo:hi\n";
      return 1;
    }
    config.range = r;
  }
  return slt::run(config, std::cerr);
}
