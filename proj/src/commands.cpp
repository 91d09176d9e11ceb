#include "slt/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "slt/asymptotic.hpp"
#include "slt/charfn.hpp"
#include "slt/eigen.hpp"
#include "slt/error.hpp"
#include "slt/problem_io.hpp"

namespace slt {

namespace {

[[noreturn]] void config_error(const std::string& what) { throw Error(ErrorKind::Config, what); }

// Uniform grid over the range in the given units, returned as lambda values.
std::vector<double> grid_lambdas(const RunConfig& config, std::pair<double, double> range,
                                 int points) {
  std::vector<double> out(points);
  for (int i = 0; i < points; ++i) {
    const double t = i + 1 == points ? range.second
                                     : range.first + (range.second - range.first) * i / (points - 1);
    out[i] = config.units == Units::mu ? t * t : t;
  }
  return out;
}

Cell opt(const std::optional<double>& v) { return v ? Cell{*v} : Cell{}; }

std::pair<double, double> lambda_range(const RunConfig& config) {
  const auto [lo, hi] = *config.range;
  if (config.units == Units::mu) return {lo * lo, hi * hi};
  return {lo, hi};
}

CharOptions char_options(const RunConfig& config) {
  CharOptions o;
  o.tol = config.tol;
  return o;
}

FindOptions find_options(const RunConfig& config) {
  FindOptions o;
  o.char_opts = char_options(config);
  o.lambda_floor = config.lambda_floor;
  return o;
}

}  // namespace

void check_config(const RunConfig& config) {
  static const std::vector<std::string> commands{"scan",          "solve",       "charfn",
                                                 "eigenfunction", "asymptotics", "example"};
  if (std::find(commands.begin(), commands.end(), config.command) == commands.end()) {
    config_error("unknown command '" + config.command + "'");
  }
  if (config.range) {
    const auto [lo, hi] = *config.range;
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
      config_error("range needs finite lo < hi");
    }
    if (config.units == Units::mu && lo < 0.0) config_error("a mu range needs lo >= 0");
  }
  if (config.n_max < 1) config_error("n-max must be >= 1");
  if (config.points && *config.points < 2) config_error("points must be >= 2");
  if (!(config.tol > 0.0)) config_error("tol must be > 0");
  if (!(config.window_pad > 0.0)) config_error("window pad must be > 0");
  if (config.command == "eigenfunction" && !config.mu) {
    config_error("eigenfunction needs --mu");
  }
  if (config.mu && !(std::isfinite(*config.mu) && *config.mu >= 0.0)) {
    config_error("mu must be finite and >= 0");
  }
}

CommandOutput cmd_charfn(const ValidatedProblem& problem, const RunConfig& config) {
  const auto range = config.range.value_or(std::pair{0.0, 10.0});
  const auto lambdas = grid_lambdas(config, range, config.points.value_or(1001));
  const auto nodes = char_grid(problem, lambdas, char_options(config));

  CommandOutput out;
  out.table.columns = {"mu", "lambda", "w", "w_minus", "w_plus", "consistency"};
  bool failures = false;
  for (const auto& node : nodes) failures = failures || !node.sample;
  if (failures) out.table.columns.push_back("warning");

  for (const auto& node : nodes) {
    std::vector<Cell> row{node.lambda >= 0.0 ? Cell{std::sqrt(node.lambda)} : Cell{},
                          node.lambda};
    if (node.sample) {
      row.insert(row.end(), {node.sample->w, node.sample->w_minus, node.sample->w_plus,
                             node.sample->consistency});
    } else {
      row.insert(row.end(), 4, Cell{});
      out.warnings.push_back(node.error);
    }
    if (failures) row.push_back(node.sample ? Cell{} : Cell{node.error});
    out.table.add_row(std::move(row));
  }
  return out;
}

CommandOutput cmd_eigenfunction(const ValidatedProblem& problem, const RunConfig& config) {
  if (!config.mu) config_error("eigenfunction needs --mu");
  const double lambda = *config.mu * *config.mu;
  const auto samples = sample_phi(problem, lambda, config.points.value_or(201), config.tol);
  CommandOutput out;
  out.table.columns = {"x", "side", "y", "dy"};
  for (const auto& s : samples) {
    out.table.add_row({s.x, std::string(s.side == Side::minus ? "minus" : "plus"), s.y, s.dy});
  }
  return out;
}

CommandOutput cmd_solve(const ValidatedProblem& problem, const RunConfig& config) {
  auto spectrum = find_eigenvalues(problem, config.n_max, config.window_pad, find_options(config));
  CommandOutput out;
  out.warnings = spectrum.warnings;
  for (double m : spectrum.suspected_multiple) {
    std::ostringstream msg;
    msg << "suspected multiple root near lambda = " << format_real(m);
    out.warnings.push_back(msg.str());
  }
  out.table.columns = {"n",        "branch",   "lambda",   "mu",       "seed_mu",    "w_residual",
                       "bc_res_1", "bc_res_2", "tm_res_1", "tm_res_2", "prop_defect"};
  std::optional<std::pair<double, double>> window;
  if (config.range) window = lambda_range(config);
  long long ordinal = 0;
  for (const auto& r : spectrum.records) {
    if (window && (r.lambda < window->first || r.lambda > window->second)) continue;
    ++ordinal;
    if (!r.converged) {
      out.warnings.push_back("refinement stopped early at lambda = " + format_real(r.lambda));
    }
    Cell n, branch;
    if (!spectrum.seeded) {
      n = ordinal;
      branch = std::string("none");
    } else if (r.branch != Branch::unmatched) {
      n = static_cast<long long>(r.n);
      branch = to_string(r.branch);
    } else {
      branch = to_string(r.branch);
    }
    out.table.add_row({n, branch, r.lambda, opt(r.mu), opt(r.seed_mu), r.w_residual,
                       r.bc_residuals[0], r.bc_residuals[1], r.tm_residuals[0], r.tm_residuals[1],
                       r.proportionality_defect});
  }
  return out;
}

CommandOutput cmd_asymptotics(const ValidatedProblem& problem, const RunConfig& config) {
  const auto ac = classify(problem.bc(), problem.tm());
  CommandOutput out;
  out.table.columns = {"n", "branch", "seed_mu", "refined_mu", "n_times_gap", "w_ratio"};

  Spectrum spectrum;
  if (ac.degenerate_leading) {
    out.table.add_row({std::string("NOTE"), std::string(kDegenerateNote), Cell{}, Cell{}, Cell{},
                       Cell{}});
    // both branches below the top seed
    spectrum = find_eigenvalues(problem, 2 * config.n_max + 4, config.window_pad,
                                find_options(config));
    match_to_seeds(problem, spectrum.records, config.n_max);
  } else {
    spectrum = find_eigenvalues(problem, config.n_max, config.window_pad, find_options(config));
  }
  out.warnings = spectrum.warnings;

  struct Row {
    int branch, n;
    double seed, refined;
  };
  std::vector<Row> rows;
  for (const auto& r : spectrum.records) {
    if (r.branch == Branch::unmatched || !r.mu || !r.seed_mu) continue;
    rows.push_back({r.branch == Branch::one ? 1 : 2, r.n, *r.seed_mu, *r.mu});
  }
  std::sort(rows.begin(), rows.end(), [](const Row& l, const Row& r) {
    return l.branch != r.branch ? l.branch < r.branch : l.n < r.n;
  });
  for (const auto& row : rows) {
    Cell ratio;
    if (!ac.degenerate_leading) {
      const double mu = row.seed + 0.25 * seed_gap(problem, row.branch);
      try {
        ratio = char_eval(problem, mu * mu, char_options(config)).w / asym_char(problem, mu);
      } catch (const Error& e) {
        out.warnings.push_back(e.what());
      }
    }
    out.table.add_row({static_cast<long long>(row.n), std::to_string(row.branch), row.seed,
                       row.refined, row.n * std::abs(row.refined - row.seed), ratio});
  }
  return out;
}

CommandOutput cmd_scan(const ValidatedProblem& problem, const RunConfig& config) {
  const auto range = config.range.value_or(std::pair{0.0, 10.0});
  const auto lambdas = grid_lambdas(config, range, config.points.value_or(1001));
  ScanOptions opts;
  opts.char_opts = char_options(config);
  const auto result = scan_nodes(problem, lambdas, opts);
  CommandOutput out;
  out.warnings = result.warnings;
  for (double m : result.suspected_multiple) {
    out.warnings.push_back("suspected multiple root near lambda = " + format_real(m));
  }
  out.table.columns = {"lambda_lo", "lambda_hi", "w_lo", "w_hi"};
  for (const auto& b : result.brackets) out.table.add_row({b.lo, b.hi, b.w_lo, b.w_hi});
  return out;
}

int run(const RunConfig& config, std::ostream& err) {
  try {
    check_config(config);

    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!config.out.empty() && config.out != "-") {
      file.open(config.out, std::ios::binary);
      if (!file) throw Error(ErrorKind::Io, "cannot write '" + config.out + "'");
      out = &file;
    }

    if (config.command == "example") {
      const auto text = builtin_text(config.problem);
      if (!text) config_error("'" + config.problem + "' is not a built-in problem");
      *out << *text;
      return 0;
    }

    const auto problem = load_problem(config.problem, config.strict);
    for (const auto& w : problem.warnings()) err << "warning: " << w << '\n';

    CommandOutput result;
    if (config.command == "charfn") result = cmd_charfn(problem, config);
    else if (config.command == "eigenfunction") result = cmd_eigenfunction(problem, config);
    else if (config.command == "solve") result = cmd_solve(problem, config);
    else if (config.command == "asymptotics") result = cmd_asymptotics(problem, config);
    else result = cmd_scan(problem, config);

    for (const auto& w : result.warnings) err << "warning: " << w << '\n';
    if (config.format == Format::csv) write_csv(*out, result.table);
    else write_json(*out, result.table);
    out->flush();
    if (!*out) throw Error(ErrorKind::Io, "write failed");
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_numerical(e.kind()) ? 2 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace slt
