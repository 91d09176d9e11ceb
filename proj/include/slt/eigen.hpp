#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "slt/charfn.hpp"
#include "slt/exec.hpp"

namespace slt {

/// A lambda interval over which w changes sign.
struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
  double w_lo = 0.0;
  double w_hi = 0.0;
};

struct ScanOptions {
  CharOptions char_opts;
  Exec exec = Exec::parallel;
  /// |w| <= zero_rel * term_scale makes a node count as zero.
  double zero_rel = 1e-13;
  /// A same-sign local minimum with |w| <= multiple_rel * term_scale is
  /// reported as a suspected multiple root.
  double multiple_rel = 1e-6;
};

struct ScanResult {
  std::vector<Bracket> brackets;
  std::vector<double> suspected_multiple;  // lambda of the flagged node
  std::vector<std::string> warnings;
};

/// Uniform lambda grid with `steps` intervals.
ScanResult scan(const ValidatedProblem& problem, double lambda_lo, double lambda_hi, int steps,
                const ScanOptions& opts = {});

/// Sign-change extraction on arbitrary ascending nodes.
ScanResult scan_nodes(const ValidatedProblem& problem, std::span<const double> lambdas,
                      const ScanOptions& opts = {});

/// Same extraction on precomputed nodes.
ScanResult brackets_from_nodes(std::span<const CharNode> nodes, const ScanOptions& opts = {});

enum class Branch { one, two, unmatched };

std::string to_string(Branch branch);

struct EigenvalueRecord {
  int n = 0;  // seed index, 0 when unmatched
  Branch branch = Branch::unmatched;
  double lambda = 0.0;
  std::optional<double> mu;       // sqrt(lambda) for lambda >= 0
  std::optional<double> seed_mu;
  Bracket bracket;
  bool converged = true;
  int iterations = 0;
  double w_residual = 0.0;  // |w(lambda)|
  double w_scale = 0.0;     // term scale of w at lambda
  /// Boundary functionals on phi, each divided by the size of its terms.
  std::array<double, 2> bc_residuals{};
  /// Interface rows on phi, each divided by the size of its terms.
  std::array<double, 2> tm_residuals{};
  /// sup|psi - k phi| / sup|k phi| over both pieces with least-squares k.
  double proportionality_defect = 0.0;
};

struct RefineOptions {
  CharOptions char_opts;
  double rel_tol = 1e-12;  // bracket width target, relative to max(1, |lambda|)
  int max_iterations = 200;
  int diagnostic_points = 101;  // per piece, for the proportionality defect
};

/// Bracketing refinement of a sign change of w, followed by the residual
/// diagnostics at the root. Returns an unconverged record if the iteration
/// budget runs out.
EigenvalueRecord refine(const ValidatedProblem& problem, const Bracket& bracket,
                        const RefineOptions& opts = {});

struct RefineBatch {
  std::vector<EigenvalueRecord> records;  // in bracket order, failures skipped
  std::vector<std::string> warnings;
};

/// refine() over independent brackets. Results do not depend on `exec`.
RefineBatch refine_all(const ValidatedProblem& problem, std::span<const Bracket> brackets,
                       const RefineOptions& opts = {}, Exec exec = Exec::parallel);

struct FindOptions {
  CharOptions char_opts;
  Exec exec = Exec::parallel;
  /// Defaults to -(10 max|q| + 100).
  std::optional<double> lambda_floor;
  int nodes_per_gap = 8;   // dense scan density in mu
  int window_nodes = 33;   // nodes per seed window
  double max_mu = 1e4;     // cap for the degenerate-case upward search
};

struct Spectrum {
  std::vector<EigenvalueRecord> records;  // ascending lambda
  std::vector<std::string> warnings;
  std::vector<double> suspected_multiple;
  bool seeded = false;  // false when the seeds were degenerate and only the dense scan ran
};

double default_lambda_floor(const ValidatedProblem& problem);

/// Eigenvalues near the seeds of both branches for n <= n_max, plus every
/// eigenvalue below them down to the lambda floor. When Delta24 = 0 the seeds
/// carry no information; the search then scans upward from the floor and
/// returns the n_max lowest eigenvalues.
Spectrum find_eigenvalues(const ValidatedProblem& problem, int n_max, double window_pad = 0.5,
                          const FindOptions& opts = {});

/// Labels records with the nearest seed (within half a lattice gap) of either
/// branch, closest pairs first. Records that find no seed become unmatched.
void match_to_seeds(const ValidatedProblem& problem, std::span<EigenvalueRecord> records,
                    int n_max);

enum class Side { minus, plus };

struct EigenSample {
  double x = 0.0;
  Side side = Side::minus;
  double y = 0.0;
  double dy = 0.0;
};

/// phi at the record's lambda on `grid` points per piece (both one-sided values
/// at c included), scaled to max |y| = 1 with the first nonzero sample positive.
std::vector<EigenSample> eigenfunction(const ValidatedProblem& problem,
                                       const EigenvalueRecord& record, int grid = 101,
                                       double tol = 1e-10);

/// Unnormalized phi on `grid` points per piece.
std::vector<EigenSample> sample_phi(const ValidatedProblem& problem, double lambda, int grid,
                                    double tol = 1e-10);

}  // namespace slt
