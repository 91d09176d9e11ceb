#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "slt/exec.hpp"
#include "slt/fundamental.hpp"

namespace slt {

struct CharOptions {
  double tol = 1e-10;              // integrator tolerance
  double consistency_tol = 1e-6;   // two-sided defect allowed, relative to term_scale
};

/// The characteristic function at one lambda.
///
/// w_minus = phi psi' - phi' psi on [a, c] (taken at a), w_plus the same on
/// [c, b] (taken at b). Under the column layout of T the two are tied by
/// Delta12 w_minus = Delta34 w_plus, and that common value is w.
struct CharSample {
  double lambda = 0.0;
  double w_minus = 0.0;
  double w_plus = 0.0;
  double w = 0.0;
  /// |Delta12 w_minus - Delta34 w_plus| / max(|Delta12 w_minus|, |Delta34 w_plus|, floor)
  double consistency = 0.0;
  /// Delta times (|y|+|y'|) of phi times the same for psi, larger of the two
  /// sides. Bounds |w| and stays away from zero at roots.
  double term_scale = 0.0;
};

inline constexpr double kConsistencyFloor = 1e-300;

/// Throws ErrorKind::Consistency if the two-sided defect exceeds
/// consistency_tol * term_scale.
CharSample char_eval(const ValidatedProblem& problem, double lambda, const CharOptions& opts = {});

/// w from the left boundary values alone: phi(a), phi'(a) come straight from
/// the launch data and only psi is integrated.
double char_at_a(const ValidatedProblem& problem, const FundamentalSolution& psi);
double char_at_a(const ValidatedProblem& problem, double lambda, const CharOptions& opts = {});

enum class Piece { left, right };

/// max - min of phi psi' - phi' psi over `points` equispaced x in one piece.
double wronskian_spread(const FundamentalSolution& phi, const FundamentalSolution& psi,
                        const ProblemDomain& domain, Piece piece, int points = 11);

struct CharNode {
  double lambda = 0.0;
  std::optional<CharSample> sample;
  std::string error;  // set when the node failed
};

/// Evaluates w at every lambda. Failures are recorded per node instead of
/// thrown. Results do not depend on `exec`.
std::vector<CharNode> char_grid(const ValidatedProblem& problem, std::span<const double> lambdas,
                                const CharOptions& opts = {}, Exec exec = Exec::parallel);

}  // namespace slt
