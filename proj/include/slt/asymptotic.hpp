#pragma once

#include "slt/model.hpp"

namespace slt {

/// Leading-order eigenvalue estimate mu_{n,branch}.
struct AsymptoticSeed {
  int n = 0;
  int branch = 1;  // 1: left-piece lattice, 2: right-piece lattice
  double mu = 0.0;
  double lambda = 0.0;
  AsymptoticCase asym_case;
};

/// Spacing of a branch lattice, sqrt(p) pi / length of the piece.
double seed_gap(const ValidatedProblem& problem, int branch);

/// Smallest n with a positive seed for the problem's case.
int seed_min_index(const ValidatedProblem& problem, int branch);

/// Throws IndexTooSmall below seed_min_index.
AsymptoticSeed asym_eigenvalue_seed(const ValidatedProblem& problem, int n, int branch);

/// Leading term of w(mu) for large real mu. Throws DegenerateLeading when the
/// leading coefficient vanishes (in particular Delta24 = 0).
double asym_char(const ValidatedProblem& problem, double mu);

enum class FundamentalPiece { phi_minus, phi_plus, psi_minus, psi_plus };

/// Leading term of d^k/dx^k of one piece of phi or psi, k in {0, 1}.
double asym_fundamental(const ValidatedProblem& problem, FundamentalPiece which, int k, double x,
                        double mu);

/// Leading shape of the eigenfunction phi at the seed mu_{n,branch}, on the
/// piece containing x (x == c counts as the left piece). Throws
/// DegenerateLeading when the displayed coefficient is zero.
double asym_eigenfunction(const ValidatedProblem& problem, int n, int branch, double x);

}  // namespace slt
