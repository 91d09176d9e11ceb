#pragma once

#include "slt/integrate.hpp"
#include "slt/model.hpp"

namespace slt {

enum class FundamentalKind { phi, psi };

/// phi is launched at a and satisfies the left boundary condition; psi is
/// launched at b and satisfies the right one. Both satisfy the interface
/// conditions by construction.
struct FundamentalSolution {
  FundamentalKind kind = FundamentalKind::phi;
  double lambda = 0.0;
  Trajectory left;   // on [a, c]
  Trajectory right;  // on [c, b]
  PhaseState jump_in;   // launch side of c
  PhaseState jump_out;  // continued side of c

  PhaseState at_c_minus() const { return kind == FundamentalKind::phi ? jump_in : jump_out; }
  PhaseState at_c_plus() const { return kind == FundamentalKind::phi ? jump_out : jump_in; }
  PhaseState at_a() const;
  PhaseState at_b() const;
};

/// (a11 - lambda a11', a10 - lambda a10')
PhaseState left_initial_phi(const BoundaryCoefficients& bc, double lambda);
/// (a21 + lambda a21', a20 + lambda a20')
PhaseState right_initial_psi(const BoundaryCoefficients& bc, double lambda);

/// Solves both interface rows for (y(c+), y'(c+)) given (y(c-), y'(c-)).
PhaseState transmit_left_to_right(const TransmissionCoefficients& tm, PhaseState minus);
/// Solves both interface rows for (y(c-), y'(c-)) given (y(c+), y'(c+)).
PhaseState transmit_right_to_left(const TransmissionCoefficients& tm, PhaseState plus);

FundamentalSolution build_phi(const ValidatedProblem& problem, double lambda,
                              const IvpOptions& opts = {});
FundamentalSolution build_psi(const ValidatedProblem& problem, double lambda,
                              const IvpOptions& opts = {});

}  // namespace slt
