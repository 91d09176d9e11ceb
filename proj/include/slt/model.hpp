#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "slt/integrate.hpp"

namespace slt {

/// Two abutting pieces [a, c] and [c, b].
struct ProblemDomain {
  double a = 0.0;
  double c = 0.5;
  double b = 1.0;

  double left_length() const { return c - a; }
  double right_length() const { return b - c; }
};

/// p is piecewise constant; q is evaluated per piece on the closed interval,
/// using the one-sided limit at c.
struct PieceCoefficients {
  double p_minus = 1.0;
  double p_plus = 1.0;
  Potential q_minus = [](double) { return 0.0; };
  Potential q_plus = [](double) { return 0.0; };
};

/// Coefficients of the two eigenparameter-dependent boundary conditions
///
///   V1(y) = a10 y(a) - a11 y'(a) - lambda (a10' y(a) - a11' y'(a)) = 0
///   V2(y) = a20 y(b) - a21 y'(b) + lambda (a20' y(b) - a21' y'(b)) = 0
struct BoundaryCoefficients {
  double alpha10 = 0.0;
  double alpha11 = 0.0;
  double alpha10p = 0.0;
  double alpha11p = 0.0;
  double alpha20 = 0.0;
  double alpha21 = 0.0;
  double alpha20p = 0.0;
  double alpha21p = 0.0;

  /// det [[a11, a10], [a11', a10']]
  double theta1() const { return alpha11 * alpha10p - alpha10 * alpha11p; }
  /// det [[a21, a20], [a21', a20']]
  double theta2() const { return alpha21 * alpha20p - alpha20 * alpha21p; }
};

/// The 2x4 transmission matrix. Row j is (beta-_j0, beta-_j1, beta+_j0, beta+_j1),
/// so row j of the interface conditions reads
///   T[j][0] y(c-) + T[j][1] y'(c-) + T[j][2] y(c+) + T[j][3] y'(c+) = 0.
class TransmissionCoefficients {
 public:
  using Matrix = std::array<std::array<double, 4>, 2>;

  TransmissionCoefficients();
  explicit TransmissionCoefficients(const Matrix& beta);

  const Matrix& beta() const { return beta_; }

  /// Minor of columns k and j (1-based), beta_1k beta_2j - beta_1j beta_2k.
  /// Unchecked; use slt::delta for the validated entry point.
  double minor(int k, int j) const { return minors_[k - 1][j - 1]; }

 private:
  Matrix beta_{};
  std::array<std::array<double, 4>, 4> minors_{};
};

struct ProblemSpec {
  ProblemDomain domain;
  PieceCoefficients coeffs;
  BoundaryCoefficients bc;
  TransmissionCoefficients tm;
  bool strict = false;
};

/// A problem that passed validate(). Immutable.
class ValidatedProblem {
 public:
  const ProblemSpec& spec() const { return spec_; }
  const ProblemDomain& domain() const { return spec_.domain; }
  const PieceCoefficients& coeffs() const { return spec_.coeffs; }
  const BoundaryCoefficients& bc() const { return spec_.bc; }
  const TransmissionCoefficients& tm() const { return spec_.tm; }
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  friend ValidatedProblem validate(ProblemSpec spec);
  ValidatedProblem(ProblemSpec spec, std::vector<std::string> warnings)
      : spec_(std::move(spec)), warnings_(std::move(warnings)) {}

  ProblemSpec spec_;
  std::vector<std::string> warnings_;
};

/// Checks ordering, p > 0, finite q, nonzero BC rows and Delta12, Delta34 != 0.
/// Sign assumptions (theta1, theta2, Delta12, Delta34 > 0) are errors only in
/// strict mode and warnings otherwise. theta_j is only checked when condition j
/// depends on lambda.
ValidatedProblem validate(ProblemSpec spec);

/// Checked minor; requires 1 <= k < j <= 4.
double delta(const TransmissionCoefficients& tm, int k, int j);

enum class CaseTag { I, II, III, IV };

std::string to_string(CaseTag tag);

struct AsymptoticCase {
  CaseTag tag = CaseTag::I;
  bool degenerate_leading = false;  // |Delta24| <= zero_tol

  bool alpha11p_nonzero() const { return tag == CaseTag::I || tag == CaseTag::III; }
  bool alpha21p_nonzero() const { return tag == CaseTag::I || tag == CaseTag::II; }
};

AsymptoticCase classify(const BoundaryCoefficients& bc, const TransmissionCoefficients& tm,
                        double zero_tol = 0.0);

// Linear functionals of the problem, evaluated on phase states.

double boundary_left(const BoundaryCoefficients& bc, double lambda, PhaseState at_a);
double boundary_right(const BoundaryCoefficients& bc, double lambda, PhaseState at_b);

/// (row coefficients) x (|y| + |y'|), l1 norms; turns the residuals into
/// relative quantities without cancelling at a root.
double boundary_left_scale(const BoundaryCoefficients& bc, double lambda, PhaseState at_a);
double boundary_right_scale(const BoundaryCoefficients& bc, double lambda, PhaseState at_b);

/// Both rows of the interface conditions.
std::array<double, 2> transmission_residual(const TransmissionCoefficients& tm,
                                            PhaseState minus, PhaseState plus);
std::array<double, 2> transmission_scale(const TransmissionCoefficients& tm,
                                         PhaseState minus, PhaseState plus);

}  // namespace slt
