#include "slt/fundamental.hpp"

#include "slt/error.hpp"

namespace slt {

PhaseState FundamentalSolution::at_a() const {
  return kind == FundamentalKind::phi ? left.front() : left.back();
}

PhaseState FundamentalSolution::at_b() const {
  return kind == FundamentalKind::phi ? right.back() : right.front();
}

PhaseState left_initial_phi(const BoundaryCoefficients& bc, double lambda) {
  return {bc.alpha11 - lambda * bc.alpha11p, bc.alpha10 - lambda * bc.alpha10p};
}

PhaseState right_initial_psi(const BoundaryCoefficients& bc, double lambda) {
  return {bc.alpha21 + lambda * bc.alpha21p, bc.alpha20 + lambda * bc.alpha20p};
}

namespace {

// Solves [[m00, m01], [m10, m11]] x = r by Cramer's rule.
PhaseState solve2(double m00, double m01, double m10, double m11, double r0, double r1) {
  const double det = m00 * m11 - m01 * m10;
  return {(r0 * m11 - m01 * r1) / det, (m00 * r1 - r0 * m10) / det};
}

}  // namespace

PhaseState transmit_left_to_right(const TransmissionCoefficients& tm, PhaseState minus) {
  if (tm.minor(3, 4) == 0.0) {
    throw Error(ErrorKind::SingularTransmission, "Delta34 = 0: c+ block is singular");
  }
  const auto& t = tm.beta();
  const double r0 = -(t[0][0] * minus.y + t[0][1] * minus.dy);
  const double r1 = -(t[1][0] * minus.y + t[1][1] * minus.dy);
  return solve2(t[0][2], t[0][3], t[1][2], t[1][3], r0, r1);
}

PhaseState transmit_right_to_left(const TransmissionCoefficients& tm, PhaseState plus) {
  if (tm.minor(1, 2) == 0.0) {
    throw Error(ErrorKind::SingularTransmission, "Delta12 = 0: c- block is singular");
  }
  const auto& t = tm.beta();
  const double r0 = -(t[0][2] * plus.y + t[0][3] * plus.dy);
  const double r1 = -(t[1][2] * plus.y + t[1][3] * plus.dy);
  return solve2(t[0][0], t[0][1], t[1][0], t[1][1], r0, r1);
}

FundamentalSolution build_phi(const ValidatedProblem& problem, double lambda,
                              const IvpOptions& opts) {
  const auto& d = problem.domain();
  const auto& pc = problem.coeffs();
  FundamentalSolution out;
  out.kind = FundamentalKind::phi;
  out.lambda = lambda;
  out.left = ivp_solve(pc.p_minus, pc.q_minus, lambda, d.a, left_initial_phi(problem.bc(), lambda),
                       d.c, opts);
  out.jump_in = out.left.back();
  out.jump_out = transmit_left_to_right(problem.tm(), out.jump_in);
  out.right = ivp_solve(pc.p_plus, pc.q_plus, lambda, d.c, out.jump_out, d.b, opts);
  return out;
}

FundamentalSolution build_psi(const ValidatedProblem& problem, double lambda,
                              const IvpOptions& opts) {
  const auto& d = problem.domain();
  const auto& pc = problem.coeffs();
  FundamentalSolution out;
  out.kind = FundamentalKind::psi;
  out.lambda = lambda;
  out.right = ivp_solve(pc.p_plus, pc.q_plus, lambda, d.b, right_initial_psi(problem.bc(), lambda),
                        d.c, opts);
  out.jump_in = out.right.back();
  out.jump_out = transmit_right_to_left(problem.tm(), out.jump_in);
  out.left = ivp_solve(pc.p_minus, pc.q_minus, lambda, d.c, out.jump_out, d.a, opts);
  return out;
}

}  // namespace slt
