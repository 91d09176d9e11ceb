#include "slt/model.hpp"

#include <cmath>
#include <sstream>

#include "slt/error.hpp"

namespace slt {

TransmissionCoefficients::TransmissionCoefficients()
    : TransmissionCoefficients(Matrix{{{1.0, 0.0, -1.0, 0.0}, {0.0, 1.0, 0.0, -1.0}}}) {}

TransmissionCoefficients::TransmissionCoefficients(const Matrix& beta) : beta_(beta) {
  for (int k = 0; k < 4; ++k) {
    for (int j = 0; j < 4; ++j) {
      minors_[k][j] = beta_[0][k] * beta_[1][j] - beta_[0][j] * beta_[1][k];
    }
  }
}

double delta(const TransmissionCoefficients& tm, int k, int j) {
  if (k < 1 || j > 4 || k >= j) {
    std::ostringstream msg;
    msg << "minor indices must satisfy 1 <= k < j <= 4, got (" << k << ", " << j << ")";
    throw Error(ErrorKind::Index, msg.str());
  }
  return tm.minor(k, j);
}

std::string to_string(CaseTag tag) {
  switch (tag) {
    case CaseTag::I: return "CASE_I";
    case CaseTag::II: return "CASE_II";
    case CaseTag::III: return "CASE_III";
    case CaseTag::IV: return "CASE_IV";
  }
  return "?";
}

namespace {

bool all_zero(double a, double b, double c, double d) {
  return a == 0.0 && b == 0.0 && c == 0.0 && d == 0.0;
}

void check_potential(const Potential& q, double lo, double hi, const char* name) {
  if (!q) throw Error(ErrorKind::InvalidArgument, std::string(name) + " is empty");
  constexpr int kProbes = 9;
  for (int i = 0; i < kProbes; ++i) {
    const double x = lo + (hi - lo) * i / (kProbes - 1);
    if (!std::isfinite(q(x))) {
      std::ostringstream msg;
      msg << name << " is not finite at x = " << x;
      throw Error(ErrorKind::InvalidArgument, msg.str());
    }
  }
}

}  // namespace

ValidatedProblem validate(ProblemSpec spec) {
  const auto& d = spec.domain;
  if (!(std::isfinite(d.a) && std::isfinite(d.c) && std::isfinite(d.b)) || !(d.a < d.c) ||
      !(d.c < d.b)) {
    std::ostringstream msg;
    msg << "need a < c < b, got a=" << d.a << " c=" << d.c << " b=" << d.b;
    throw Error(ErrorKind::DomainOrder, msg.str());
  }
  const auto& pc = spec.coeffs;
  if (!(pc.p_minus > 0.0) || !(pc.p_plus > 0.0) || !std::isfinite(pc.p_minus) ||
      !std::isfinite(pc.p_plus)) {
    std::ostringstream msg;
    msg << "p must be positive on both pieces, got p-=" << pc.p_minus << " p+=" << pc.p_plus;
    throw Error(ErrorKind::NonpositiveP, msg.str());
  }
  check_potential(pc.q_minus, d.a, d.c, "q_minus");
  check_potential(pc.q_plus, d.c, d.b, "q_plus");

  const auto& bc = spec.bc;
  if (all_zero(bc.alpha10, bc.alpha11, bc.alpha10p, bc.alpha11p)) {
    throw Error(ErrorKind::DegenerateBoundary, "left boundary condition has all-zero coefficients");
  }
  if (all_zero(bc.alpha20, bc.alpha21, bc.alpha20p, bc.alpha21p)) {
    throw Error(ErrorKind::DegenerateBoundary, "right boundary condition has all-zero coefficients");
  }

  const double d12 = spec.tm.minor(1, 2);
  const double d34 = spec.tm.minor(3, 4);
  if (d12 == 0.0 || d34 == 0.0) {
    std::ostringstream msg;
    msg << "interface map is not invertible: Delta12=" << d12 << " Delta34=" << d34;
    throw Error(ErrorKind::SingularTransmission, msg.str());
  }

  std::vector<std::string> violations;
  auto sign_check = [&](double value, const char* name) {
    if (!(value > 0.0)) {
      std::ostringstream msg;
      msg << name << "=" << value << " is not positive";
      violations.push_back(msg.str());
    }
  };
  // theta only constrains a condition that actually depends on lambda
  if (bc.alpha10p != 0.0 || bc.alpha11p != 0.0) sign_check(bc.theta1(), "theta1");
  if (bc.alpha20p != 0.0 || bc.alpha21p != 0.0) sign_check(bc.theta2(), "theta2");
  sign_check(d12, "Delta12");
  sign_check(d34, "Delta34");

  if (spec.strict && !violations.empty()) {
    std::string joined;
    for (const auto& v : violations) joined += (joined.empty() ? "" : "; ") + v;
    throw Error(ErrorKind::SignAssumption, joined);
  }
  return ValidatedProblem(std::move(spec), std::move(violations));
}

AsymptoticCase classify(const BoundaryCoefficients& bc, const TransmissionCoefficients& tm,
                        double zero_tol) {
  const bool left = std::abs(bc.alpha11p) > zero_tol;
  const bool right = std::abs(bc.alpha21p) > zero_tol;
  AsymptoticCase out;
  if (right && left) {
    out.tag = CaseTag::I;
  } else if (right) {
    out.tag = CaseTag::II;
  } else if (left) {
    out.tag = CaseTag::III;
  } else {
    out.tag = CaseTag::IV;
  }
  out.degenerate_leading = std::abs(tm.minor(2, 4)) <= zero_tol;
  return out;
}

double boundary_left(const BoundaryCoefficients& bc, double lambda, PhaseState s) {
  return (bc.alpha10 - lambda * bc.alpha10p) * s.y - (bc.alpha11 - lambda * bc.alpha11p) * s.dy;
}

double boundary_right(const BoundaryCoefficients& bc, double lambda, PhaseState s) {
  return (bc.alpha20 + lambda * bc.alpha20p) * s.y - (bc.alpha21 + lambda * bc.alpha21p) * s.dy;
}

double boundary_left_scale(const BoundaryCoefficients& bc, double lambda, PhaseState s) {
  return (std::abs(bc.alpha10 - lambda * bc.alpha10p) + std::abs(bc.alpha11 - lambda * bc.alpha11p)) *
         (std::abs(s.y) + std::abs(s.dy));
}

double boundary_right_scale(const BoundaryCoefficients& bc, double lambda, PhaseState s) {
  return (std::abs(bc.alpha20 + lambda * bc.alpha20p) + std::abs(bc.alpha21 + lambda * bc.alpha21p)) *
         (std::abs(s.y) + std::abs(s.dy));
}

std::array<double, 2> transmission_residual(const TransmissionCoefficients& tm, PhaseState minus,
                                            PhaseState plus) {
  const auto& t = tm.beta();
  std::array<double, 2> r{};
  for (int j = 0; j < 2; ++j) {
    r[j] = t[j][0] * minus.y + t[j][1] * minus.dy + t[j][2] * plus.y + t[j][3] * plus.dy;
  }
  return r;
}

std::array<double, 2> transmission_scale(const TransmissionCoefficients& tm, PhaseState minus,
                                         PhaseState plus) {
  const auto& t = tm.beta();
  std::array<double, 2> r{};
  for (int j = 0; j < 2; ++j) {
    r[j] = (std::abs(t[j][0]) + std::abs(t[j][1])) * (std::abs(minus.y) + std::abs(minus.dy)) +
           (std::abs(t[j][2]) + std::abs(t[j][3])) * (std::abs(plus.y) + std::abs(plus.dy));
  }
  return r;
}

}  // namespace slt
