#include "slt/asymptotic.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "slt/error.hpp"

namespace slt {

namespace {

constexpr double kPi = std::numbers::pi;

// Trig factors at a seed are exact zeros in theory; anything this small is one.
constexpr double kTrigZero = 1e-9;

// n + offset multiplies sqrt(p) pi / L in every seed formula.
double seed_offset(CaseTag tag, int branch) {
  switch (tag) {
    case CaseTag::I: return branch == 1 ? -3.0 : 0.0;
    case CaseTag::II: return branch == 1 ? 0.5 : -2.0;
    case CaseTag::III: return branch == 1 ? -2.0 : 0.5;
    case CaseTag::IV: return branch == 1 ? -1.5 : 0.5;
  }
  return 0.0;
}

void check_branch(int branch) {
  if (branch != 1 && branch != 2) {
    throw Error(ErrorKind::InvalidArgument, "branch must be 1 or 2");
  }
}

[[noreturn]] void degenerate(const std::string& what) {
  throw Error(ErrorKind::DegenerateLeading, what);
}

// d^k/dx^k cos(w (x - x0)) and sin(w (x - x0))
double dcos(int k, double w, double arg) { return k == 0 ? std::cos(arg) : -w * std::sin(arg); }
double dsin(int k, double w, double arg) { return k == 0 ? std::sin(arg) : w * std::cos(arg); }

}  // namespace

double seed_gap(const ValidatedProblem& problem, int branch) {
  check_branch(branch);
  const auto& pc = problem.coeffs();
  const auto& d = problem.domain();
  return branch == 1 ? std::sqrt(pc.p_minus) * kPi / d.left_length()
                     : std::sqrt(pc.p_plus) * kPi / d.right_length();
}

int seed_min_index(const ValidatedProblem& problem, int branch) {
  check_branch(branch);
  const double offset = seed_offset(classify(problem.bc(), problem.tm()).tag, branch);
  int n = 1;
  while (n + offset <= 0.0) ++n;
  return n;
}

AsymptoticSeed asym_eigenvalue_seed(const ValidatedProblem& problem, int n, int branch) {
  check_branch(branch);
  const int n_min = seed_min_index(problem, branch);
  if (n < n_min) {
    std::ostringstream msg;
    msg << "seed index " << n << " below minimum " << n_min << " for branch " << branch;
    throw Error(ErrorKind::IndexTooSmall, msg.str());
  }
  AsymptoticSeed seed;
  seed.n = n;
  seed.branch = branch;
  seed.asym_case = classify(problem.bc(), problem.tm());
  seed.mu = seed_gap(problem, branch) * (n + seed_offset(seed.asym_case.tag, branch));
  seed.lambda = seed.mu * seed.mu;
  return seed;
}

double asym_char(const ValidatedProblem& problem, double mu) {
  const auto ac = classify(problem.bc(), problem.tm());
  if (ac.degenerate_leading) degenerate("Delta24 = 0: every leading term of w vanishes");

  const auto& bc = problem.bc();
  const auto& pc = problem.coeffs();
  const auto& d = problem.domain();
  const double d24 = problem.tm().minor(2, 4);
  const double sm = std::sqrt(pc.p_minus), sp = std::sqrt(pc.p_plus);
  const double left = mu * d.left_length() / sm;
  const double right = mu * d.right_length() / sp;

  double coef = 0.0, value = 0.0;
  switch (ac.tag) {
    case CaseTag::I:
      coef = -d24 * bc.alpha11p * bc.alpha21p / (sm * sp);
      value = coef * std::pow(mu, 6) * std::sin(left) * std::sin(right);
      break;
    case CaseTag::II:
      // sign follows from the phi+ and psi+ leading terms
      coef = d24 * bc.alpha10p * bc.alpha21p / sp;
      value = coef * std::pow(mu, 5) * std::cos(left) * std::sin(right);
      break;
    case CaseTag::III:
      coef = -d24 * bc.alpha11p * bc.alpha20p / sm;
      value = coef * std::pow(mu, 5) * std::sin(left) * std::cos(right);
      break;
    case CaseTag::IV:
      coef = d24 * bc.alpha10p * bc.alpha20p;
      value = coef * std::pow(mu, 4) * std::cos(left) * std::cos(right);
      break;
  }
  if (coef == 0.0) degenerate("leading coefficient of w is zero for " + to_string(ac.tag));
  return value;
}

double asym_fundamental(const ValidatedProblem& problem, FundamentalPiece which, int k, double x,
                        double mu) {
  if (k != 0 && k != 1) throw Error(ErrorKind::InvalidArgument, "k must be 0 or 1");
  if (!(mu > 0.0)) throw Error(ErrorKind::InvalidArgument, "asym_fundamental needs mu > 0");
  const auto& d = problem.domain();
  const bool on_left = which == FundamentalPiece::phi_minus || which == FundamentalPiece::psi_minus;
  if (on_left ? (x < d.a || x > d.c) : (x < d.c || x > d.b)) {
    std::ostringstream msg;
    msg << "x = " << x << " is not on the " << (on_left ? "left" : "right") << " piece";
    throw Error(ErrorKind::PieceMismatch, msg.str());
  }

  const auto& bc = problem.bc();
  const auto& pc = problem.coeffs();
  const auto& tm = problem.tm();
  const double sm = std::sqrt(pc.p_minus), sp = std::sqrt(pc.p_plus);
  const double wm = mu / sm, wp = mu / sp;
  const double d24 = tm.minor(2, 4);
  const double mu2 = mu * mu, mu3 = mu2 * mu;

  switch (which) {
    case FundamentalPiece::phi_minus:
      if (bc.alpha11p != 0.0) return -bc.alpha11p * mu2 * dcos(k, wm, wm * (x - d.a));
      if (bc.alpha10p == 0.0) degenerate("phi- leading term needs a11' or a10' nonzero");
      return -bc.alpha10p * sm * mu * dsin(k, wm, wm * (x - d.a));
    case FundamentalPiece::phi_plus: {
      const double ratio = d24 / tm.minor(3, 4);
      double amp = 0.0;
      if (bc.alpha11p != 0.0) {
        amp = -ratio * bc.alpha11p / sm * mu3 * std::sin(wm * d.left_length());
      } else {
        amp = ratio * bc.alpha10p * mu2 * std::cos(wm * d.left_length());
      }
      if (d24 == 0.0 || (bc.alpha11p == 0.0 && bc.alpha10p == 0.0)) {
        degenerate("phi+ leading coefficient vanishes");
      }
      return amp * dcos(k, wp, wp * (x - d.c));
    }
    case FundamentalPiece::psi_plus:
      // cos(wp (b - x)) has derivative +wp sin(wp (b - x))
      if (bc.alpha21p != 0.0) {
        return bc.alpha21p * mu2 * (k == 0 ? std::cos(wp * (d.b - x)) : wp * std::sin(wp * (d.b - x)));
      }
      if (bc.alpha20p == 0.0) degenerate("psi+ leading term needs a21' or a20' nonzero");
      return -bc.alpha20p * sp * mu *
             (k == 0 ? std::sin(wp * (d.b - x)) : -wp * std::cos(wp * (d.b - x)));
    case FundamentalPiece::psi_minus: {
      const double ratio = d24 / tm.minor(1, 2);
      double amp = 0.0;
      if (bc.alpha21p != 0.0) {
        amp = ratio * bc.alpha21p / sp * mu3 * std::sin(wp * d.right_length());
      } else {
        amp = ratio * bc.alpha20p * mu2 * std::cos(wp * d.right_length());
      }
      if (d24 == 0.0 || (bc.alpha21p == 0.0 && bc.alpha20p == 0.0)) {
        degenerate("psi- leading coefficient vanishes");
      }
      return amp * dcos(k, wm, wm * (x - d.c));
    }
  }
  return 0.0;
}

double asym_eigenfunction(const ValidatedProblem& problem, int n, int branch, double x) {
  const auto seed = asym_eigenvalue_seed(problem, n, branch);
  const auto& d = problem.domain();
  if (x < d.a || x > d.b) {
    throw Error(ErrorKind::PieceMismatch, "x outside [a, b]");
  }
  if (x <= d.c) return asym_fundamental(problem, FundamentalPiece::phi_minus, 0, x, seed.mu);

  // on the continued piece the amplitude carries a trig factor of the seed
  const auto& bc = problem.bc();
  const double arg = seed.mu * d.left_length() / std::sqrt(problem.coeffs().p_minus);
  const double factor = bc.alpha11p != 0.0 ? std::sin(arg) : std::cos(arg);
  if (std::abs(factor) <= kTrigZero) {
    std::ostringstream msg;
    msg << "right-piece leading coefficient of the seed-" << n << " branch-" << branch
        << " eigenfunction vanishes (trig factor " << factor << ")";
    degenerate(msg.str());
  }
  return asym_fundamental(problem, FundamentalPiece::phi_plus, 0, x, seed.mu);
}

}  // namespace slt
