#include "slt/charfn.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "slt/error.hpp"

namespace slt {

namespace {

double wronskian(PhaseState u, PhaseState v) { return u.y * v.dy - u.dy * v.y; }
// bounds |W(u, v)| without cancelling when u and v are nearly parallel
double wronskian_terms(PhaseState u, PhaseState v) {
  return (std::abs(u.y) + std::abs(u.dy)) * (std::abs(v.y) + std::abs(v.dy));
}

CharNode eval_node(const ValidatedProblem& problem, double lambda, const CharOptions& opts) {
  CharNode node;
  node.lambda = lambda;
  try {
    node.sample = char_eval(problem, lambda, opts);
  } catch (const std::exception& e) {
    node.error = e.what();
  }
  return node;
}

}  // namespace

CharSample char_eval(const ValidatedProblem& problem, double lambda, const CharOptions& opts) {
  const IvpOptions ivp{.tol = opts.tol};
  const auto phi = build_phi(problem, lambda, ivp);
  const auto psi = build_psi(problem, lambda, ivp);

  const double d12 = problem.tm().minor(1, 2);
  const double d34 = problem.tm().minor(3, 4);

  CharSample s;
  s.lambda = lambda;
  s.w_minus = wronskian(phi.at_a(), psi.at_a());
  s.w_plus = wronskian(phi.at_b(), psi.at_b());
  const double lhs = d12 * s.w_minus;
  const double rhs = d34 * s.w_plus;
  s.w = lhs;
  const double defect = std::abs(lhs - rhs);
  s.consistency = defect / std::max({std::abs(lhs), std::abs(rhs), kConsistencyFloor});
  s.term_scale = std::max(std::abs(d12) * wronskian_terms(phi.at_a(), psi.at_a()),
                          std::abs(d34) * wronskian_terms(phi.at_b(), psi.at_b()));
  if (defect > opts.consistency_tol * std::max(s.term_scale, kConsistencyFloor)) {
    std::ostringstream msg;
    msg << "Delta12 w- = " << lhs << " and Delta34 w+ = " << rhs
        << " disagree at lambda = " << lambda;
    throw Error(ErrorKind::Consistency, msg.str());
  }
  return s;
}

double char_at_a(const ValidatedProblem& problem, const FundamentalSolution& psi) {
  const PhaseState phi_a = left_initial_phi(problem.bc(), psi.lambda);
  const PhaseState psi_a = psi.at_a();
  return problem.tm().minor(1, 2) * (phi_a.y * psi_a.dy - phi_a.dy * psi_a.y);
}

double char_at_a(const ValidatedProblem& problem, double lambda, const CharOptions& opts) {
  return char_at_a(problem, build_psi(problem, lambda, IvpOptions{.tol = opts.tol}));
}

double wronskian_spread(const FundamentalSolution& phi, const FundamentalSolution& psi,
                        const ProblemDomain& domain, Piece piece, int points) {
  const double lo = piece == Piece::left ? domain.a : domain.c;
  const double hi = piece == Piece::left ? domain.c : domain.b;
  const Trajectory& u = piece == Piece::left ? phi.left : phi.right;
  const Trajectory& v = piece == Piece::left ? psi.left : psi.right;
  double wmin = INFINITY, wmax = -INFINITY;
  for (int i = 0; i < points; ++i) {
    const double x = i + 1 == points ? hi : lo + (hi - lo) * i / (points - 1);
    const double w = wronskian(u.at(x), v.at(x));
    wmin = std::min(wmin, w);
    wmax = std::max(wmax, w);
  }
  return wmax - wmin;
}

std::vector<CharNode> char_grid(const ValidatedProblem& problem, std::span<const double> lambdas,
                                const CharOptions& opts, Exec exec) {
  std::vector<CharNode> out(lambdas.size());
  const auto n = static_cast<std::ptrdiff_t>(lambdas.size());
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = eval_node(problem, lambdas[i], opts);
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = eval_node(problem, lambdas[i], opts);
  }
  return out;
}

}  // namespace slt
