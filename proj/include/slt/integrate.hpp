#pragma once

#include <functional>
#include <span>
#include <vector>

#include "slt/exec.hpp"

namespace slt {

using Potential = std::function<double(double)>;

/// (y, y') at a point.
struct PhaseState {
  double y = 0.0;
  double dy = 0.0;
};

/// Dense solution of -p y'' + q y = lambda y on one piece.
///
/// Nodes are stored in integration order, so x may decrease. Between nodes the
/// value is the quintic Hermite interpolant built from (y, y', y'') at both
/// ends, y'' coming from the equation itself; its derivative gives y'. Both
/// reproduce the nodes exactly.
class Trajectory {
 public:
  Trajectory() = default;
  Trajectory(std::vector<double> xs, std::vector<PhaseState> states,
             std::vector<double> second_derivatives);

  double x0() const { return xs_.front(); }
  double x1() const { return xs_.back(); }
  PhaseState front() const { return states_.front(); }
  PhaseState back() const { return states_.back(); }

  std::span<const double> nodes() const { return xs_; }
  std::span<const PhaseState> states() const { return states_; }
  std::size_t size() const { return xs_.size(); }

  bool contains(double x) const;

  /// Dense output; x must lie in the closed piece.
  PhaseState at(double x) const;

 private:
  std::vector<double> xs_;
  std::vector<PhaseState> states_;
  std::vector<double> ddy_;
};

struct IvpOptions {
  double tol = 1e-10;       // mixed absolute + relative, endpoint target
  double min_step_frac = 1e-13;
  std::size_t max_steps = 2'000'000;
};

/// Adaptive Dormand-Prince 5(4) integration of -p y'' + q y = lambda y from
/// (x0, state0) to x1. Either direction is allowed.
Trajectory ivp_solve(double p, const Potential& q, double lambda, double x0, PhaseState state0,
                     double x1, const IvpOptions& opts = {});

inline Trajectory ivp_solve(double p, const Potential& q, double lambda, double x0,
                            PhaseState state0, double x1, double tol) {
  return ivp_solve(p, q, lambda, x0, state0, x1, IvpOptions{.tol = tol});
}

struct PicardOptions {
  int iterations = 30;
  std::size_t grid = 2001;
  Exec exec = Exec::parallel;
};

/// Fixed-point iteration of the Volterra equation obtained by variation of
/// parameters,
///
///   y(x) = y0 cos(k(x-x0)) + y0' sin(k(x-x0))/k + 1/(sqrt(p) mu) int_{x0}^{x} sin(k(x-z)) q(z) y(z) dz,
///
/// with k = mu/sqrt(p), mu = sqrt(lambda), and the differentiated form for y'.
/// The integrals use the composite trapezoid rule on a uniform grid. Needs
/// lambda > 0.
Trajectory picard_solution(double p, const Potential& q, double lambda, double x0, PhaseState base,
                           double x1, const PicardOptions& opts = {});

namespace detail {

/// One Picard sweep: out[i] = base[i] + h * trapezoid_j<=i K(i-j) f[j]. The
/// kernel only depends on i - j since the grid is uniform.
void picard_sweep_serial(std::span<const double> base, std::span<const double> kernel,
                         std::span<const double> f, double h, std::span<double> out);
void picard_sweep_parallel(std::span<const double> base, std::span<const double> kernel,
                           std::span<const double> f, double h, std::span<double> out);

}  // namespace detail

}  // namespace slt
