#include "slt/integrate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "slt/error.hpp"

namespace slt {

Trajectory::Trajectory(std::vector<double> xs, std::vector<PhaseState> states,
                       std::vector<double> second_derivatives)
    : xs_(std::move(xs)), states_(std::move(states)), ddy_(std::move(second_derivatives)) {
  if (xs_.size() < 2 || xs_.size() != states_.size() || xs_.size() != ddy_.size()) {
    throw Error(ErrorKind::InvalidArgument, "trajectory needs >= 2 consistent samples");
  }
  const bool forward = xs_.back() > xs_.front();
  for (std::size_t i = 1; i < xs_.size(); ++i) {
    if (forward ? !(xs_[i] > xs_[i - 1]) : !(xs_[i] < xs_[i - 1])) {
      throw Error(ErrorKind::InvalidArgument, "trajectory nodes must be strictly monotone");
    }
  }
}

bool Trajectory::contains(double x) const {
  const double lo = std::min(xs_.front(), xs_.back());
  const double hi = std::max(xs_.front(), xs_.back());
  return x >= lo && x <= hi;
}

PhaseState Trajectory::at(double x) const {
  if (!contains(x)) {
    std::ostringstream msg;
    msg << "x = " << x << " outside trajectory [" << xs_.front() << ", " << xs_.back() << "]";
    throw Error(ErrorKind::PieceMismatch, msg.str());
  }
  const bool forward = xs_.back() > xs_.front();
  // first node strictly past x in integration order
  auto it = forward ? std::upper_bound(xs_.begin(), xs_.end(), x)
                    : std::upper_bound(xs_.begin(), xs_.end(), x, std::greater<>{});
  std::size_t i1 = static_cast<std::size_t>(it - xs_.begin());
  if (i1 == 0) i1 = 1;
  if (i1 >= xs_.size()) return states_.back();
  const std::size_t i0 = i1 - 1;
  if (x == xs_[i0]) return states_[i0];

  const double h = xs_[i1] - xs_[i0];
  const double t = (x - xs_[i0]) / h;
  const double t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t;

  const double h0 = 1.0 - 10.0 * t3 + 15.0 * t4 - 6.0 * t5;
  const double h1 = t - 6.0 * t3 + 8.0 * t4 - 3.0 * t5;
  const double h2 = 0.5 * (t2 - 3.0 * t3 + 3.0 * t4 - t5);
  const double h3 = 0.5 * (t3 - 2.0 * t4 + t5);
  const double h4 = -4.0 * t3 + 7.0 * t4 - 3.0 * t5;
  const double h5 = 10.0 * t3 - 15.0 * t4 + 6.0 * t5;

  const double d0 = -30.0 * t2 + 60.0 * t3 - 30.0 * t4;
  const double d1 = 1.0 - 18.0 * t2 + 32.0 * t3 - 15.0 * t4;
  const double d2 = 0.5 * (2.0 * t - 9.0 * t2 + 12.0 * t3 - 5.0 * t4);
  const double d3 = 0.5 * (3.0 * t2 - 8.0 * t3 + 5.0 * t4);
  const double d4 = -12.0 * t2 + 28.0 * t3 - 15.0 * t4;
  const double d5 = 30.0 * t2 - 60.0 * t3 + 30.0 * t4;

  const PhaseState& a = states_[i0];
  const PhaseState& b = states_[i1];
  const double hh = h * h;
  const double y = a.y * h0 + h * a.dy * h1 + hh * ddy_[i0] * h2 + hh * ddy_[i1] * h3 +
                   h * b.dy * h4 + b.y * h5;
  const double dy = (a.y * d0 + h * a.dy * d1 + hh * ddy_[i0] * d2 + hh * ddy_[i1] * d3 +
                     h * b.dy * d4 + b.y * d5) / h;
  return {y, dy};
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                 a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                 b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

using Vec = std::array<double, 2>;

struct Rhs {
  double p;
  const Potential& q;
  double lambda;

  Vec operator()(double x, const Vec& u) const { return {u[1], (q(x) - lambda) * u[0] / p}; }
};

Vec axpy(const Vec& u, double h, std::initializer_list<std::pair<double, const Vec*>> terms) {
  Vec out = u;
  for (const auto& [coef, k] : terms) {
    out[0] += h * coef * (*k)[0];
    out[1] += h * coef * (*k)[1];
  }
  return out;
}

// fraction of tol granted to each step so the accumulated endpoint error
// stays within a small multiple of tol
constexpr double kLocalShare = 0.125;

bool finite(const Vec& u) { return std::isfinite(u[0]) && std::isfinite(u[1]); }

}  // namespace

Trajectory ivp_solve(double p, const Potential& q, double lambda, double x0, PhaseState state0,
                     double x1, const IvpOptions& opts) {
  if (!(x0 != x1)) throw Error(ErrorKind::InvalidArgument, "ivp_solve needs x0 != x1");
  if (!(opts.tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "ivp_solve needs tol > 0");
  if (!(p > 0.0)) throw Error(ErrorKind::NonpositiveP, "ivp_solve needs p > 0");

  const Rhs f{p, q, lambda};
  const double span = x1 - x0;
  const double dir = span > 0.0 ? 1.0 : -1.0;
  const double min_step = opts.min_step_frac * std::abs(span);

  Vec u{state0.y, state0.dy};
  if (!finite(u)) throw Error(ErrorKind::NonFiniteState, "non-finite initial state");
  double x = x0;
  Vec k1 = f(x, u);

  std::vector<double> xs{x};
  std::vector<PhaseState> states{state0};
  std::vector<double> ddy{k1[1]};

  // local wavenumber sets the first step; the controller takes it from there
  const double freq = std::sqrt(std::abs(lambda - q(x0)) / p) + 1.0 / std::abs(span);
  double h = dir * std::min(std::abs(span), 0.05 / freq);

  for (std::size_t step = 0;; ++step) {
    if (step >= opts.max_steps) {
      throw Error(ErrorKind::StepSizeUnderflow, "ivp_solve exceeded max_steps");
    }
    bool last = false;
    if (dir * (x + h - x1) >= 0.0) {
      h = x1 - x;
      last = true;
    }

    const Vec k2 = f(x + c2 * h, axpy(u, h, {{a21, &k1}}));
    const Vec k3 = f(x + c3 * h, axpy(u, h, {{a31, &k1}, {a32, &k2}}));
    const Vec k4 = f(x + c4 * h, axpy(u, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
    const Vec k5 = f(x + c5 * h, axpy(u, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
    const Vec k6 =
        f(x + h, axpy(u, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
    const Vec unew = axpy(u, h, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
    const double xnew = last ? x1 : x + h;
    const Vec k7 = f(xnew, unew);

    if (!finite(unew) || !finite(k7)) {
      std::ostringstream msg;
      msg << "state became non-finite near x = " << x << " (lambda = " << lambda << ")";
      throw Error(ErrorKind::NonFiniteState, msg.str());
    }

    double err = 0.0;
    for (int i = 0; i < 2; ++i) {
      const double e =
          h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double sc = kLocalShare * opts.tol * (1.0 + std::max(std::abs(u[i]), std::abs(unew[i])));
      err = std::max(err, std::abs(e) / sc);
    }

    if (err <= 1.0) {
      x = xnew;
      u = unew;
      k1 = k7;
      xs.push_back(x);
      states.push_back({u[0], u[1]});
      ddy.push_back(k7[1]);
      if (last) break;
    }
    const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
    h *= err <= 1.0 ? factor : std::min(factor, 1.0);
    if (std::abs(h) < min_step) {
      std::ostringstream msg;
      msg << "step size underflow at x = " << x << " (lambda = " << lambda << ")";
      throw Error(ErrorKind::StepSizeUnderflow, msg.str());
    }
  }
  return Trajectory(std::move(xs), std::move(states), std::move(ddy));
}

}  // namespace slt
