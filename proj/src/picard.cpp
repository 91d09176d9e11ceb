#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "slt/error.hpp"
#include "slt/integrate.hpp"

namespace slt {

namespace detail {

namespace {

inline double sweep_row(std::span<const double> base, std::span<const double> kernel,
                        std::span<const double> f, double h, std::size_t i) {
  if (i == 0) return base[0];
  double acc = 0.5 * kernel[i] * f[0];
  for (std::size_t j = 1; j < i; ++j) acc += kernel[i - j] * f[j];
  acc += 0.5 * kernel[0] * f[i];
  return base[i] + h * acc;
}

}  // namespace

void picard_sweep_serial(std::span<const double> base, std::span<const double> kernel,
                         std::span<const double> f, double h, std::span<double> out) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = sweep_row(base, kernel, f, h, i);
}

void picard_sweep_parallel(std::span<const double> base, std::span<const double> kernel,
                           std::span<const double> f, double h, std::span<double> out) {
  const auto n = static_cast<std::ptrdiff_t>(out.size());
  // rows grow linearly in cost
#pragma omp parallel for schedule(dynamic, 64)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out[i] = sweep_row(base, kernel, f, h, static_cast<std::size_t>(i));
  }
}

}  // namespace detail

Trajectory picard_solution(double p, const Potential& q, double lambda, double x0, PhaseState base,
                           double x1, const PicardOptions& opts) {
  if (!(lambda > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "picard_solution needs lambda > 0 (kernel uses 1/mu)");
  }
  if (!(p > 0.0)) throw Error(ErrorKind::NonpositiveP, "picard_solution needs p > 0");
  if (opts.iterations < 1) throw Error(ErrorKind::InvalidArgument, "iterations must be >= 1");
  if (opts.grid < 2) throw Error(ErrorKind::InvalidArgument, "grid must have >= 2 nodes");
  if (!(x0 != x1)) throw Error(ErrorKind::InvalidArgument, "picard_solution needs x0 != x1");

  const std::size_t n = opts.grid;
  const double h = (x1 - x0) / static_cast<double>(n - 1);
  const double k = std::sqrt(lambda / p);

  std::vector<double> xs(n), qv(n), base_y(n), base_dy(n), kern_y(n), kern_dy(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = i + 1 == n ? x1 : x0 + h * static_cast<double>(i);
    qv[i] = q(xs[i]);
    const double arg = k * h * static_cast<double>(i);
    const double s = std::sin(arg), c = std::cos(arg);
    base_y[i] = base.y * c + base.dy * s / k;
    base_dy[i] = -base.y * k * s + base.dy * c;
    // sin(mu (x - z)/sqrt p) / (sqrt(p) mu) and its x-derivative
    kern_y[i] = s / (k * p);
    kern_dy[i] = c / p;
  }

  const auto sweep = opts.exec == Exec::parallel ? detail::picard_sweep_parallel
                                                 : detail::picard_sweep_serial;

  std::vector<double> y = base_y, next(n), dy(n), f(n);
  double prev_diff = 0.0;
  for (int it = 1; it <= opts.iterations; ++it) {
    for (std::size_t i = 0; i < n; ++i) f[i] = qv[i] * y[i];
    sweep(base_y, kern_y, f, h, next);
    sweep(base_dy, kern_dy, f, h, dy);

    double diff = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!std::isfinite(next[i]) || !std::isfinite(dy[i])) {
        throw Error(ErrorKind::NonFiniteState, "Picard iterate became non-finite");
      }
      diff = std::max(diff, std::abs(next[i] - y[i]));
      scale = std::max(scale, std::abs(next[i]));
    }
    y.swap(next);
    const bool at_noise_floor = diff <= 1e-13 * std::max(scale, 1.0);
    if (it > 3 && diff > prev_diff && !at_noise_floor) {
      std::ostringstream msg;
      msg << "Picard differences stopped decreasing at iteration " << it << " (" << diff
          << " > " << prev_diff << ")";
      throw Error(ErrorKind::NonConvergence, msg.str());
    }
    prev_diff = diff;
  }

  std::vector<PhaseState> states(n);
  std::vector<double> ddy(n);
  for (std::size_t i = 0; i < n; ++i) {
    states[i] = {y[i], dy[i]};
    ddy[i] = (qv[i] - lambda) * y[i] / p;
  }
  return Trajectory(std::move(xs), std::move(states), std::move(ddy));
}

}  // namespace slt
