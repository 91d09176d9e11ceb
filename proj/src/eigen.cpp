#include "slt/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>

#include <boost/math/tools/toms748_solve.hpp>

#include "slt/asymptotic.hpp"
#include "slt/error.hpp"
#include "slt/fundamental.hpp"

namespace slt {

std::string to_string(Branch branch) {
  switch (branch) {
    case Branch::one: return "1";
    case Branch::two: return "2";
    case Branch::unmatched: return "unmatched";
  }
  return "?";
}

namespace {

int sign_of(const CharSample& s, double zero_rel) {
  if (std::abs(s.w) <= zero_rel * s.term_scale) return 0;
  return s.w > 0.0 ? 1 : -1;
}

// nodes spaced uniformly in s = sign(lambda) sqrt|lambda|, mapped to lambda
std::vector<double> signed_mu_nodes(double s_lo, double s_hi, double ds) {
  const auto count = static_cast<std::size_t>(std::ceil((s_hi - s_lo) / ds));
  std::vector<double> out;
  out.reserve(count + 1);
  for (std::size_t i = 0; i <= count; ++i) {
    const double s = i == count ? s_hi : s_lo + (s_hi - s_lo) * static_cast<double>(i) / count;
    out.push_back(s * std::abs(s));
  }
  return out;
}

void dedupe(std::vector<EigenvalueRecord>& records) {
  std::sort(records.begin(), records.end(),
            [](const auto& l, const auto& r) { return l.lambda < r.lambda; });
  std::vector<EigenvalueRecord> out;
  for (auto& rec : records) {
    if (!out.empty()) {
      auto& last = out.back();
      const double tol = 1e-8 * std::max(1.0, std::abs(rec.lambda));
      if (std::abs(rec.lambda - last.lambda) <= tol) {
        const auto quality = [](const EigenvalueRecord& r) {
          return r.w_scale > 0.0 ? r.w_residual / r.w_scale : r.w_residual;
        };
        if (quality(rec) < quality(last)) last = rec;
        continue;
      }
    }
    out.push_back(rec);
  }
  records = std::move(out);
}

double max_abs_q(const ValidatedProblem& problem) {
  const auto& d = problem.domain();
  const auto& pc = problem.coeffs();
  constexpr int kProbes = 101;
  double m = 0.0;
  for (int i = 0; i < kProbes; ++i) {
    const double t = static_cast<double>(i) / (kProbes - 1);
    m = std::max(m, std::abs(pc.q_minus(d.a + t * d.left_length())));
    m = std::max(m, std::abs(pc.q_plus(d.c + t * d.right_length())));
  }
  return m;
}

}  // namespace

ScanResult brackets_from_nodes(std::span<const CharNode> nodes, const ScanOptions& opts) {
  ScanResult out;
  std::ptrdiff_t prev = -1;  // last valid node with a nonzero sign
  std::ptrdiff_t prev_valid = -1;
  bool zero_since_prev = false;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& node = nodes[i];
    if (!node.sample) {
      std::ostringstream msg;
      msg << "skipped node lambda = " << node.lambda << ": " << node.error;
      out.warnings.push_back(msg.str());
      continue;
    }
    const int sg = sign_of(*node.sample, opts.zero_rel);

    // same-sign local minimum of |w| that is tiny relative to its terms
    if (sg != 0 && prev_valid >= 0 && i + 1 < nodes.size() && nodes[i + 1].sample) {
      const auto& l = *nodes[prev_valid].sample;
      const auto& r = *nodes[i + 1].sample;
      const auto& m = *node.sample;
      if (sign_of(l, opts.zero_rel) == sg && sign_of(r, opts.zero_rel) == sg &&
          std::abs(m.w) < std::abs(l.w) && std::abs(m.w) < std::abs(r.w) &&
          std::abs(m.w) <= opts.multiple_rel * m.term_scale) {
        out.suspected_multiple.push_back(node.lambda);
      }
    }
    prev_valid = static_cast<std::ptrdiff_t>(i);

    if (sg == 0) {
      zero_since_prev = true;
      continue;
    }
    if (prev >= 0) {
      const auto& ps = *nodes[prev].sample;
      if (sign_of(ps, opts.zero_rel) != sg) {
        out.brackets.push_back({nodes[prev].lambda, node.lambda, ps.w, node.sample->w});
      } else if (zero_since_prev) {
        out.suspected_multiple.push_back(0.5 * (nodes[prev].lambda + node.lambda));
      }
    }
    prev = static_cast<std::ptrdiff_t>(i);
    zero_since_prev = false;
  }
  return out;
}

ScanResult scan_nodes(const ValidatedProblem& problem, std::span<const double> lambdas,
                      const ScanOptions& opts) {
  const auto nodes = char_grid(problem, lambdas, opts.char_opts, opts.exec);
  return brackets_from_nodes(nodes, opts);
}

ScanResult scan(const ValidatedProblem& problem, double lambda_lo, double lambda_hi, int steps,
                const ScanOptions& opts) {
  if (!(lambda_lo < lambda_hi)) {
    throw Error(ErrorKind::InvalidArgument, "scan needs lambda_lo < lambda_hi");
  }
  if (steps < 2) throw Error(ErrorKind::InvalidArgument, "scan needs steps >= 2");
  std::vector<double> lambdas(static_cast<std::size_t>(steps) + 1);
  for (int i = 0; i <= steps; ++i) {
    lambdas[i] = i == steps ? lambda_hi : lambda_lo + (lambda_hi - lambda_lo) * i / steps;
  }
  return scan_nodes(problem, lambdas, opts);
}

EigenvalueRecord refine(const ValidatedProblem& problem, const Bracket& bracket,
                        const RefineOptions& opts) {
  if (!(bracket.lo < bracket.hi) || !(bracket.w_lo * bracket.w_hi < 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "refine needs a sign-changing bracket lo < hi");
  }
  auto w_of = [&](double lambda) { return char_eval(problem, lambda, opts.char_opts).w; };
  auto done = [&](double lo, double hi) {
    return std::abs(hi - lo) <= opts.rel_tol * std::max(1.0, std::abs(lo));
  };

  std::uintmax_t iters = static_cast<std::uintmax_t>(opts.max_iterations);
  const auto [lo, hi] = boost::math::tools::toms748_solve(w_of, bracket.lo, bracket.hi,
                                                          bracket.w_lo, bracket.w_hi, done, iters);

  EigenvalueRecord rec;
  rec.bracket = bracket;
  rec.iterations = static_cast<int>(iters);
  rec.converged = done(lo, hi);
  rec.lambda = 0.5 * (lo + hi);
  if (rec.lambda >= 0.0) rec.mu = std::sqrt(rec.lambda);

  const IvpOptions ivp{.tol = opts.char_opts.tol};
  const auto phi = build_phi(problem, rec.lambda, ivp);
  const auto psi = build_psi(problem, rec.lambda, ivp);
  const auto sample = char_eval(problem, rec.lambda, opts.char_opts);
  rec.w_residual = std::abs(sample.w);
  rec.w_scale = sample.term_scale;

  const auto rel = [](double value, double scale) {
    return scale > 0.0 ? std::abs(value) / scale : std::abs(value);
  };
  const auto& bc = problem.bc();
  rec.bc_residuals = {
      rel(boundary_left(bc, rec.lambda, phi.at_a()), boundary_left_scale(bc, rec.lambda, phi.at_a())),
      rel(boundary_right(bc, rec.lambda, phi.at_b()),
          boundary_right_scale(bc, rec.lambda, phi.at_b()))};
  const auto tr = transmission_residual(problem.tm(), phi.at_c_minus(), phi.at_c_plus());
  const auto ts = transmission_scale(problem.tm(), phi.at_c_minus(), phi.at_c_plus());
  rec.tm_residuals = {rel(tr[0], ts[0]), rel(tr[1], ts[1])};

  // least-squares k with psi ~ k phi, then the sup defect
  const auto& d = problem.domain();
  std::vector<double> ph, ps;
  const int g = std::max(2, opts.diagnostic_points);
  for (int piece = 0; piece < 2; ++piece) {
    const double x0 = piece == 0 ? d.a : d.c;
    const double x1 = piece == 0 ? d.c : d.b;
    const Trajectory& tp = piece == 0 ? phi.left : phi.right;
    const Trajectory& ts2 = piece == 0 ? psi.left : psi.right;
    for (int i = 0; i < g; ++i) {
      const double x = i + 1 == g ? x1 : x0 + (x1 - x0) * i / (g - 1);
      ph.push_back(tp.at(x).y);
      ps.push_back(ts2.at(x).y);
    }
  }
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < ph.size(); ++i) {
    num += ps[i] * ph[i];
    den += ph[i] * ph[i];
  }
  const double k = den > 0.0 ? num / den : 0.0;
  double sup_diff = 0.0, sup_ref = 0.0;
  for (std::size_t i = 0; i < ph.size(); ++i) {
    sup_diff = std::max(sup_diff, std::abs(ps[i] - k * ph[i]));
    sup_ref = std::max(sup_ref, std::abs(k * ph[i]));
  }
  rec.proportionality_defect = sup_ref > 0.0 ? sup_diff / sup_ref : INFINITY;
  return rec;
}

RefineBatch refine_all(const ValidatedProblem& problem, std::span<const Bracket> brackets,
                       const RefineOptions& opts, Exec exec) {
  std::vector<std::optional<EigenvalueRecord>> slots(brackets.size());
  std::vector<std::string> errors(brackets.size());
  const auto n = static_cast<std::ptrdiff_t>(brackets.size());
  auto body = [&](std::ptrdiff_t i) {
    try {
      slots[i] = refine(problem, brackets[i], opts);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  };
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
  }

  RefineBatch out;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (slots[i]) {
      out.records.push_back(std::move(*slots[i]));
    } else {
      std::ostringstream msg;
      msg << "bracket [" << brackets[i].lo << ", " << brackets[i].hi
          << "] not refined: " << errors[i];
      out.warnings.push_back(msg.str());
    }
  }
  return out;
}

double default_lambda_floor(const ValidatedProblem& problem) {
  return -(10.0 * max_abs_q(problem) + 100.0);
}

void match_to_seeds(const ValidatedProblem& problem, std::span<EigenvalueRecord> records,
                    int n_max) {
  struct Candidate {
    double dist;
    std::size_t record;
    int branch;
    int n;
    double seed_mu;
  };
  std::vector<Candidate> cands;
  for (auto& rec : records) {
    rec.n = 0;
    rec.branch = Branch::unmatched;
    rec.seed_mu.reset();
  }
  for (int branch = 1; branch <= 2; ++branch) {
    const double gap = seed_gap(problem, branch);
    for (int n = seed_min_index(problem, branch); n <= n_max; ++n) {
      const double s = asym_eigenvalue_seed(problem, n, branch).mu;
      for (std::size_t i = 0; i < records.size(); ++i) {
        if (!records[i].mu) continue;
        const double dist = std::abs(*records[i].mu - s);
        if (dist <= 0.5 * gap) cands.push_back({dist, i, branch, n, s});
      }
    }
  }
  std::stable_sort(cands.begin(), cands.end(),
                   [](const auto& l, const auto& r) { return l.dist < r.dist; });
  std::vector<std::pair<int, int>> used;
  for (const auto& c : cands) {
    auto& rec = records[c.record];
    if (rec.branch != Branch::unmatched) continue;
    if (std::find(used.begin(), used.end(), std::pair{c.branch, c.n}) != used.end()) continue;
    rec.branch = c.branch == 1 ? Branch::one : Branch::two;
    rec.n = c.n;
    rec.seed_mu = c.seed_mu;
    used.emplace_back(c.branch, c.n);
  }
}

Spectrum find_eigenvalues(const ValidatedProblem& problem, int n_max, double window_pad,
                          const FindOptions& opts) {
  if (n_max < 1) throw Error(ErrorKind::InvalidArgument, "n_max must be >= 1");
  if (!(window_pad > 0.0)) throw Error(ErrorKind::InvalidArgument, "window_pad must be > 0");

  Spectrum out;
  const auto ac = classify(problem.bc(), problem.tm());
  const double floor = opts.lambda_floor.value_or(default_lambda_floor(problem));
  const double s_floor = floor < 0.0 ? -std::sqrt(-floor) : std::sqrt(floor);
  const double g1 = seed_gap(problem, 1), g2 = seed_gap(problem, 2);
  const double dmu = std::min(g1, g2) / std::max(1, opts.nodes_per_gap);

  ScanOptions scan_opts;
  scan_opts.char_opts = opts.char_opts;
  scan_opts.exec = opts.exec;
  RefineOptions refine_opts;
  refine_opts.char_opts = opts.char_opts;

  auto absorb = [&](const ScanResult& sr) {
    out.warnings.insert(out.warnings.end(), sr.warnings.begin(), sr.warnings.end());
    out.suspected_multiple.insert(out.suspected_multiple.end(), sr.suspected_multiple.begin(),
                                  sr.suspected_multiple.end());
  };

  if (!ac.degenerate_leading) {
    out.seeded = true;
    std::vector<std::vector<double>> blocks;
    double mu_top = s_floor;
    for (int branch = 1; branch <= 2; ++branch) {
      const double gap = branch == 1 ? g1 : g2;
      for (int n = seed_min_index(problem, branch); n <= n_max; ++n) {
        const double s = asym_eigenvalue_seed(problem, n, branch).mu;
        mu_top = std::max(mu_top, s + window_pad * gap);
        const double lo = std::max(0.0, s - window_pad * gap);
        const double hi = s + window_pad * gap;
        const int m = std::max(3, opts.window_nodes);
        std::vector<double> block(m);
        for (int i = 0; i < m; ++i) {
          const double mu = i + 1 == m ? hi : lo + (hi - lo) * i / (m - 1);
          block[i] = mu * mu;
        }
        blocks.push_back(std::move(block));
      }
    }
    blocks.insert(blocks.begin(), signed_mu_nodes(s_floor, std::max(mu_top, s_floor + dmu), dmu));

    // one flat batch keeps every worker busy
    std::vector<double> flat;
    for (const auto& b : blocks) flat.insert(flat.end(), b.begin(), b.end());
    const auto nodes = char_grid(problem, flat, opts.char_opts, opts.exec);

    std::vector<Bracket> brackets;
    std::size_t offset = 0;
    for (const auto& b : blocks) {
      const auto sr =
          brackets_from_nodes(std::span<const CharNode>(nodes).subspan(offset, b.size()), scan_opts);
      offset += b.size();
      absorb(sr);
      brackets.insert(brackets.end(), sr.brackets.begin(), sr.brackets.end());
    }
    auto batch = refine_all(problem, brackets, refine_opts, opts.exec);
    out.warnings.insert(out.warnings.end(), batch.warnings.begin(), batch.warnings.end());
    out.records = std::move(batch.records);
    dedupe(out.records);
    match_to_seeds(problem, out.records, n_max);
  } else {
    out.warnings.push_back(
        "SeedDegenerate: Delta24 = 0, asymptotic seeds are uninformative; using a dense scan");
    constexpr int kChunk = 128;
    double s = s_floor;
    while (static_cast<int>(out.records.size()) < n_max && s < opts.max_mu) {
      const double s_next = s + kChunk * dmu;
      const auto sr = scan_nodes(problem, signed_mu_nodes(s, s_next, dmu), scan_opts);
      absorb(sr);
      auto batch = refine_all(problem, sr.brackets, refine_opts, opts.exec);
      out.warnings.insert(out.warnings.end(), batch.warnings.begin(), batch.warnings.end());
      out.records.insert(out.records.end(), batch.records.begin(), batch.records.end());
      dedupe(out.records);
      s = s_next;
    }
    if (static_cast<int>(out.records.size()) > n_max) out.records.resize(n_max);
  }
  std::sort(out.suspected_multiple.begin(), out.suspected_multiple.end());
  return out;
}

std::vector<EigenSample> sample_phi(const ValidatedProblem& problem, double lambda, int grid,
                                    double tol) {
  if (grid < 2) throw Error(ErrorKind::InvalidArgument, "grid must be >= 2");
  const auto phi = build_phi(problem, lambda, IvpOptions{.tol = tol});
  const auto& d = problem.domain();
  std::vector<EigenSample> out;
  out.reserve(2 * static_cast<std::size_t>(grid));
  for (int i = 0; i < grid; ++i) {
    const double x = i + 1 == grid ? d.c : d.a + d.left_length() * i / (grid - 1);
    const auto st = phi.left.at(x);
    out.push_back({x, Side::minus, st.y, st.dy});
  }
  for (int i = 0; i < grid; ++i) {
    const double x = i + 1 == grid ? d.b : d.c + d.right_length() * i / (grid - 1);
    const auto st = phi.right.at(x);
    out.push_back({x, Side::plus, st.y, st.dy});
  }
  return out;
}

std::vector<EigenSample> eigenfunction(const ValidatedProblem& problem,
                                       const EigenvalueRecord& record, int grid, double tol) {
  auto samples = sample_phi(problem, record.lambda, grid, tol);
  double m = 0.0;
  for (const auto& s : samples) m = std::max(m, std::abs(s.y));
  if (m == 0.0) return samples;
  double sign = 1.0;
  for (const auto& s : samples) {
    if (std::abs(s.y) > 1e-12 * m) {
      sign = s.y > 0.0 ? 1.0 : -1.0;
      break;
    }
  }
  // divide rather than multiply by 1/m so the peak is exactly 1
  for (auto& s : samples) {
    s.y = sign * s.y / m;
    s.dy = sign * s.dy / m;
  }
  return samples;
}

}  // namespace slt
