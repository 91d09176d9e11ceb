#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oracle/trig_oracle.hpp"
#include "slt/eigen.hpp"
#include "slt/error.hpp"
#include "slt/problem_io.hpp"

using namespace slt;

TEST_CASE("dirichlet scan brackets the squares") {
  const auto p = load_problem("dirichlet");
  const auto r = scan(p, 0.5, 110.0, 2000);
  REQUIRE(r.brackets.size() == 10);
  for (int n = 1; n <= 10; ++n) {
    const auto& b = r.brackets[n - 1];
    CHECK(b.lo < n * n);
    CHECK(b.hi > n * n);
    CHECK(b.w_lo * b.w_hi < 0.0);
  }
  CHECK(r.warnings.empty());
}

TEST_CASE("no eigenvalue between consecutive squares") {
  const auto p = load_problem("dirichlet");
  CHECK(scan(p, 4.2, 8.8, 50).brackets.empty());
}

TEST_CASE("paper-example scan counts the oracle roots") {
  const auto p = load_problem("paper-example");
  const auto o = oracle::paper_example();
  const auto r = scan(p, 0.0, 100.0, 4000);
  const auto roots = oracle::roots_mu(o, 1e-9, 10.0, 20000);
  CHECK(r.brackets.size() == roots.size());
  CHECK(roots.size() == 19);
}

TEST_CASE("scan argument checks") {
  const auto p = load_problem("dirichlet");
  CHECK_THROWS_AS(scan(p, 5.0, 5.0, 10), Error);
  CHECK_THROWS_AS(scan(p, 0.0, 5.0, 1), Error);
}

TEST_CASE("bracket extraction from synthetic nodes") {
  auto node = [](double lambda, double w) {
    CharNode n;
    n.lambda = lambda;
    n.sample = CharSample{lambda, w, w, w, 0.0, 1.0};
    return n;
  };
  SUBCASE("exact zero between opposite signs") {
    const std::vector<CharNode> nodes{node(0, 1.0), node(1, 0.0), node(2, -1.0)};
    const auto r = brackets_from_nodes(nodes);
    REQUIRE(r.brackets.size() == 1);
    CHECK(r.brackets[0].lo == 0.0);
    CHECK(r.brackets[0].hi == 2.0);
    CHECK(r.suspected_multiple.empty());
  }
  SUBCASE("touching zero is a suspected multiple root") {
    const std::vector<CharNode> nodes{node(0, 1.0), node(1, 0.0), node(2, 1.0)};
    const auto r = brackets_from_nodes(nodes);
    CHECK(r.brackets.empty());
    REQUIRE(r.suspected_multiple.size() == 1);
  }
  SUBCASE("tiny same-sign dip is flagged") {
    const std::vector<CharNode> nodes{node(0, 1.0), node(1, 1e-8), node(2, 1.0)};
    const auto r = brackets_from_nodes(nodes);
    CHECK(r.brackets.empty());
    REQUIRE(r.suspected_multiple.size() == 1);
    CHECK(r.suspected_multiple[0] == 1.0);
  }
  SUBCASE("failed node is skipped with a warning") {
    std::vector<CharNode> nodes{node(0, 1.0), node(1, 0.5), node(2, -1.0)};
    nodes[1].sample.reset();
    nodes[1].error = "boom";
    const auto r = brackets_from_nodes(nodes);
    REQUIRE(r.brackets.size() == 1);
    CHECK(r.brackets[0].lo == 0.0);
    REQUIRE(r.warnings.size() == 1);
    CHECK(r.warnings[0].find("boom") != std::string::npos);
  }
}

TEST_CASE("refine a dirichlet bracket") {
  const auto p = load_problem("dirichlet");
  const auto w3 = char_eval(p, 3.0).w, w5 = char_eval(p, 5.0).w;
  const auto rec = refine(p, {3.0, 5.0, w3, w5});
  CHECK(rec.converged);
  CHECK(std::abs(rec.lambda - 4.0) <= 1e-8);
  REQUIRE(rec.mu);
  CHECK(std::abs(*rec.mu - 2.0) <= 1e-8);
  CHECK(rec.proportionality_defect <= 1e-6);
  CHECK(rec.bc_residuals[1] <= 1e-8);
  CHECK_THROWS_AS(refine(p, {5.0, 6.0, w5, char_eval(p, 6.0).w}), Error);
}

TEST_CASE("refine_all keeps bracket order and is exec independent") {
  const auto p = load_problem("paper-example");
  const auto r = scan(p, 0.0, 30.0, 600);
  REQUIRE(r.brackets.size() >= 5);
  const auto a = refine_all(p, r.brackets, {}, Exec::serial);
  const auto b = refine_all(p, r.brackets, {}, Exec::parallel);
  REQUIRE(a.records.size() == r.brackets.size());
  REQUIRE(b.records.size() == a.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    CHECK(a.records[i].lambda == b.records[i].lambda);
    CHECK(a.records[i].lambda > r.brackets[i].lo);
    CHECK(a.records[i].lambda < r.brackets[i].hi);
  }
}

TEST_CASE("dirichlet spectrum is the squares") {
  const auto p = load_problem("dirichlet");
  const auto s = find_eigenvalues(p, 10);
  CHECK_FALSE(s.seeded);
  REQUIRE(s.records.size() == 10);
  for (int n = 1; n <= 10; ++n) {
    CHECK(std::abs(s.records[n - 1].lambda - n * n) <= 1e-6 * n * n);
  }
  CHECK(std::any_of(s.warnings.begin(), s.warnings.end(),
                    [](const auto& w) { return w.find("SeedDegenerate") != std::string::npos; }));
}

TEST_CASE("paper-example spectrum below mu = 20 against the oracle") {
  const auto p = load_problem("paper-example");
  const auto o = oracle::paper_example();
  FindOptions opts;
  opts.lambda_floor = -25.0;
  const auto s = find_eigenvalues(p, 45, 0.5, opts);

  // oracle roots: one negative, then the mu roots
  std::vector<double> want{oracle::root_lambda(o, -1.5, -0.5)};
  for (double m : oracle::roots_mu(o, 1e-9, 20.0, 40000)) want.push_back(m * m);
  std::vector<double> got;
  for (const auto& r : s.records) {
    if (r.lambda < 400.0) got.push_back(r.lambda);
  }
  REQUIRE(got.size() == want.size());
  for (std::size_t i = 0; i < got.size(); ++i) {
    CHECK(std::abs(got[i] - want[i]) <= 1e-9 * std::max(1.0, std::abs(want[i])));
  }
  CHECK(want.front() == doctest::Approx(-1.0024736927).epsilon(1e-9));
}

TEST_CASE("paper-example roots settle at k +- arctan(1/sqrt 2)/pi") {
  const auto p = load_problem("paper-example");
  // the lowest 90 reach past mu = 40
  const auto s = find_eigenvalues(p, 90);
  const double off = std::atan(1.0 / std::sqrt(2.0)) / std::acos(-1.0);
  std::vector<double> mus;
  for (const auto& r : s.records) {
    if (r.mu && *r.mu < 40.0) mus.push_back(*r.mu);
  }
  CHECK(mus.size() == 79);
  REQUIRE(mus.size() >= 5);
  for (std::size_t i = mus.size() - 5; i < mus.size(); ++i) {
    const double frac = mus[i] - std::round(mus[i]);
    CHECK(std::abs(std::abs(frac) - off) <= 0.01);
  }
}

TEST_CASE("desk benchmark records carry seeds and stay within half a gap") {
  const auto p = load_problem("desk-benchmark");
  const auto s = find_eigenvalues(p, 20);
  CHECK(s.seeded);
  int matched = 0;
  for (std::size_t i = 0; i < s.records.size(); ++i) {
    const auto& r = s.records[i];
    if (i) CHECK(r.lambda - s.records[i - 1].lambda > 1e-8 * std::max(1.0, std::abs(r.lambda)));
    CHECK(r.w_residual <= 1e-8 * r.w_scale);
    if (r.branch == Branch::unmatched) continue;
    ++matched;
    REQUIRE(r.mu);
    REQUIRE(r.seed_mu);
    CHECK(std::abs(*r.mu - *r.seed_mu) <= 0.5);
  }
  CHECK(matched >= 36);
  // two negative eigenvalues below the seeds
  CHECK(s.records[0].lambda == doctest::Approx(-8.99999976).epsilon(1e-8));
  CHECK(s.records[1].lambda == doctest::Approx(-1.00735310).epsilon(1e-8));
}

TEST_CASE("residual diagnostics at refined eigenvalues") {
  const auto p = load_problem("paper-example");
  const auto s = find_eigenvalues(p, 20);
  for (const auto& r : s.records) {
    CHECK(r.converged);
    CHECK(r.tm_residuals[0] <= 1e-8);
    CHECK(r.tm_residuals[1] <= 1e-8);
    CHECK(r.bc_residuals[0] <= 1e-8);
    CHECK(r.bc_residuals[1] <= 1e-6);
    CHECK(r.proportionality_defect <= 1e-6);
  }
}

TEST_CASE("eigenfunction normalization and shape") {
  const auto p = load_problem("dirichlet");
  const auto s = find_eigenvalues(p, 3);
  const auto f = eigenfunction(p, s.records[1], 101);
  REQUIRE(f.size() == 202);
  double m = 0.0;
  for (const auto& e : f) {
    m = std::max(m, std::abs(e.y));
    CHECK(std::abs(e.y - std::sin(2 * e.x)) <= 1e-7);
  }
  CHECK(m == 1.0);
  CHECK(f[100].side == Side::minus);
  CHECK(f[101].side == Side::plus);
  CHECK(f[100].x == f[101].x);
}

TEST_CASE("paper-example eigenfunctions jump by a factor of two") {
  const auto p = load_problem("paper-example");
  const auto s = find_eigenvalues(p, 10);
  for (const auto& r : s.records) {
    const auto f = eigenfunction(p, r, 51);
    double m = 0.0;
    for (const auto& e : f) m = std::max(m, std::abs(e.y));
    CHECK(m == 1.0);
    double first = 0.0;
    for (const auto& e : f) {
      if (e.y != 0.0) {
        first = e.y;
        break;
      }
    }
    CHECK(first > 0.0);
    CHECK(std::abs(f[50].y - 2.0 * f[51].y) <= 1e-8);
    CHECK(std::abs(f[50].dy - f[51].dy) <= 1e-8);
  }
}

TEST_CASE("match_to_seeds labels each seed at most once") {
  const auto p = load_problem("desk-benchmark");
  auto s = find_eigenvalues(p, 12);
  match_to_seeds(p, s.records, 12);
  std::vector<std::pair<int, int>> seen;
  for (const auto& r : s.records) {
    if (r.branch == Branch::unmatched) continue;
    const std::pair key{r.branch == Branch::one ? 1 : 2, r.n};
    CHECK(std::find(seen.begin(), seen.end(), key) == seen.end());
    seen.push_back(key);
  }
}

TEST_CASE("find_eigenvalues argument checks") {
  const auto p = load_problem("desk-benchmark");
  CHECK_THROWS_AS(find_eigenvalues(p, 0), Error);
  CHECK_THROWS_AS(find_eigenvalues(p, 5, 0.0), Error);
  CHECK(default_lambda_floor(p) == -100.0);
}
