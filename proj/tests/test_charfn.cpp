#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracle/trig_oracle.hpp"
#include "slt/charfn.hpp"
#include "slt/error.hpp"
#include "slt/problem_io.hpp"

using namespace slt;

TEST_CASE("paper-example w matches the trig oracle") {
  const auto p = load_problem("paper-example");
  const auto o = oracle::paper_example();
  const auto s = char_eval(p, 1.0);
  CHECK(std::abs(s.w - oracle::w(o, 1.0)) <= 1e-8 * std::abs(oracle::w(o, 1.0)));
  CHECK(std::abs(char_at_a(p, 1.0) - oracle::w(o, 1.0)) <= 1e-8 * std::abs(oracle::w(o, 1.0)));

  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> lam(0.1, 100.0);
  for (int i = 0; i < 20; ++i) {
    const double l = lam(rng);
    const double want = oracle::w(o, l);
    const double got = char_eval(p, l).w;
    CHECK(std::abs(got - want) <= 1e-8 * std::abs(want));
  }
}

TEST_CASE("desk benchmark w matches the trig oracle below zero too") {
  const auto p = load_problem("desk-benchmark");
  const auto o = oracle::desk_benchmark();
  for (double l : {-20.0, -9.5, -1.0, 0.0, 2.5, 55.0, 300.0}) {
    const double want = oracle::w(o, l);
    const auto s = char_eval(p, l);
    CHECK(std::abs(s.w - want) <= 1e-8 * std::max(std::abs(want), 1e-12 * s.term_scale));
  }
}

TEST_CASE("two-sided identity on random lambda") {
  for (const char* name : {"paper-example", "desk-benchmark", "dirichlet"}) {
    const auto p = load_problem(name);
    const double d12 = p.tm().minor(1, 2), d34 = p.tm().minor(3, 4);
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> lam(-10.0, 400.0);
    for (int i = 0; i < 50; ++i) {
      const auto s = char_eval(p, lam(rng));
      CHECK(s.consistency <= 1e-8);
      CHECK(s.w == d12 * s.w_minus);
      CHECK(std::abs(d12 * s.w_minus - d34 * s.w_plus) <= 1e-8 * s.term_scale);
    }
  }
}

TEST_CASE("char_at_a agrees with char_eval in value and sign") {
  for (const char* name : {"paper-example", "desk-benchmark", "dirichlet"}) {
    const auto p = load_problem(name);
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> lam(-10.0, 200.0);
    for (int i = 0; i < 50; ++i) {
      const double l = lam(rng);
      const auto s = char_eval(p, l);
      const double a = char_at_a(p, l);
      CHECK(std::abs(a - s.w) <= 1e-8 * std::max(std::abs(s.w), 1e-6 * s.term_scale));
      if (std::abs(s.w) > 1e-6 * s.term_scale) CHECK((a > 0) == (s.w > 0));
    }
  }
}

TEST_CASE("dirichlet zeros at the squares") {
  const auto p = load_problem("dirichlet");
  for (int n = 1; n <= 10; ++n) {
    const double l = n * n;
    const auto lo = char_eval(p, l * (1 - 1e-6));
    const auto hi = char_eval(p, l * (1 + 1e-6));
    CHECK(lo.w * hi.w < 0.0);
  }
  // w at 0 is the finite limit: phi = x, psi = x - pi, W(a) = pi
  const auto z = char_eval(p, 0.0);
  CHECK(std::isfinite(z.w));
  CHECK(std::abs(z.w - std::acos(-1.0)) <= 1e-9);
}

TEST_CASE("Wronskian is constant on each piece") {
  const auto p = load_problem("desk-benchmark");
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> lam(-10.0, 400.0);
  for (int i = 0; i < 20; ++i) {
    const double l = lam(rng);
    const auto phi = build_phi(p, l);
    const auto psi = build_psi(p, l);
    const auto s = char_eval(p, l);
    const double d12 = p.tm().minor(1, 2), d34 = p.tm().minor(3, 4);
    CHECK(wronskian_spread(phi, psi, p.domain(), Piece::left) <= 1e-8 * s.term_scale / d12);
    CHECK(wronskian_spread(phi, psi, p.domain(), Piece::right) <= 1e-8 * s.term_scale / d34);
  }
}

TEST_CASE("w is continuous on a fine grid") {
  const auto p = load_problem("paper-example");
  std::vector<double> lambdas;
  for (int i = 0; i <= 400; ++i) lambdas.push_back(4.0 + 0.01 * i);
  const auto nodes = char_grid(p, lambdas);
  double max_step = 0.0, max_w = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    REQUIRE(nodes[i].sample);
    max_w = std::max(max_w, std::abs(nodes[i].sample->w));
    if (i) max_step = std::max(max_step, std::abs(nodes[i].sample->w - nodes[i - 1].sample->w));
  }
  // w' is bounded by a few times w / (local period): no jumps
  CHECK(max_step <= 0.1 * max_w);
}

TEST_CASE("char_grid records failures per node") {
  const auto p = load_problem("paper-example");
  CharOptions tight;
  tight.consistency_tol = 0.0;  // every nonzero defect is rejected
  const std::vector<double> lambdas{3.7, 12.1};
  const auto nodes = char_grid(p, lambdas, tight, Exec::serial);
  REQUIRE(nodes.size() == 2);
  for (const auto& n : nodes) {
    if (!n.sample) CHECK(n.error.find("ConsistencyError") != std::string::npos);
  }
  CHECK_THROWS_AS(char_eval(p, 1e12), Error);
}
