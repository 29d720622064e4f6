#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"
#include "plateau/closed_form.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

using namespace plateau;
using doctest::Approx;

namespace {
const std::vector<std::pair<int, double>> kCases = {{1, 1.5}, {1, 2.0}, {1, 4.0}, {1, 20.0},
                                                    {2, 2.5}, {2, 4.0}, {2, 9.0}, {3, 3.2},
                                                    {3, 5.0}, {4, 7.0}, {5, 30.0}};
}

TEST_CASE("explicit solution parameters") {
  const auto s = explicit_solution(2, 4.0);
  CHECK(s.plateau_radius == Approx(0.5));
  CHECK(s.plateau_value == Approx(1.0 - 2.0 * std::exp(-2.0)).epsilon(1e-15));
  CHECK_THROWS_AS(explicit_solution(2, 2.0), std::domain_error);
  CHECK_THROWS_AS(explicit_solution(3, 1.0), std::domain_error);
}

TEST_CASE("oracle_u examples") {
  CHECK(oracle_u(1, 2.0, 0.0) == Approx(1.0 - std::exp(-1.0)).epsilon(1e-15));
  CHECK(oracle_u(1, 2.0, 0.0) == Approx(0.6321206).epsilon(1e-7));
  CHECK(oracle_u(2, 4.0, 0.0) == Approx(0.7293294).epsilon(1e-7));
  CHECK(oracle_u(2, 4.0, 1.0) == 0.0);
  CHECK_THROWS_AS(oracle_u(2, 2.0, 0.3), std::domain_error);
  CHECK_THROWS_AS(oracle_u(1, 4.0, 1.5), std::domain_error);
  CHECK_THROWS_AS(oracle_u(1, 4.0, -0.1), std::domain_error);
}

TEST_CASE("oracle_z examples") {
  CHECK(oracle_z(2, 4.0, 0.0) == 0.0);
  CHECK(oracle_z(2, 4.0, 0.5) == -1.0);
  CHECK(oracle_z(1, 2.0, 0.25) == Approx(-0.5).epsilon(1e-15));
  CHECK_THROWS_AS(oracle_z(1, 1.0, 0.5), std::domain_error);
}

TEST_CASE("trivial field examples") {
  CHECK(oracle_trivial_z(2, 2.0, 1.0) == -1.0);
  CHECK(oracle_trivial_z(3, 1.0, 0.6) == Approx(-0.2).epsilon(1e-15));
  CHECK(oracle_trivial_z(1, 0.5, 0.0) == 0.0);
  CHECK_THROWS_AS(oracle_trivial_z(2, 2.5, 0.1), std::domain_error);
}

TEST_CASE("oracle matches an independently written formula") {
  for (auto [n, lambda] : kCases) {
    for (int i = 0; i <= 1000; ++i) {
      const double r = i / 1000.0;
      REQUIRE(oracle_u(n, lambda, r) == Approx(ref::u_exact(n, lambda, r)).epsilon(1e-13).scale(1e-13));
      REQUIRE(oracle_z(n, lambda, r) == Approx(ref::z_exact(n, lambda, r)).epsilon(1e-15));
    }
  }
}

TEST_CASE("branches agree at the plateau radius") {
  for (auto [n, lambda] : kCases) {
    const double r0 = n / lambda;
    const double below = oracle_u(n, lambda, r0);
    const double above = oracle_u(n, lambda, std::nextafter(r0, 2.0));
    CHECK(above == Approx(below).epsilon(1e-12));
    CHECK(oracle_z(n, lambda, r0) == Approx(-1.0).epsilon(1e-12));
    CHECK(oracle_z(n, lambda, std::nextafter(r0, 2.0)) == -1.0);
  }
}

TEST_CASE("oracle_u is nonincreasing, bounded away from 1, and |z| <= 1") {
  for (auto [n, lambda] : kCases) {
    const double delta = std::pow(lambda / n, n - 1) * std::exp(n - lambda);
    double prev = 2.0;
    for (int i = 0; i <= 4000; ++i) {
      const double r = i / 4000.0;
      const double u = oracle_u(n, lambda, r);
      REQUIRE(u <= prev);
      REQUIRE(u >= 0.0);
      REQUIRE(u <= 1.0 - delta * (1.0 - 1e-12));
      REQUIRE(std::abs(oracle_z(n, lambda, r)) <= 1.0);
      prev = u;
    }
  }
}

TEST_CASE("outer branch solves (N-1)/r + |u'|/(1-u) = lambda") {
  for (auto [n, lambda] : kCases) {
    const double r0 = n / lambda;
    for (int i = 1; i <= 200; ++i) {
      const double r = std::min(1.0, r0 + (1.0 - r0) * i / 200.0);
      const double u = oracle_u(n, lambda, r);
      const double du = ref::du_exact(n, lambda, r);
      const double lhs = (n - 1) / r + std::abs(du) / (1.0 - u);
      // 1 - u cancels when u is close to 1
      REQUIRE(lhs == Approx(lambda).epsilon(1e-10 + 4e-16 / (1.0 - u)));
    }
  }
}

TEST_CASE("energy identity holds for the closed forms") {
  for (auto [n, lambda] : kCases) {
    const double r0 = n / lambda;
    const double lhs = ref::ball_integral(
        n, [&](double r) { return std::abs(ref::du_exact(n, lambda, r)) / (1.0 - ref::u_exact(n, lambda, r)); },
        r0);
    const double rhs = lambda * ref::ball_integral(n, [&](double r) { return oracle_u(n, lambda, r); }, r0);
    CHECK(lhs == Approx(rhs).epsilon(1e-6));
  }
}

TEST_CASE("sample_figure1 examples") {
  const auto rows = sample_figure1({2.0}, 3);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].x == -1.0);
  CHECK(rows[0].lambda == 2.0);
  CHECK(rows[0].u == 0.0);
  CHECK(rows[1].x == 0.0);
  CHECK(rows[1].u == Approx(1.0 - std::exp(-1.0)).epsilon(1e-15));
  CHECK(rows[2].x == 1.0);
  CHECK(rows[2].u == 0.0);

  const auto edge = sample_figure1({20.0}, 2);
  REQUIRE(edge.size() == 2);
  CHECK(edge[0].x == -1.0);
  CHECK(edge[0].u == 0.0);
  CHECK(edge[1].x == 1.0);
  CHECK(edge[1].u == 0.0);

  CHECK_THROWS_AS(sample_figure1({1.0}, 11), std::domain_error);
  CHECK_THROWS_AS(sample_figure1({2.0, 0.5}, 11), std::domain_error);
  CHECK_THROWS_AS(sample_figure1({2.0}, 1), std::invalid_argument);
}

TEST_CASE("figure curves are even, flat on the plateau and monotone in lambda") {
  std::vector<double> lambdas;
  for (int l = 2; l <= 20; ++l) {
    lambdas.push_back(l);
  }
  const int samples = 401;
  const auto rows = sample_figure1(lambdas, samples);
  REQUIRE(rows.size() == lambdas.size() * samples);
  for (std::size_t c = 0; c < lambdas.size(); ++c) {
    const auto* curve = &rows[c * samples];
    const double top = 1.0 - std::exp(1.0 - lambdas[c]);
    for (int j = 0; j < samples; ++j) {
      REQUIRE(curve[j].lambda == lambdas[c]);
      REQUIRE(curve[j].u == curve[samples - 1 - j].u);
      if (std::abs(curve[j].x) <= 1.0 / lambdas[c]) {
        REQUIRE(curve[j].u == top);
      }
      if (c > 0) {
        REQUIRE(curve[j].u >= rows[(c - 1) * samples + j].u);
      }
    }
  }
}

TEST_CASE("sample_oracle on a grid") {
  const auto s = sample_oracle(2, 4.0, 100);
  REQUIRE(s.u.size() == 101);
  REQUIRE(s.z.size() == 100);
  CHECK(s.u.back() == 0.0);
  CHECK(s.u.front() == Approx(oracle_u(2, 4.0, 0.0)));
  CHECK(s.z[0] == Approx(oracle_z(2, 4.0, s.grid.midpoint(0))));
  const auto t = sample_oracle(2, 1.0, 100);
  for (double v : t.u) {
    CHECK(v == 0.0);
  }
  CHECK(t.z[99] == Approx(-0.5 * t.grid.midpoint(99)));
  CHECK_THROWS(sample_oracle(2, -1.0, 100));
}
