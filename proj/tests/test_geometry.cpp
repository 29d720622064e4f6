#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"
#include "plateau/geometry.hpp"

#include <cmath>
#include <stdexcept>

using namespace plateau;
using doctest::Approx;

TEST_CASE("domain validation") {
  CHECK_THROWS_AS(DomainSpec(DomainKind::ball, 2, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(DomainSpec(DomainKind::ball, 0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(DomainSpec(DomainKind::interval, 2, 1.0), std::invalid_argument);
  CHECK(DomainSpec::interval(2.0).volume() == Approx(4.0).epsilon(1e-15));
  CHECK(DomainSpec::interval(2.0).perimeter() == Approx(2.0).epsilon(1e-15));
}

TEST_CASE("unit ball volume") {
  CHECK(unit_ball_volume(1) == Approx(2.0).epsilon(1e-15));
  CHECK(unit_ball_volume(2) == Approx(ref::pi()).epsilon(1e-15));
  CHECK(unit_ball_volume(3) == Approx(4.0 * ref::pi() / 3.0).epsilon(1e-15));
  for (int n = 1; n <= 12; ++n) {
    CHECK(unit_ball_volume(n) == Approx(ref::ball_volume(n)).epsilon(1e-13));
  }
  CHECK(unit_sphere_area(1) == Approx(2.0).epsilon(1e-15));
  CHECK(unit_sphere_area(3) == Approx(4.0 * ref::pi()).epsilon(1e-14));
}

TEST_CASE("cheeger bounds examples") {
  const auto disk = cheeger_bounds(DomainSpec::ball(2, 1.0));
  CHECK(disk.lower == Approx(2.0).epsilon(1e-12));
  CHECK(disk.upper == Approx(2.0).epsilon(1e-12));
  REQUIRE(disk.exact);
  CHECK(*disk.exact == 2.0);

  const auto seg = cheeger_bounds(DomainSpec::interval(1.0));
  REQUIRE(seg.exact);
  CHECK(*seg.exact == 1.0);

  const auto b3 = cheeger_bounds(DomainSpec::ball(3, 2.0));
  REQUIRE(b3.exact);
  CHECK(*b3.exact == Approx(1.5).epsilon(1e-15));
  CHECK(cheeger_constant(DomainSpec::ball(3, 2.0)) == Approx(1.5));
}

TEST_CASE("balls saturate both isoperimetric bounds") {
  for (int n = 1; n <= 8; ++n) {
    for (double r : {0.1, 0.5, 1.0, 3.0, 100.0}) {
      const auto b = cheeger_bounds(DomainSpec::ball(n, r));
      REQUIRE(b.exact);
      CHECK(b.lower == Approx(n / r).epsilon(1e-12));
      CHECK(b.upper == Approx(n / r).epsilon(1e-12));
      CHECK(*b.exact == Approx(n / r).epsilon(1e-12));
      CHECK(b.lower > 0.0);
      CHECK(std::isfinite(b.upper));
    }
  }
}

TEST_CASE("sobolev limit constant") {
  CHECK(sobolev_constant_limit(2) == Approx(1.0 / (2.0 * std::sqrt(ref::pi()))).epsilon(1e-14));
  CHECK(sobolev_constant_limit(2) == Approx(0.2820948).epsilon(1e-7));
  CHECK(sobolev_constant_limit(1) == Approx(0.5).epsilon(1e-15));
  CHECK(sobolev_constant_limit(3) == Approx(0.2067834).epsilon(1e-7));
}

TEST_CASE("talenti constant") {
  CHECK(sobolev_constant(2, 1.0001) == Approx(sobolev_constant_limit(2)).epsilon(1e-3));
  CHECK(sobolev_constant(3, 2.0) == Approx(ref::sobolev_p2(3)).epsilon(1e-12));
  CHECK(sobolev_constant(4, 2.0) == Approx(ref::sobolev_p2(4)).epsilon(1e-12));
  const double s = sobolev_constant(2, 1.5);
  CHECK(s > 0.0);
  CHECK(s < 1.0);
  for (int n = 2; n <= 6; ++n) {
    for (double p : {1.001, 1.1, 1.5, 1.9}) {
      if (p < n) {
        CHECK(sobolev_constant(n, p) == Approx(ref::talenti(n, p)).epsilon(1e-11));
      }
    }
  }
  CHECK_THROWS_AS(sobolev_constant(2, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(sobolev_constant(2, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(sobolev_constant(1, 1.5), std::invalid_argument);
}

TEST_CASE("sobolev constant converges monotonically as p -> 1") {
  for (int n : {2, 3, 4}) {
    const double limit = sobolev_constant_limit(n);
    double prev_gap = INFINITY;
    double prev_pow = INFINITY;
    for (double p : {1.1, 1.01, 1.001}) {
      const double s = sobolev_constant(n, p);
      const double gap = std::abs(s - limit);
      CHECK(gap < prev_gap);
      const double powered = std::pow(s, 1.0 / (p - 1.0));
      CHECK(powered < prev_pow);
      prev_gap = gap;
      prev_pow = powered;
    }
    CHECK(prev_gap < 1e-2 * limit);
    CHECK(prev_pow < 1e-100);
  }
}

TEST_CASE("smallness condition") {
  CHECK(smallness_check(2, 1.0, 1.0));
  CHECK_FALSE(smallness_check(2, 4.0, 1.0));
  for (int n = 1; n <= 5; ++n) {
    CHECK(smallness_check(n, 1e-9, 1.0));
  }
  CHECK_THROWS_AS(smallness_check(2, -1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(smallness_check(2, 1.0, 0.0), std::invalid_argument);
}
