#include "plateau/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace plateau {

DomainSpec::DomainSpec(DomainKind kind, int dim, double radius)
    : kind_(kind), dim_(dim), radius_(radius) {
  if (dim < 1) {
    throw std::invalid_argument("domain dimension must be >= 1");
  }
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw std::invalid_argument("domain radius must be positive");
  }
  if (kind == DomainKind::interval && dim != 1) {
    throw std::invalid_argument("an interval domain must have dim = 1");
  }
}

double DomainSpec::volume() const { return unit_ball_volume(dim_) * std::pow(radius_, dim_); }

double DomainSpec::perimeter() const {
  return unit_sphere_area(dim_) * std::pow(radius_, dim_ - 1);
}

double unit_ball_volume(int dim) {
  if (dim < 1) {
    throw std::invalid_argument("unit_ball_volume: dim must be >= 1");
  }
  const double half = 0.5 * dim;
  return std::pow(std::numbers::pi, half) / std::tgamma(half + 1.0);
}

double unit_sphere_area(int dim) { return dim * unit_ball_volume(dim); }

CheegerBounds cheeger_bounds(const DomainSpec& domain) {
  const int n = domain.dim();
  const double vol = domain.volume();
  CheegerBounds b;
  b.lower = n * std::pow(unit_ball_volume(n), 1.0 / n) * std::pow(vol, -1.0 / n);
  b.upper = domain.perimeter() / vol;
  b.exact = cheeger_constant(domain);
  return b;
}

double cheeger_constant(const DomainSpec& domain) {
  // h(B_R) = N / R; the interval (-R, R) is the 1D ball.
  return domain.dim() / domain.radius();
}

double sobolev_constant(int dim, double p) {
  if (dim < 2) {
    throw std::invalid_argument("sobolev_constant: dim must be >= 2");
  }
  const double n = dim;
  if (!(p > 1.0) || !(p < n)) {
    throw std::invalid_argument("sobolev_constant: p must lie in (1, dim)");
  }
  const double log_gamma_ratio = std::lgamma(1.0 + n / 2.0) + std::lgamma(n) -
                                 std::lgamma(n / p) - std::lgamma(1.0 + n - n / p);
  const double log_s = -0.5 * std::log(std::numbers::pi) - std::log(n) / p +
                       (1.0 - 1.0 / p) * std::log((p - 1.0) / (n - p)) + log_gamma_ratio / n;
  return std::exp(log_s);
}

double sobolev_constant_limit(int dim) {
  if (dim < 1) {
    throw std::invalid_argument("sobolev_constant_limit: dim must be >= 1");
  }
  return 1.0 / (dim * std::pow(unit_ball_volume(dim), 1.0 / dim));
}

bool smallness_check(int dim, double lambda, double f_norm) {
  if (!(lambda > 0.0) || !(f_norm > 0.0)) {
    throw std::invalid_argument("smallness_check: lambda and ||f|| must be positive");
  }
  return lambda * sobolev_constant_limit(dim) * f_norm < 1.0;
}

} // namespace plateau
