#pragma once

#include <optional>

namespace plateau {

enum class DomainKind { ball, interval };

/// A ball B_R in R^N, or the symmetric interval (-R, R) (N = 1).
class DomainSpec {
public:
  DomainSpec(DomainKind kind, int dim, double radius);

  static DomainSpec ball(int dim, double radius = 1.0) { return {DomainKind::ball, dim, radius}; }
  static DomainSpec interval(double radius = 1.0) { return {DomainKind::interval, 1, radius}; }

  DomainKind kind() const noexcept { return kind_; }
  int dim() const noexcept { return dim_; }
  double radius() const noexcept { return radius_; }

  double volume() const;
  double perimeter() const;

private:
  DomainKind kind_;
  int dim_;
  double radius_;
};

struct CheegerBounds {
  double lower;
  double upper;
  std::optional<double> exact;
};

/// omega_N = pi^{N/2} / Gamma(N/2 + 1).
double unit_ball_volume(int dim);

/// Surface area of the unit sphere, N * omega_N (2 for N = 1).
double unit_sphere_area(int dim);

/// Isoperimetric lower bound, P/|Omega| upper bound and the exact value for
/// balls and intervals (both bounds are attained there).
CheegerBounds cheeger_bounds(const DomainSpec& domain);

/// Exact Cheeger constant of a supported domain.
double cheeger_constant(const DomainSpec& domain);

/// Talenti's sharp constant in ||u||_{p*} <= S ||Du||_p, 1 < p < dim.
double sobolev_constant(int dim, double p);

/// The p -> 1+ limit 1/(N omega_N^{1/N}).
double sobolev_constant_limit(int dim);

/// lambda * S_{N,1} * ||f||_{L^N} < 1.
bool smallness_check(int dim, double lambda, double f_norm);

} // namespace plateau
