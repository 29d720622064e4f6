#pragma once

#include <vector>

#include "plateau/grid.hpp"

namespace plateau {

/// Explicit nonconstant solution of the gamma = 1 problem on the unit ball
/// with constant source lambda > N:
///
///   u(r) = 1 - (lambda/N)^{N-1} e^{N-lambda}   r <= N/lambda   (plateau)
///   u(r) = 1 - r^{-(N-1)} e^{lambda (r-1)}       N/lambda < r <= 1
///
/// with radial field z = -lambda r / N on the plateau and z = -1 outside.
struct RadialExplicitSolution {
  int dim;
  double lambda;
  double plateau_radius;
  double plateau_value;
};

/// Throws std::domain_error unless lambda > dim.
RadialExplicitSolution explicit_solution(int dim, double lambda);

double oracle_u(int dim, double lambda, double r);
double oracle_z(int dim, double lambda, double r);

/// Radial field -lambda r / N that pairs with u = 0 when lambda <= N.
double oracle_trivial_z(int dim, double lambda, double r);

struct FigureRow {
  double x;
  double lambda;
  double u;
};

/// 1D curves u(x) on a uniform grid over [-1, 1], one block of rows per lambda.
std::vector<FigureRow> sample_figure1(const std::vector<double>& lambdas, int samples);

/// Grid point j of a uniform symmetric sampling of [-1, 1].
double symmetric_sample(int j, int samples);

/// Nodal u and midpoint z of an explicit solution on a unit-radius grid.
/// lambda <= dim samples the trivial pair (u = 0, z = -lambda r / N).
struct OracleSampling {
  RadialGrid grid;
  std::vector<double> u;
  std::vector<double> z;
};

OracleSampling sample_oracle(int dim, double lambda, std::size_t mesh_size);

} // namespace plateau
