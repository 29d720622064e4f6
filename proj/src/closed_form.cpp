#include "plateau/closed_form.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace plateau {

namespace {

void require_nontrivial(int dim, double lambda) {
  if (dim < 1) {
    throw std::domain_error("dimension must be >= 1");
  }
  if (!(lambda > dim)) {
    throw std::domain_error("lambda = " + std::to_string(lambda) + " <= h(B_1) = " +
                            std::to_string(dim) + ": only the trivial solution u = 0 exists");
  }
}

void require_unit_radius(double r) {
  if (!(r >= 0.0 && r <= 1.0)) {
    throw std::domain_error("radial coordinate must lie in [0, 1]");
  }
}

// log(1 - u) on the moving region: lambda (r - 1) - (N - 1) log r.
double log_gap_outer(int dim, double lambda, double r) {
  const double tail = dim == 1 ? 0.0 : (dim - 1) * std::log(r);
  return lambda * (r - 1.0) - tail;
}

} // namespace

RadialExplicitSolution explicit_solution(int dim, double lambda) {
  require_nontrivial(dim, lambda);
  const double ratio = lambda / dim;
  const double log_gap = (dim - 1) * std::log(ratio) + dim - lambda;
  return {dim, lambda, dim / lambda, -std::expm1(log_gap)};
}

double oracle_u(int dim, double lambda, double r) {
  const auto sol = explicit_solution(dim, lambda);
  require_unit_radius(r);
  if (r <= sol.plateau_radius) {
    return sol.plateau_value;
  }
  return -std::expm1(log_gap_outer(dim, lambda, r));
}

double oracle_z(int dim, double lambda, double r) {
  const auto sol = explicit_solution(dim, lambda);
  require_unit_radius(r);
  if (r <= sol.plateau_radius) {
    return -lambda * r / dim;
  }
  return -1.0;
}

double oracle_trivial_z(int dim, double lambda, double r) {
  if (dim < 1) {
    throw std::domain_error("dimension must be >= 1");
  }
  if (!(lambda <= dim)) {
    throw std::domain_error("lambda > h(B_1): the trivial field does not apply");
  }
  require_unit_radius(r);
  return -lambda * r / dim;
}

double symmetric_sample(int j, int samples) {
  return static_cast<double>(2 * j - (samples - 1)) / static_cast<double>(samples - 1);
}

std::vector<FigureRow> sample_figure1(const std::vector<double>& lambdas, int samples) {
  if (samples < 2) {
    throw std::invalid_argument("sample_figure1: samples must be >= 2");
  }
  for (double lambda : lambdas) {
    if (!(lambda > 1.0)) {
      throw std::domain_error("sample_figure1: every lambda must exceed h((-1, 1)) = 1");
    }
  }
  std::vector<FigureRow> rows;
  rows.reserve(lambdas.size() * static_cast<std::size_t>(samples));
  for (double lambda : lambdas) {
    for (int j = 0; j < samples; ++j) {
      const double x = symmetric_sample(j, samples);
      rows.push_back({x, lambda, oracle_u(1, lambda, std::abs(x))});
    }
  }
  return rows;
}

OracleSampling sample_oracle(int dim, double lambda, std::size_t mesh_size) {
  if (!(lambda >= 0.0)) {
    throw std::invalid_argument("sample_oracle: lambda must be nonnegative");
  }
  OracleSampling s{RadialGrid(dim, 1.0, mesh_size), {}, {}};
  s.u.resize(s.grid.node_count());
  s.z.resize(s.grid.mesh_size());
  const bool trivial = lambda <= dim;
  for (std::size_t i = 0; i < s.u.size(); ++i) {
    s.u[i] = trivial ? 0.0 : oracle_u(dim, lambda, s.grid.node(i));
  }
  for (std::size_t i = 0; i < s.z.size(); ++i) {
    const double r = s.grid.midpoint(i);
    s.z[i] = trivial ? oracle_trivial_z(dim, lambda, r) : oracle_z(dim, lambda, r);
  }
  return s;
}

} // namespace plateau
