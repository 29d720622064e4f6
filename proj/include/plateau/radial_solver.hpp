#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "plateau/geometry.hpp"
#include "plateau/grid.hpp"
#include "plateau/scalar_calculus.hpp"

namespace plateau {

struct ConstantSource {
  double lambda;
};

/// Nodal samples g(r_i), i = 0..M, on the solve grid.
struct ProfileSource {
  std::vector<double> values;
};

using Source = std::variant<ConstantSource, ProfileSource>;

class ProblemSpec {
public:
  ProblemSpec(DomainSpec domain, Gamma gamma, Source source);

  static ProblemSpec constant(DomainSpec domain, Gamma gamma, double lambda) {
    return {domain, gamma, ConstantSource{lambda}};
  }

  const DomainSpec& domain() const noexcept { return domain_; }
  Gamma gamma() const noexcept { return gamma_; }
  const Source& source() const noexcept { return source_; }

  bool has_constant_source() const noexcept;
  /// Throws std::logic_error for a profile source.
  double lambda() const;

  double source_at(const RadialGrid& grid, std::size_t node) const;
  /// ||g||_{L^1(Omega)}.
  double source_l1(const RadialGrid& grid) const;
  /// ||g||_{L^N(Omega)}.
  double source_ln(const RadialGrid& grid) const;

  /// Throws GridMismatch when the grid does not discretize this problem.
  void check_grid(const RadialGrid& grid) const;

private:
  DomainSpec domain_;
  Gamma gamma_;
  Source source_;
};

/// One rung of the approximation ladder: p-Laplacian exponent, truncation
/// index of h_n, gradient smoothing eps and mesh size.
class RegularizationState {
public:
  RegularizationState(double p, std::int64_t n, double eps, std::size_t mesh_size);

  double p() const noexcept { return p_; }
  std::int64_t n() const noexcept { return n_; }
  double eps() const noexcept { return eps_; }
  std::size_t mesh_size() const noexcept { return mesh_size_; }

  /// Smoothed p-flux phi_eps(s) = (s^2 + eps^2)^{(p-2)/2} s.
  double flux(double slope) const;
  double flux_derivative(double slope) const;

  bool operator==(const RegularizationState&) const = default;

private:
  double p_;
  std::int64_t n_;
  double eps_;
  std::size_t mesh_size_;
};

struct Rung {
  RegularizationState state;
  double tolerance = 1e-9;
  int max_iterations = 200;
};

/// Ordered rungs with p strictly decreasing, n nondecreasing, eps nonincreasing.
class ContinuationSchedule {
public:
  explicit ContinuationSchedule(std::vector<Rung> rungs);

  /// Named presets: "default", "fast", "tight".
  static ContinuationSchedule preset(const std::string& name, std::size_t mesh_size);
  /// Explicit list "p:n:eps,p:n:eps,...".
  static ContinuationSchedule parse(const std::string& text, std::size_t mesh_size);
  static std::vector<std::string> preset_names();

  const std::vector<Rung>& rungs() const noexcept { return rungs_; }
  std::string describe() const;

private:
  std::vector<Rung> rungs_;
};

struct DiscreteSolution {
  RadialGrid grid;
  RegularizationState state;
  std::vector<double> u;        // nodes 0..M, u[M] = 0
  std::vector<double> slopes;   // D_{i+1/2}, i = 0..M-1
  std::vector<double> z;        // phi_eps(D_{i+1/2})
  std::vector<double> residual; // interior nodes 0..M-1
  int iterations = 0;
  double residual_norm = 0.0;
};

struct RungDiagnostics {
  std::size_t index;
  RegularizationState state;
  int iterations;
  double residual_norm;
  double w1p_seminorm; // (int |Du|^p)^{1/p}
  double sup_norm;
  double plateau_extent;
};

struct ContinuationResult {
  DiscreteSolution solution; // last rung
  std::vector<DiscreteSolution> history;
  std::vector<RungDiagnostics> rungs;
};

class SolverError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;

  std::optional<std::size_t> rung;
  /// Rungs completed before the failure, when raised by continuation_solve.
  std::shared_ptr<const ContinuationResult> partial;
};

class NonConvergence : public SolverError {
public:
  NonConvergence(const std::string& what, int iterations, double residual_norm)
      : SolverError(what), iterations(iterations), residual_norm(residual_norm) {}

  int iterations;
  double residual_norm;
};

/// Zero pivot in the Newton system; eps is too small for the current p.
class SingularJacobian : public SolverError {
public:
  using SolverError::SolverError;
};

struct Tridiagonal {
  std::vector<double> lower; // J(i, i-1), i = 1..M-1
  std::vector<double> diag;
  std::vector<double> upper; // J(i, i+1), i = 0..M-2

  void multiply(std::span<const double> x, std::span<double> y) const;
};

/// Finite-volume residual of
///   -div(|Du|^{p-2} Du) + h_n(u) |Du|^p = g
/// at nodes 0..M-1 (u[M] = 0 is the Dirichlet node).
std::vector<double> assemble_residual(const ProblemSpec& spec, const RegularizationState& state,
                                      const RadialGrid& grid, std::span<const double> u);

/// Exact Jacobian of assemble_residual with respect to u_0..u_{M-1}.
Tridiagonal assemble_jacobian(const ProblemSpec& spec, const RegularizationState& state,
                              const RadialGrid& grid, std::span<const double> u);

struct NewtonControls {
  double tolerance = 1e-9;
  int max_iterations = 200;
  double step_tolerance = 1e-12;
};

DiscreteSolution newton_solve(const ProblemSpec& spec, const RegularizationState& state,
                              const RadialGrid& grid, std::span<const double> u0,
                              const NewtonControls& controls = {});

/// Solves the rungs in order, each warm-started from the previous one.
ContinuationResult continuation_solve(const ProblemSpec& spec,
                                      const ContinuationSchedule& schedule,
                                      const RadialGrid& grid);

/// Midpoint flux z_{i+1/2} = phi_eps((u_{i+1} - u_i) / dr).
std::vector<double> reconstruct_flux(const RegularizationState& state, const RadialGrid& grid,
                                     std::span<const double> u);

/// Largest r_j with |D| <= slope_floor on every midpoint of [0, r_j].
double plateau_extent(const RadialGrid& grid, std::span<const double> slopes, double slope_floor);

struct AprioriReport {
  double w1p_energy;      // int |Du|^p
  double w1p_seminorm;    // w1p_energy^{1/p}
  double absorption_mass; // int h_n(u) |Du|^p
  double g_l1;
  bool pbound_holds;      // w1p_energy <= ||g||_1 (1 + slack)
  bool absorption_bound_holds; // absorption_mass <= ||g||_1 (1 + slack)
};

AprioriReport apriori_bounds_report(const ProblemSpec& spec, const RegularizationState& state,
                                    const DiscreteSolution& solution, double slack = 0.05);

} // namespace plateau
