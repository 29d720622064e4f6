#pragma once

#include <optional>
#include <span>
#include <vector>

#include "plateau/closed_form.hpp"
#include "plateau/grid.hpp"
#include "plateau/radial_solver.hpp"

namespace plateau {

/// Read-only view of a candidate pair (u at nodes, radial z at midpoints).
struct FieldView {
  const RadialGrid& grid;
  std::span<const double> u;
  std::span<const double> z;

  FieldView(const RadialGrid& g, std::span<const double> u_, std::span<const double> z_)
      : grid(g), u(u_), z(z_) {}
  FieldView(const DiscreteSolution& s) : grid(s.grid), u(s.u), z(s.z) {}
  FieldView(const OracleSampling& s) : grid(s.grid), u(s.u), z(s.z) {}
};

struct VerifyTolerances {
  double slope_floor = 1e-6;
  double field_bound = 0.05;
  double pairing = 0.05;
  double equation = 0.02;  // flux-form defect
  double trace = 1e-12;
  double jump_slope = 100.0; // max |u_{i+1} - u_i| <= jump_slope * dr
  double energy = 0.02;
};

struct ClauseVerdicts {
  bool field_bound = false;
  bool pairing = false;
  bool equation = false;
  bool trace = false;
  bool continuity = false;
  bool energy = false; // true when the identity does not apply

  bool all() const { return field_bound && pairing && equation && trace && continuity && energy; }
};

struct VerificationReport {
  double field_bound_defect = 0.0;    // max(0, max|z| - 1)
  double pairing_defect = 0.0;        // max |1 - z sign(D)| where |D| > slope_floor
  double equation_residual = 0.0;     // pointwise max-norm at interior nodes
  double equation_flux_defect = 0.0;  // max over balls B_r of the integrated residual / r^{N-1}
  double trace_value = 0.0;           // |u_M|
  double max_jump = 0.0;              // max |u_{i+1} - u_i|
  std::optional<double> energy_gap;   // gamma = 1, constant source only
  double plateau_radius_estimate = 0.0;
  double mesh_spacing = 0.0;
  ClauseVerdicts verdict;

  bool passed() const { return verdict.all(); }
};

/// Checks every discrete clause of the solution concept on a candidate pair.
/// Throws GridMismatch when the field does not live on a grid of the problem.
VerificationReport verify(const FieldView& field, const ProblemSpec& spec,
                          const VerifyTolerances& tol = {});

/// Pointwise residual -div z + |D Phi(u)| - g at nodes 0..M-1, with the
/// absorption written as the measure |D Phi(u)|.
std::vector<double> measure_residual(const FieldView& field, const ProblemSpec& spec);

/// |int |Du|/(1-u) - lambda int u| / max(lambda int u, 1e-6 lambda |Omega|).
double energy_identity_check(const FieldView& field, const ProblemSpec& spec);

struct LogSubReport {
  double lhs; // h(Omega) int v, v = -log(1 - u)
  double rhs; // lambda int u
  bool holds;
  bool v_dominates_u;
};

LogSubReport logsub_cheeger_check(const FieldView& field, const ProblemSpec& spec,
                                  double tol = 1e-2);

double plateau_radius(const FieldView& field, double slope_floor);

struct LevelSetMeasures {
  double excess_integral;    // int |G_k(u)|
  double superlevel_measure; // |{u > k}|
};

LevelSetMeasures level_set_measures(const FieldView& field, double k);

struct LevelSetEntry {
  double k;
  double excess_integral;
  double superlevel_measure;
  double bound;
  bool holds;
};

struct LevelSetOptions {
  double tol = 0.1;
  int levels = 16;
  double zero_level = 1e-6;
};

struct LevelSetReport {
  std::vector<LevelSetEntry> entries;
  bool all_hold = true;
};

/// int |G_k(u)| <= S_{N,p}^{1/(p-1)} ||g||_{L^N}^{1/(p-1)} |A_k|^{1+1/N} (1 + tol)
/// on a ladder of levels in [zero_level, max u).
LevelSetReport level_set_decay_check(const DiscreteSolution& solution, const ProblemSpec& spec,
                                     const LevelSetOptions& options = {});

enum class RigidityRegime { trivial, nontrivial, indeterminate };

struct RigidityReport {
  double lambda;
  double cheeger;
  double sup_norm;
  RigidityRegime expected;
  bool consistent;
};

/// lambda <= h expects ||u||_inf <= zero_level; lambda >= h + margin expects
/// ||u||_inf >= nontrivial_floor.
RigidityReport rigidity_check(const FieldView& field, const ProblemSpec& spec,
                              double zero_level = 1e-6, double nontrivial_floor = 0.1,
                              double margin = 0.5);

} // namespace plateau
