#include "plateau/radial_solver.hpp"

#include <lapacke.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>

namespace plateau {

// ---------------------------------------------------------------- problem

ProblemSpec::ProblemSpec(DomainSpec domain, Gamma gamma, Source source)
    : domain_(domain), gamma_(gamma), source_(std::move(source)) {
  if (const auto* c = std::get_if<ConstantSource>(&source_)) {
    if (!(c->lambda >= 0.0) || !std::isfinite(c->lambda)) {
      throw std::invalid_argument("source must be nonnegative");
    }
  } else {
    const auto& values = std::get<ProfileSource>(source_).values;
    for (double g : values) {
      if (!(g >= 0.0) || !std::isfinite(g)) {
        throw std::invalid_argument("source must be nonnegative");
      }
    }
  }
}

bool ProblemSpec::has_constant_source() const noexcept {
  return std::holds_alternative<ConstantSource>(source_);
}

double ProblemSpec::lambda() const {
  if (const auto* c = std::get_if<ConstantSource>(&source_)) {
    return c->lambda;
  }
  throw std::logic_error("problem has a non-constant source");
}

double ProblemSpec::source_at(const RadialGrid& grid, std::size_t node) const {
  if (const auto* c = std::get_if<ConstantSource>(&source_)) {
    return c->lambda;
  }
  const auto& values = std::get<ProfileSource>(source_).values;
  if (values.size() != grid.node_count()) {
    throw GridMismatch("source profile has " + std::to_string(values.size()) +
                       " samples but the grid has " + std::to_string(grid.node_count()) +
                       " nodes");
  }
  return values[node];
}

double ProblemSpec::source_l1(const RadialGrid& grid) const {
  if (const auto* c = std::get_if<ConstantSource>(&source_)) {
    return c->lambda * domain_.volume();
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < grid.node_count(); ++i) {
    sum += source_at(grid, i) * grid.control_volume(i);
  }
  return unit_sphere_area(grid.dim()) * sum;
}

double ProblemSpec::source_ln(const RadialGrid& grid) const {
  const int n = domain_.dim();
  if (const auto* c = std::get_if<ConstantSource>(&source_)) {
    return c->lambda * std::pow(domain_.volume(), 1.0 / n);
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < grid.node_count(); ++i) {
    sum += std::pow(source_at(grid, i), n) * grid.control_volume(i);
  }
  return std::pow(unit_sphere_area(n) * sum, 1.0 / n);
}

void ProblemSpec::check_grid(const RadialGrid& grid) const {
  if (grid.dim() != domain_.dim() || grid.radius() != domain_.radius()) {
    throw GridMismatch("grid does not cover the problem domain");
  }
  if (const auto* prof = std::get_if<ProfileSource>(&source_)) {
    if (prof->values.size() != grid.node_count()) {
      throw GridMismatch("source profile length does not match the grid");
    }
  }
}

// ---------------------------------------------------------------- state

RegularizationState::RegularizationState(double p, std::int64_t n, double eps,
                                         std::size_t mesh_size)
    : p_(p), n_(n), eps_(eps), mesh_size_(mesh_size) {
  if (!(p > 1.0) || !std::isfinite(p)) {
    throw std::invalid_argument("regularization: p must be > 1");
  }
  if (n < 1) {
    throw std::invalid_argument("regularization: n must be >= 1");
  }
  if (!(eps > 0.0)) {
    throw std::invalid_argument("regularization: eps must be > 0");
  }
  if (mesh_size < 8) {
    throw std::invalid_argument("regularization: mesh size must be >= 8");
  }
}

double RegularizationState::flux(double slope) const {
  const double t = slope * slope + eps_ * eps_;
  return std::pow(t, 0.5 * (p_ - 2.0)) * slope;
}

double RegularizationState::flux_derivative(double slope) const {
  const double s2 = slope * slope;
  const double e2 = eps_ * eps_;
  const double t = s2 + e2;
  return std::pow(t, 0.5 * (p_ - 4.0)) * ((p_ - 1.0) * s2 + e2);
}

// ---------------------------------------------------------------- schedule

ContinuationSchedule::ContinuationSchedule(std::vector<Rung> rungs) : rungs_(std::move(rungs)) {
  if (rungs_.empty()) {
    throw std::invalid_argument("schedule must contain at least one rung");
  }
  for (std::size_t k = 1; k < rungs_.size(); ++k) {
    const auto& a = rungs_[k - 1].state;
    const auto& b = rungs_[k].state;
    if (!(b.p() < a.p())) {
      throw std::invalid_argument("schedule: p must be strictly decreasing");
    }
    if (b.n() < a.n()) {
      throw std::invalid_argument("schedule: n must be nondecreasing");
    }
    if (b.eps() > a.eps()) {
      throw std::invalid_argument("schedule: eps must be nonincreasing");
    }
    if (b.mesh_size() != a.mesh_size()) {
      throw std::invalid_argument("schedule: all rungs must share one mesh");
    }
  }
  for (const auto& r : rungs_) {
    if (!(r.tolerance > 0.0) || r.max_iterations < 1) {
      throw std::invalid_argument("schedule: tolerance and iteration cap must be positive");
    }
  }
}

namespace {

struct RungSpec {
  double p;
  std::int64_t n;
  double eps;
};

const std::vector<RungSpec>& default_ladder() {
  static const std::vector<RungSpec> ladder = {
      {1.5, 100, 1e-3},         {1.3, 1000, 1e-4},        {1.1, 10000, 1e-5},
      {1.05, 100000, 1e-6},     {1.01, 1000000, 1e-7},    {1.003, 1000000, 1e-8},
      {1.001, 1000000, 1e-9},   {1.0001, 1000000, 1e-9},  {1.00001, 1000000, 1e-9},
  };
  return ladder;
}

std::vector<RungSpec> ladder_for(const std::string& name) {
  if (name == "default") {
    return default_ladder();
  }
  if (name == "fast") {
    return {{1.5, 100, 1e-3}, {1.2, 1000, 1e-5}, {1.05, 10000, 1e-7}, {1.01, 100000, 1e-8},
            {1.001, 1000000, 1e-9}};
  }
  if (name == "tight") {
    auto ladder = default_ladder();
    ladder.push_back({1.000001, 1000000, 1e-9});
    return ladder;
  }
  throw std::invalid_argument("unknown schedule preset '" + name + "'");
}

double parse_number(std::string_view text) {
  double value = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw std::invalid_argument("schedule: cannot parse number '" + std::string(text) + "'");
  }
  return value;
}

} // namespace

ContinuationSchedule ContinuationSchedule::preset(const std::string& name, std::size_t mesh_size) {
  std::vector<Rung> rungs;
  for (const auto& r : ladder_for(name)) {
    rungs.push_back({RegularizationState(r.p, r.n, r.eps, mesh_size)});
  }
  return ContinuationSchedule(std::move(rungs));
}

std::vector<std::string> ContinuationSchedule::preset_names() { return {"default", "fast", "tight"}; }

ContinuationSchedule ContinuationSchedule::parse(const std::string& text, std::size_t mesh_size) {
  std::vector<Rung> rungs;
  std::stringstream list(text);
  std::string item;
  while (std::getline(list, item, ',')) {
    std::vector<std::string> parts;
    std::stringstream fields(item);
    std::string f;
    while (std::getline(fields, f, ':')) {
      parts.push_back(f);
    }
    if (parts.size() != 3) {
      throw std::invalid_argument("schedule: rung '" + item + "' is not of the form p:n:eps");
    }
    const double n = parse_number(parts[1]);
    if (n < 1.0 || n != std::floor(n) || n > 9.0e15) {
      throw std::invalid_argument("schedule: n must be a positive integer");
    }
    rungs.push_back({RegularizationState(parse_number(parts[0]), static_cast<std::int64_t>(n),
                                         parse_number(parts[2]), mesh_size)});
  }
  return ContinuationSchedule(std::move(rungs));
}

std::string ContinuationSchedule::describe() const {
  std::ostringstream out;
  out.precision(17);
  for (std::size_t k = 0; k < rungs_.size(); ++k) {
    const auto& s = rungs_[k].state;
    out << (k ? "," : "") << s.p() << ':' << s.n() << ':' << s.eps();
  }
  return out.str();
}

// ---------------------------------------------------------------- assembly

void Tridiagonal::multiply(std::span<const double> x, std::span<double> y) const {
  const std::size_t m = diag.size();
  for (std::size_t i = 0; i < m; ++i) {
    double v = diag[i] * x[i];
    if (i > 0) {
      v += lower[i - 1] * x[i - 1];
    }
    if (i + 1 < m) {
      v += upper[i] * x[i + 1];
    }
    y[i] = v;
  }
}

namespace {

void check_nodal(const RadialGrid& grid, std::span<const double> u) {
  if (u.size() != grid.node_count()) {
    throw GridMismatch("nodal vector length does not match the grid");
  }
  for (double v : u) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("nodal values must be finite");
    }
  }
  if (u.back() != 0.0) {
    throw std::invalid_argument("Dirichlet node must carry u_M = 0");
  }
}

std::vector<double> slopes_of(const RadialGrid& grid, std::span<const double> u) {
  const double h = grid.spacing();
  std::vector<double> d(grid.mesh_size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    d[i] = (u[i + 1] - u[i]) / h;
  }
  return d;
}

// Rebuilds u from slopes by summing inward from u_M = 0.
void nodal_from_slopes(const RadialGrid& grid, std::span<const double> d, std::vector<double>& u) {
  const double h = grid.spacing();
  u.assign(grid.node_count(), 0.0);
  for (std::size_t i = d.size(); i-- > 0;) {
    u[i] = u[i + 1] - h * d[i];
  }
}

// Slope on the left of node i; the reflected ghost D_{-1/2} = -D_{1/2} at the origin.
double left_slope(std::span<const double> d, std::size_t i) { return i == 0 ? -d[0] : d[i - 1]; }

struct Discretization {
  const ProblemSpec& spec;
  const RegularizationState& state;
  const RadialGrid& grid;
  std::vector<double> volume;
  std::vector<double> mid_weight;
  std::vector<double> source;

  Discretization(const ProblemSpec& s, const RegularizationState& st, const RadialGrid& g)
      : spec(s), state(st), grid(g) {
    s.check_grid(g);
    if (st.mesh_size() != g.mesh_size()) {
      throw GridMismatch("regularization state and grid disagree on the mesh size");
    }
    const std::size_t m = g.mesh_size();
    volume.resize(m);
    mid_weight.resize(m);
    source.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      volume[i] = g.control_volume(i);
      mid_weight[i] = g.midpoint_weight(i);
      source[i] = s.source_at(g, i);
    }
  }

  double nodal_gradient(std::span<const double> d, std::size_t i) const {
    const double dl = left_slope(d, i);
    const double e = state.eps();
    return std::sqrt(0.5 * (dl * dl + d[i] * d[i]) + e * e);
  }

  void residual(std::span<const double> d, std::span<const double> u, std::span<double> out) const {
    const std::size_t m = grid.mesh_size();
    const double p = state.p();
    double flux_left = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double flux_right = mid_weight[i] * state.flux(d[i]);
      const double q = nodal_gradient(d, i);
      const double absorption =
          absorption_truncated(u[i], state.n(), spec.gamma()) * std::pow(q, p);
      out[i] = -(flux_right - flux_left) / volume[i] + absorption - source[i];
      flux_left = flux_right;
    }
  }

  Tridiagonal jacobian(std::span<const double> d, std::span<const double> u) const {
    const std::size_t m = grid.mesh_size();
    const double h = grid.spacing();
    const double p = state.p();
    Tridiagonal j;
    j.lower.assign(m - 1, 0.0);
    j.diag.assign(m, 0.0);
    j.upper.assign(m - 1, 0.0);

    for (std::size_t i = 0; i < m; ++i) {
      // Flux differences.
      const double cr = mid_weight[i] * state.flux_derivative(d[i]) / (h * volume[i]);
      j.diag[i] += cr;
      if (i + 1 < m) {
        j.upper[i] -= cr;
      }
      if (i > 0) {
        const double cl = mid_weight[i - 1] * state.flux_derivative(d[i - 1]) / (h * volume[i]);
        j.diag[i] += cl;
        j.lower[i - 1] -= cl;
      }

      // Absorption h_n(u_i) q_i^p.
      const double q = nodal_gradient(d, i);
      const double hn = absorption_truncated(u[i], state.n(), spec.gamma());
      const double dhn = absorption_truncated_derivative(u[i], state.n(), spec.gamma());
      const double dq2 = 0.5 * p * std::pow(q, p - 2.0) * hn; // d(h q^p)/d(q^2)
      j.diag[i] += dhn * std::pow(q, p);
      if (i == 0) {
        // q^2 = D_{1/2}^2 + eps^2
        j.diag[0] += dq2 * (-2.0 * d[0] / h);
        if (m > 1) {
          j.upper[0] += dq2 * (2.0 * d[0] / h);
        }
      } else {
        const double dl = d[i - 1];
        j.diag[i] += dq2 * (dl - d[i]) / h;
        j.lower[i - 1] += dq2 * (-dl / h);
        if (i + 1 < m) {
          j.upper[i] += dq2 * (d[i] / h);
        }
      }
    }
    return j;
  }
};

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) {
    m = std::max(m, std::abs(x));
  }
  return m;
}

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) {
    s += x * x;
  }
  return std::sqrt(s);
}

// Solves J x = b in place (b becomes x). LAPACK gtsv with partial pivoting.
void solve_tridiagonal(Tridiagonal j, std::vector<double>& b) {
  const auto n = static_cast<lapack_int>(j.diag.size());
  const lapack_int info = LAPACKE_dgtsv(LAPACK_COL_MAJOR, n, 1, j.lower.data(), j.diag.data(),
                                        j.upper.data(), b.data(), n);
  if (info > 0) {
    throw SingularJacobian("Newton system is singular at pivot " + std::to_string(info) +
                           "; eps is too small for the current p");
  }
  if (info < 0) {
    throw std::logic_error("dgtsv rejected argument " + std::to_string(-info));
  }
  for (double v : b) {
    if (!std::isfinite(v)) {
      throw SingularJacobian("Newton correction is not finite; eps is too small for the current p");
    }
  }
}

DiscreteSolution newton_from_slopes(const ProblemSpec& spec, const RegularizationState& state,
                                    const RadialGrid& grid, std::vector<double> d,
                                    const NewtonControls& controls) {
  const Discretization disc(spec, state, grid);
  const std::size_t m = grid.mesh_size();
  const double h = grid.spacing();

  std::vector<double> u;
  nodal_from_slopes(grid, d, u);
  std::vector<double> res(m);
  disc.residual(d, u, res);

  std::vector<double> trial_d(m);
  std::vector<double> trial_u;
  std::vector<double> trial_res(m);

  int iterations = 0;
  double res_max = max_abs(res);
  bool converged = res_max <= controls.tolerance;

  while (!converged && iterations < controls.max_iterations) {
    std::vector<double> du(res.size());
    std::transform(res.begin(), res.end(), du.begin(), [](double r) { return -r; });
    solve_tridiagonal(disc.jacobian(d, u), du);
    ++iterations;

    const double step_size = max_abs(du);
    const double res_norm = norm2(res);
    double damping = 1.0;
    bool accepted = false;
    for (int k = 0; k < 40; ++k) {
      for (std::size_t i = 0; i < m; ++i) {
        const double next = i + 1 < m ? du[i + 1] : 0.0;
        trial_d[i] = d[i] + damping * (next - du[i]) / h;
      }
      nodal_from_slopes(grid, trial_d, trial_u);
      disc.residual(trial_d, trial_u, trial_res);
      const double trial_norm = norm2(trial_res);
      if (std::isfinite(trial_norm) && trial_norm <= (1.0 - 1e-4 * damping) * res_norm) {
        accepted = true;
        break;
      }
      damping *= 0.5;
    }

    const bool tiny_step = step_size <= controls.step_tolerance * std::max(1.0, max_abs(u));
    if (!accepted) {
      if (tiny_step) {
        converged = true;
        break;
      }
      throw NonConvergence("line search failed after " + std::to_string(iterations) +
                               " Newton iterations (max residual " + std::to_string(res_max) + ")",
                           iterations, res_max);
    }
    d.swap(trial_d);
    u.swap(trial_u);
    res.swap(trial_res);
    res_max = max_abs(res);
    converged = res_max <= controls.tolerance || (damping == 1.0 && tiny_step);
  }

  if (!converged) {
    throw NonConvergence("Newton did not converge in " + std::to_string(iterations) +
                             " iterations (max residual " + std::to_string(res_max) + ")",
                         iterations, res_max);
  }

  DiscreteSolution sol{grid, state, std::move(u), std::move(d), {}, std::move(res), iterations,
                       res_max};
  sol.z.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    sol.z[i] = state.flux(sol.slopes[i]);
  }
  return sol;
}

// Midpoints still inside the regularization band keep their flux value when
// the rung changes; the rest keep their slope.
std::vector<double> warm_start_slopes(const RegularizationState& from,
                                      const RegularizationState& to,
                                      std::span<const double> slopes) {
  constexpr double kBand = 100.0;
  std::vector<double> out(slopes.begin(), slopes.end());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double s = slopes[i];
    if (std::abs(s) > kBand * from.eps() || s == 0.0) {
      continue;
    }
    const double target = std::abs(from.flux(s));
    double lo = 0.0;
    double hi = std::max(std::abs(s), to.eps());
    while (to.flux(hi) < target) {
      hi *= 2.0;
    }
    for (int k = 0; k < 100 && hi - lo > 1e-15 * hi; ++k) {
      const double mid = 0.5 * (lo + hi);
      (to.flux(mid) < target ? lo : hi) = mid;
    }
    out[i] = std::copysign(0.5 * (lo + hi), s);
  }
  return out;
}

double w1p_energy(const RadialGrid& grid, std::span<const double> slopes, double p) {
  double sum = 0.0;
  for (std::size_t i = 0; i < slopes.size(); ++i) {
    sum += grid.midpoint_weight(i) * std::pow(std::abs(slopes[i]), p);
  }
  return unit_sphere_area(grid.dim()) * sum * grid.spacing();
}

} // namespace

std::vector<double> assemble_residual(const ProblemSpec& spec, const RegularizationState& state,
                                      const RadialGrid& grid, std::span<const double> u) {
  check_nodal(grid, u);
  const Discretization disc(spec, state, grid);
  const auto d = slopes_of(grid, u);
  std::vector<double> res(grid.mesh_size());
  disc.residual(d, u, res);
  return res;
}

Tridiagonal assemble_jacobian(const ProblemSpec& spec, const RegularizationState& state,
                              const RadialGrid& grid, std::span<const double> u) {
  check_nodal(grid, u);
  const Discretization disc(spec, state, grid);
  return disc.jacobian(slopes_of(grid, u), u);
}

DiscreteSolution newton_solve(const ProblemSpec& spec, const RegularizationState& state,
                              const RadialGrid& grid, std::span<const double> u0,
                              const NewtonControls& controls) {
  check_nodal(grid, u0);
  return newton_from_slopes(spec, state, grid, slopes_of(grid, u0), controls);
}

ContinuationResult continuation_solve(const ProblemSpec& spec,
                                      const ContinuationSchedule& schedule,
                                      const RadialGrid& grid) {
  spec.check_grid(grid);
  auto result = std::make_shared<ContinuationResult>(ContinuationResult{
      DiscreteSolution{grid, schedule.rungs().front().state, {}, {}, {}, {}, 0, 0.0}, {}, {}});
  std::vector<double> slopes(grid.mesh_size(), 0.0);
  const RegularizationState* previous = nullptr;

  for (std::size_t k = 0; k < schedule.rungs().size(); ++k) {
    const auto& rung = schedule.rungs()[k];
    if (previous != nullptr) {
      slopes = warm_start_slopes(*previous, rung.state, slopes);
    }
    DiscreteSolution sol = [&] {
      try {
        return newton_from_slopes(spec, rung.state, grid, slopes,
                                  {rung.tolerance, rung.max_iterations, 1e-12});
      } catch (SolverError& e) {
        e.rung = k;
        if (!result->history.empty()) {
          result->solution = result->history.back();
        }
        e.partial = result;
        throw;
      }
    }();
    slopes = sol.slopes;
    previous = &rung.state;

    const double energy = w1p_energy(grid, sol.slopes, rung.state.p());
    result->rungs.push_back({k, rung.state, sol.iterations, sol.residual_norm,
                             std::pow(energy, 1.0 / rung.state.p()), max_abs(sol.u),
                             plateau_extent(grid, sol.slopes, 1e-6)});
    result->history.push_back(std::move(sol));
  }
  result->solution = result->history.back();
  return std::move(*result);
}

std::vector<double> reconstruct_flux(const RegularizationState& state, const RadialGrid& grid,
                                     std::span<const double> u) {
  if (u.size() != grid.node_count()) {
    throw GridMismatch("nodal vector length does not match the grid");
  }
  const auto d = slopes_of(grid, u);
  std::vector<double> z(d.size());
  std::transform(d.begin(), d.end(), z.begin(), [&](double s) { return state.flux(s); });
  return z;
}

double plateau_extent(const RadialGrid& grid, std::span<const double> slopes, double slope_floor) {
  for (std::size_t i = 0; i < slopes.size(); ++i) {
    if (std::abs(slopes[i]) > slope_floor) {
      return grid.node(i);
    }
  }
  return grid.radius();
}

AprioriReport apriori_bounds_report(const ProblemSpec& spec, const RegularizationState& state,
                                    const DiscreteSolution& solution, double slack) {
  const auto& grid = solution.grid;
  spec.check_grid(grid);
  const Discretization disc(spec, state, grid);
  const double p = state.p();

  double absorption = 0.0;
  for (std::size_t i = 0; i < grid.mesh_size(); ++i) {
    const double q = disc.nodal_gradient(solution.slopes, i);
    absorption += grid.control_volume(i) *
                  absorption_truncated(solution.u[i], state.n(), spec.gamma()) * std::pow(q, p);
  }
  AprioriReport r{};
  r.w1p_energy = w1p_energy(grid, solution.slopes, p);
  r.w1p_seminorm = std::pow(r.w1p_energy, 1.0 / p);
  r.absorption_mass = unit_sphere_area(grid.dim()) * absorption;
  r.g_l1 = spec.source_l1(grid);
  r.pbound_holds = r.w1p_energy <= r.g_l1 * (1.0 + slack);
  r.absorption_bound_holds = r.absorption_mass <= r.g_l1 * (1.0 + slack);
  return r;
}

} // namespace plateau
