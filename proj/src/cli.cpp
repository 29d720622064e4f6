#include "plateau/cli.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "plateau/closed_form.hpp"
#include "plateau/geometry.hpp"
#include "plateau/radial_solver.hpp"
#include "plateau/solution_io.hpp"
#include "plateau/verifier.hpp"

namespace plateau::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Options {
  int dim = 1;
  double gamma = 1.0;
  std::optional<double> lambda;
  std::string source_file;
  double radius = 1.0;
  std::string domain;
  std::size_t mesh = 4000;
  std::string schedule = "default";
  std::string rungs;
  std::string output;
  std::string format = "csv";
  std::string input;

  // sweep
  std::string mode = "oracle";
  std::string lambdas;
  int samples = 401;
  unsigned threads = 0;

  // smallness
  double fnorm = 1.0;

  VerifyTolerances tol;
};

void add_problem_options(CLI::App* cmd, Options& o, bool with_lambda = true) {
  cmd->add_option("--dim", o.dim, "Space dimension N")->check(CLI::PositiveNumber);
  cmd->add_option("--gamma", o.gamma, "Singular exponent gamma > 0");
  if (with_lambda) {
    cmd->add_option("--lambda", o.lambda, "Constant source g = lambda");
    cmd->add_option("--source-file", o.source_file, "CSV with columns r,g sampled on the mesh");
  }
  cmd->add_option("--radius", o.radius, "Domain radius R");
  cmd->add_option("--domain", o.domain, "ball or interval (default: interval for dim 1)")
      ->check(CLI::IsMember({"ball", "interval"}));
}

void add_tolerance_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--slope-floor", o.tol.slope_floor, "Slopes at or below this are plateau");
  cmd->add_option("--tol-field", o.tol.field_bound, "Tolerance on max(0, max|z| - 1)");
  cmd->add_option("--tol-pairing", o.tol.pairing, "Tolerance on the pairing defect");
  cmd->add_option("--tol-equation", o.tol.equation, "Tolerance on the flux-form equation defect");
  cmd->add_option("--tol-energy", o.tol.energy, "Tolerance on the energy identity gap");
  cmd->add_option("--tol-trace", o.tol.trace, "Tolerance on |u| at r = R");
  cmd->add_option("--jump-slope", o.tol.jump_slope, "Continuity: max jump <= jump_slope * dr");
}

void add_output_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--output", o.output, "Output path stem");
  cmd->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

DomainSpec make_domain(const Options& o) {
  const std::string kind = o.domain.empty() ? (o.dim == 1 ? "interval" : "ball") : o.domain;
  if (kind == "interval") {
    if (o.dim != 1) {
      throw std::invalid_argument("an interval domain requires --dim 1");
    }
    return DomainSpec::interval(o.radius);
  }
  return DomainSpec::ball(o.dim, o.radius);
}

struct ProblemSetup {
  ProblemSpec spec;
  RadialGrid grid;
  json source_description;
};

ProblemSetup make_problem(const Options& o) {
  const DomainSpec domain = make_domain(o);
  const Gamma gamma(o.gamma);
  if (o.lambda && !o.source_file.empty()) {
    throw std::invalid_argument("give either --lambda or --source-file, not both");
  }
  if (!o.source_file.empty()) {
    const auto table = io::read_table_csv(o.source_file);
    const auto r = std::find(table.header.begin(), table.header.end(), "r");
    const auto g = std::find(table.header.begin(), table.header.end(), "g");
    if (r == table.header.end() || g == table.header.end()) {
      throw std::invalid_argument("source file needs columns r and g");
    }
    const auto& rs = table.columns[static_cast<std::size_t>(r - table.header.begin())];
    const auto& gs = table.columns[static_cast<std::size_t>(g - table.header.begin())];
    if (rs.size() < 9) {
      throw std::invalid_argument("source file needs at least 9 rows");
    }
    RadialGrid grid(domain.dim(), domain.radius(), rs.size() - 1);
    for (std::size_t i = 0; i < rs.size(); ++i) {
      if (std::abs(rs[i] - grid.node(i)) > 1e-12 * domain.radius()) {
        throw GridMismatch("source file r column is not the uniform mesh on [0, R]");
      }
    }
    ProblemSpec spec(domain, gamma, ProfileSource{gs});
    return {std::move(spec), grid, json{{"profile", o.source_file}}};
  }
  if (!o.lambda) {
    throw std::invalid_argument("--lambda or --source-file is required");
  }
  ProblemSpec spec(domain, gamma, ConstantSource{*o.lambda});
  return {std::move(spec), RadialGrid(domain.dim(), domain.radius(), o.mesh), json(*o.lambda)};
}

ContinuationSchedule make_schedule(const Options& o, std::size_t mesh) {
  if (!o.rungs.empty()) {
    return ContinuationSchedule::parse(o.rungs, mesh);
  }
  return ContinuationSchedule::preset(o.schedule, mesh);
}

fs::path output_stem(const Options& o, const std::string& command) {
  if (!o.output.empty()) {
    return o.output;
  }
  const char* dir = std::getenv(kOutputDirEnv);
  return fs::path(dir && *dir ? dir : ".") / command;
}

fs::path with_suffix(const fs::path& stem, const std::string& suffix) {
  return fs::path(stem.string() + suffix);
}

void write_solution(const Options& o, const fs::path& stem, const RadialGrid& grid,
                    std::span<const double> u, std::span<const double> z,
                    std::span<const double> residual) {
  if (o.format == "json") {
    io::write_json(with_suffix(stem, ".json"), io::solution_to_json(grid, u, z, residual));
  } else {
    io::write_solution_csv(stem, grid, u, z, residual);
  }
}

json rung_json(const RungDiagnostics& d) {
  return {{"index", d.index},
          {"p", d.state.p()},
          {"n", d.state.n()},
          {"eps", d.state.eps()},
          {"iterations", d.iterations},
          {"residual_norm", d.residual_norm},
          {"w1p_seminorm", d.w1p_seminorm},
          {"sup_norm", d.sup_norm},
          {"plateau_extent", d.plateau_extent}};
}

json apriori_json(const AprioriReport& a) {
  return {{"w1p_energy", a.w1p_energy},
          {"w1p_seminorm", a.w1p_seminorm},
          {"absorption_mass", a.absorption_mass},
          {"g_l1", a.g_l1},
          {"pbound_holds", a.pbound_holds},
          {"absorption_bound_holds", a.absorption_bound_holds}};
}

std::string lambda_label(double lambda) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, lambda);
  return ec == std::errc() ? std::string(buf, ptr) : io::format_number(lambda);
}

// ---------------------------------------------------------------- commands

int cmd_solve(const Options& o, std::ostream& out, std::ostream& err) {
  auto setup = make_problem(o);
  const auto schedule = make_schedule(o, setup.grid.mesh_size());
  const fs::path stem = output_stem(o, "solve");

  json meta = {{"command", "solve"},
               {"dim", setup.grid.dim()},
               {"radius", setup.grid.radius()},
               {"gamma", o.gamma},
               {"lambda_or_g", setup.source_description},
               {"schedule", {{"name", o.rungs.empty() ? o.schedule : "explicit"},
                             {"rungs", schedule.describe()}}},
               {"mesh", setup.grid.mesh_size()},
               {"tolerances", io::to_json(o.tol)}};

  std::optional<ContinuationResult> result;
  int status = kOk;
  try {
    result = continuation_solve(setup.spec, schedule, setup.grid);
  } catch (const SolverError& e) {
    err << "solve: " << e.what();
    if (e.rung) {
      err << " (rung " << *e.rung << ")";
    }
    err << '\n';
    meta["failure"] = {{"message", e.what()},
                       {"rung", e.rung ? json(*e.rung) : json(nullptr)}};
    status = kNonConvergence;
    if (e.partial && !e.partial->history.empty()) {
      result = *e.partial;
    }
  }

  if (!result) {
    io::write_json(with_suffix(stem, ".meta.json"), meta);
    return status;
  }

  const auto& sol = result->solution;
  const auto report = verify(sol, setup.spec, o.tol);
  json rungs = json::array();
  for (const auto& d : result->rungs) {
    rungs.push_back(rung_json(d));
  }
  meta["rungs"] = rungs;
  meta["apriori"] = apriori_json(apriori_bounds_report(setup.spec, sol.state, sol));
  meta["defects"] = io::to_json(report);

  write_solution(o, stem, sol.grid, sol.u, sol.z, sol.residual);
  io::write_json(with_suffix(stem, ".meta.json"), meta);
  io::write_json(with_suffix(stem, ".report.json"), io::to_json(report));
  out << io::to_json(report).dump() << '\n';

  if (status != kOk) {
    return status;
  }
  return report.passed() ? kOk : kVerificationFailed;
}

int cmd_oracle(const Options& o, std::ostream& out) {
  if (!o.lambda) {
    throw std::invalid_argument("--lambda is required");
  }
  if (o.radius != 1.0) {
    throw std::invalid_argument("explicit solutions are tabulated on the unit ball only");
  }
  const auto setup = make_problem(o);
  if (o.gamma != 1.0) {
    throw std::invalid_argument("explicit solutions exist for --gamma 1 only");
  }
  const auto sampling = sample_oracle(o.dim, *o.lambda, o.mesh);
  const auto residual = measure_residual(sampling, setup.spec);
  const auto report = verify(sampling, setup.spec, o.tol);
  const fs::path stem = output_stem(o, "oracle");

  write_solution(o, stem, sampling.grid, sampling.u, sampling.z, residual);
  json meta = {{"command", "oracle"},
               {"dim", o.dim},
               {"radius", 1.0},
               {"gamma", 1.0},
               {"lambda_or_g", *o.lambda},
               {"mesh", o.mesh},
               {"trivial", *o.lambda <= o.dim},
               {"defects", io::to_json(report)}};
  io::write_json(with_suffix(stem, ".meta.json"), meta);
  io::write_json(with_suffix(stem, ".report.json"), io::to_json(report));
  out << io::to_json(report).dump() << '\n';
  return report.passed() ? kOk : kVerificationFailed;
}

struct LoadedField {
  RadialGrid grid;
  std::vector<double> u;
  std::vector<double> z;
};

LoadedField load_field(const Options& o) {
  if (o.input.empty()) {
    throw std::invalid_argument("--input is required");
  }
  std::vector<double> r;
  std::vector<double> u;
  std::vector<double> z;
  const fs::path input(o.input);
  if (input.extension() == ".json") {
    std::ifstream in(input);
    if (!in) {
      throw std::runtime_error("cannot open '" + o.input + "'");
    }
    const json doc = json::parse(in);
    r = doc.at("r").get<std::vector<double>>();
    u = doc.at("u").get<std::vector<double>>();
    z = doc.at("flux").at("z").get<std::vector<double>>();
  } else {
    const fs::path stem = input.extension() == ".csv" ? input.parent_path() / input.stem() : input;
    auto table = io::read_solution_csv(io::solution_path(stem));
    auto flux = io::read_flux_csv(io::flux_path(stem));
    r = std::move(table.r);
    u = std::move(table.u);
    z = std::move(flux.z);
  }
  if (r.size() < 9) {
    throw std::invalid_argument("solution file needs at least 9 nodes");
  }
  RadialGrid grid(o.dim, r.back(), r.size() - 1);
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (std::abs(r[i] - grid.node(i)) > 1e-12 * grid.radius()) {
      throw GridMismatch("solution file r column is not a uniform mesh on [0, R]");
    }
  }
  return {grid, std::move(u), std::move(z)};
}

int cmd_verify(Options o, std::ostream& out) {
  auto field = load_field(o);
  o.radius = field.grid.radius();
  o.mesh = field.grid.mesh_size();
  const auto setup = make_problem(o);
  if (!(setup.grid == field.grid)) {
    throw GridMismatch("solution grid differs from the problem grid");
  }
  const FieldView view(field.grid, field.u, field.z);
  const auto report = verify(view, setup.spec, o.tol);
  json doc = io::to_json(report);
  if (setup.spec.gamma().value() == 1.0 && setup.spec.has_constant_source() &&
      std::all_of(field.u.begin(), field.u.end(), [](double v) { return v < 1.0; })) {
    const auto ls = logsub_cheeger_check(view, setup.spec);
    doc["logsub_cheeger"] = {{"lhs", ls.lhs}, {"rhs", ls.rhs}, {"holds", ls.holds},
                             {"v_dominates_u", ls.v_dominates_u}};
    const auto rig = rigidity_check(view, setup.spec);
    doc["rigidity"] = {{"lambda", rig.lambda},
                       {"cheeger", rig.cheeger},
                       {"sup_norm", rig.sup_norm},
                       {"expected", rig.expected == RigidityRegime::trivial      ? "trivial"
                                    : rig.expected == RigidityRegime::nontrivial ? "nontrivial"
                                                                                 : "indeterminate"},
                       {"consistent", rig.consistent}};
  }
  if (!o.output.empty()) {
    io::write_json(with_suffix(o.output, ".report.json"), doc);
  }
  out << doc.dump() << '\n';
  return report.passed() ? kOk : kVerificationFailed;
}

struct SweepOutcome {
  std::optional<DiscreteSolution> solution;
  std::optional<VerificationReport> report;
  std::string failure;
};

int cmd_sweep(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.lambdas.empty()) {
    throw std::invalid_argument("--lambdas is required");
  }
  const auto lambdas = parse_lambda_list(o.lambdas);
  const fs::path stem = output_stem(o, "sweep");
  std::vector<std::string> header{"x"};
  std::vector<std::vector<double>> columns;

  if (o.mode == "oracle") {
    if (o.radius != 1.0 || o.gamma != 1.0) {
      throw std::invalid_argument("oracle sweeps use the unit ball with gamma = 1");
    }
    const double h = static_cast<double>(o.dim);
    for (double lambda : lambdas) {
      if (!(lambda > h)) {
        throw std::invalid_argument("lambda = " + lambda_label(lambda) + " <= h(B_1) = " +
                                    lambda_label(h) + " admits only u = 0");
      }
    }
    if (o.samples < 2) {
      throw std::invalid_argument("--samples must be >= 2");
    }
    std::vector<double> x(static_cast<std::size_t>(o.samples));
    for (int j = 0; j < o.samples; ++j) {
      x[static_cast<std::size_t>(j)] = symmetric_sample(j, o.samples);
    }
    columns.push_back(x);
    for (double lambda : lambdas) {
      std::vector<double> u(x.size());
      for (std::size_t j = 0; j < x.size(); ++j) {
        u[j] = oracle_u(o.dim, lambda, std::abs(x[j]));
      }
      header.push_back("u_" + lambda_label(lambda));
      columns.push_back(std::move(u));
    }
    io::write_table_csv(io::solution_path(stem), header, columns);
    out << json{{"mode", "oracle"}, {"curves", lambdas.size()}, {"rows", x.size()},
                {"file", io::solution_path(stem).string()}}
               .dump()
        << '\n';
    return kOk;
  }

  if (o.mode != "solver") {
    throw std::invalid_argument("--mode must be oracle or solver");
  }
  const DomainSpec domain = make_domain(o);
  const Gamma gamma(o.gamma);
  const RadialGrid grid(domain.dim(), domain.radius(), o.mesh);
  const auto schedule = make_schedule(o, o.mesh);
  std::vector<ProblemSpec> specs;
  for (double lambda : lambdas) {
    specs.push_back(ProblemSpec::constant(domain, gamma, lambda));
  }

  std::vector<SweepOutcome> outcomes(lambdas.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < lambdas.size(); k = next++) {
      try {
        auto result = continuation_solve(specs[k], schedule, grid);
        outcomes[k].report = verify(result.solution, specs[k], o.tol);
        outcomes[k].solution = std::move(result.solution);
      } catch (const std::exception& e) {
        outcomes[k].failure = e.what();
      }
    }
  };
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned nthreads =
      std::min<unsigned>(o.threads ? o.threads : hw, static_cast<unsigned>(lambdas.size()));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < nthreads; ++t) {
      pool.emplace_back(worker);
    }
  }

  const std::size_t m = grid.mesh_size();
  std::vector<double> x(2 * m + 1);
  for (std::size_t i = 0; i <= m; ++i) {
    x[m + i] = grid.node(i);
    x[m - i] = -grid.node(i);
  }
  columns.push_back(x);
  auto mirrored = [&](const std::vector<double>& nodal) {
    std::vector<double> v(x.size());
    for (std::size_t i = 0; i <= m; ++i) {
      v[m + i] = nodal[i];
      v[m - i] = nodal[i];
    }
    return v;
  };

  json summary = json::array();
  int status = kOk;
  for (std::size_t k = 0; k < lambdas.size(); ++k) {
    const std::string label = lambda_label(lambdas[k]);
    if (!outcomes[k].solution) {
      err << "sweep: lambda = " << label << ": " << outcomes[k].failure << '\n';
      summary.push_back({{"lambda", lambdas[k]}, {"failure", outcomes[k].failure}});
      status = kNonConvergence;
      continue;
    }
    header.push_back("u_" + label);
    columns.push_back(mirrored(outcomes[k].solution->u));
    summary.push_back({{"lambda", lambdas[k]}, {"defects", io::to_json(*outcomes[k].report)}});
  }
  for (std::size_t k = 0; k < lambdas.size(); ++k) {
    if (!outcomes[k].solution) {
      continue;
    }
    const std::string label = lambda_label(lambdas[k]);
    const auto& rep = *outcomes[k].report;
    const bool has_oracle = o.gamma == 1.0 && grid.radius() == 1.0 && lambdas[k] > grid.dim();
    std::vector<double> oracle(grid.node_count());
    for (std::size_t i = 0; i < oracle.size(); ++i) {
      oracle[i] = has_oracle ? oracle_u(grid.dim(), lambdas[k], grid.node(i)) : 0.0;
    }
    std::vector<double> error(oracle.size());
    for (std::size_t i = 0; i < oracle.size(); ++i) {
      error[i] = std::abs(outcomes[k].solution->u[i] - oracle[i]);
    }
    header.push_back("oracle_" + label);
    columns.push_back(mirrored(oracle));
    header.push_back("err_" + label);
    columns.push_back(mirrored(error));
    header.push_back("equation_flux_defect_" + label);
    columns.push_back(std::vector<double>(x.size(), rep.equation_flux_defect));
    header.push_back("pairing_defect_" + label);
    columns.push_back(std::vector<double>(x.size(), rep.pairing_defect));
  }
  io::write_table_csv(io::solution_path(stem), header, columns);
  io::write_json(with_suffix(stem, ".meta.json"),
                 {{"command", "sweep"},
                  {"mode", "solver"},
                  {"dim", grid.dim()},
                  {"radius", grid.radius()},
                  {"gamma", o.gamma},
                  {"mesh", m},
                  {"schedule", schedule.describe()},
                  {"results", summary}});
  out << json{{"mode", "solver"}, {"results", summary}}.dump() << '\n';
  return status;
}

int cmd_cheeger(const Options& o, std::ostream& out) {
  const DomainSpec domain = make_domain(o);
  const auto b = cheeger_bounds(domain);
  json doc = {{"domain", domain.kind() == DomainKind::ball ? "ball" : "interval"},
              {"dim", domain.dim()},
              {"radius", domain.radius()},
              {"volume", domain.volume()},
              {"perimeter", domain.perimeter()},
              {"lower", b.lower},
              {"upper", b.upper},
              {"exact", b.exact ? json(*b.exact) : json(nullptr)}};
  if (!o.output.empty()) {
    io::write_json(with_suffix(o.output, ".json"), doc);
  }
  out << doc.dump() << '\n';
  return kOk;
}

int cmd_smallness(const Options& o, std::ostream& out) {
  if (!o.lambda) {
    throw std::invalid_argument("--lambda is required");
  }
  const double s = sobolev_constant_limit(o.dim);
  const bool holds = smallness_check(o.dim, *o.lambda, o.fnorm);
  json doc = {{"dim", o.dim},
              {"lambda", *o.lambda},
              {"fnorm", o.fnorm},
              {"sobolev_constant_limit", s},
              {"product", *o.lambda * s * o.fnorm},
              {"lambda_threshold", 1.0 / (s * o.fnorm)},
              {"holds", holds}};
  if (!o.output.empty()) {
    io::write_json(with_suffix(o.output, ".json"), doc);
  }
  out << doc.dump() << '\n';
  return kOk;
}

std::string json_scalar_to_arg(const json& v) {
  if (v.is_string()) {
    return v.get<std::string>();
  }
  if (v.is_number_integer()) {
    return std::to_string(v.get<long long>());
  }
  if (v.is_number()) {
    return io::format_number(v.get<double>());
  }
  throw std::invalid_argument("config values must be strings, numbers or lists");
}

} // namespace

std::vector<double> parse_lambda_list(const std::string& text) {
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    std::vector<double> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) {
      parts.push_back(io::parse_number(item));
    }
    if (parts.size() != 3 || !(parts[2] > 0.0) || parts[1] < parts[0]) {
      throw std::invalid_argument("lambda range must be start:stop:step with step > 0");
    }
    const auto count = static_cast<std::size_t>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9));
    for (std::size_t k = 0; k <= count; ++k) {
      out.push_back(parts[0] + static_cast<double>(k) * parts[2]);
    }
    return out;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    out.push_back(io::parse_number(item));
  }
  if (out.empty()) {
    throw std::invalid_argument("empty lambda list");
  }
  return out;
}

std::vector<std::string> merge_config(const std::vector<std::string>& args) {
  std::optional<std::string> config_path;
  std::vector<std::string> merged;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) {
        throw std::invalid_argument("--config needs a path");
      }
      config_path = args[++i];
      continue;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      config_path = args[i].substr(9);
      continue;
    }
    merged.push_back(args[i]);
  }
  if (!config_path) {
    return merged;
  }
  std::ifstream in(*config_path);
  if (!in) {
    throw std::invalid_argument("cannot open config file '" + *config_path + "'");
  }
  const json doc = json::parse(in);
  if (!doc.is_object()) {
    throw std::invalid_argument("config file must hold a JSON object");
  }
  auto given = [&](const std::string& flag) {
    return std::any_of(merged.begin(), merged.end(), [&](const std::string& a) {
      return a == flag || a.rfind(flag + "=", 0) == 0;
    });
  };
  for (const auto& [key, value] : doc.items()) {
    const std::string flag = "--" + key;
    if (given(flag)) {
      continue;
    }
    if (value.is_boolean()) {
      if (value.get<bool>()) {
        merged.push_back(flag);
      }
      continue;
    }
    std::string text;
    if (value.is_array()) {
      for (std::size_t k = 0; k < value.size(); ++k) {
        text += (k ? "," : "") + json_scalar_to_arg(value[k]);
      }
    } else {
      text = json_scalar_to_arg(value);
    }
    merged.push_back(flag);
    merged.push_back(text);
  }
  return merged;
}

int run(const std::vector<std::string>& args_in, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Radial solver and verifier for the singular 1-Laplacian problem", "plateau_cli"};
  app.require_subcommand(1);

  auto* solve = app.add_subcommand("solve", "Continuation solve followed by verification");
  add_problem_options(solve, o);
  solve->add_option("--mesh", o.mesh, "Number of radial cells M")->check(CLI::Range(8, 100000000));
  solve->add_option("--schedule", o.schedule, "Schedule preset: default, fast, tight");
  solve->add_option("--rungs", o.rungs, "Explicit schedule p:n:eps,... (overrides --schedule)");
  add_output_options(solve, o);
  add_tolerance_options(solve, o);

  auto* oracle = app.add_subcommand("oracle", "Sample the explicit solution on a radial mesh");
  add_problem_options(oracle, o);
  oracle->add_option("--mesh", o.mesh, "Number of radial cells M")->check(CLI::Range(8, 100000000));
  add_output_options(oracle, o);
  add_tolerance_options(oracle, o);

  auto* verify_cmd = app.add_subcommand("verify", "Verify a solution file");
  add_problem_options(verify_cmd, o);
  verify_cmd->add_option("--input", o.input, "Solution stem, .csv or .json file");
  verify_cmd->add_option("--output", o.output, "Report path stem");
  add_tolerance_options(verify_cmd, o);

  auto* sweep = app.add_subcommand("sweep", "Family of curves over a list of lambda values");
  add_problem_options(sweep, o, false);
  sweep->add_option("--mode", o.mode, "oracle or solver")->check(CLI::IsMember({"oracle", "solver"}));
  sweep->add_option("--lambdas", o.lambdas, "start:stop:step or comma list");
  sweep->add_option("--samples", o.samples, "Oracle samples over [-1, 1]");
  sweep->add_option("--mesh", o.mesh, "Solver radial cells M")->check(CLI::Range(8, 100000000));
  sweep->add_option("--schedule", o.schedule, "Schedule preset");
  sweep->add_option("--rungs", o.rungs, "Explicit schedule p:n:eps,...");
  sweep->add_option("--threads", o.threads, "Worker threads (0: hardware concurrency)");
  sweep->add_option("--output", o.output, "Output path stem");
  add_tolerance_options(sweep, o);

  auto* cheeger = app.add_subcommand("cheeger", "Cheeger constant bounds of a ball or interval");
  cheeger->add_option("--domain", o.domain, "ball or interval")
      ->check(CLI::IsMember({"ball", "interval"}));
  cheeger->add_option("--dim", o.dim, "Space dimension N")->check(CLI::PositiveNumber);
  cheeger->add_option("--radius", o.radius, "Radius R");
  cheeger->add_option("--output", o.output, "Output path stem");

  auto* small = app.add_subcommand("smallness", "lambda S_{N,1} ||f||_{L^N} < 1");
  small->add_option("--dim", o.dim, "Space dimension N")->check(CLI::PositiveNumber);
  small->add_option("--lambda", o.lambda, "lambda > 0");
  small->add_option("--fnorm", o.fnorm, "||f||_{L^N} > 0");
  small->add_option("--output", o.output, "Output path stem");

  try {
    auto args = merge_config(args_in);
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) {
      reversed.pop_back(); // program name
    }
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  }

  try {
    if (solve->parsed()) {
      return cmd_solve(o, out, err);
    }
    if (oracle->parsed()) {
      return cmd_oracle(o, out);
    }
    if (verify_cmd->parsed()) {
      return cmd_verify(o, out);
    }
    if (sweep->parsed()) {
      return cmd_sweep(o, out, err);
    }
    if (cheeger->parsed()) {
      return cmd_cheeger(o, out);
    }
    if (small->parsed()) {
      return cmd_smallness(o, out);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  }
  return kInvalidInput;
}

} // namespace plateau::cli
