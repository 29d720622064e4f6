#include "plateau/solution_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace plateau::io {

std::string format_number(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  if (ec != std::errc()) {
    throw std::runtime_error("cannot format number");
  }
  return std::string(buf, ptr);
}

double parse_number(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) {
    text.remove_prefix(1);
  }
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) {
    text.remove_suffix(1);
  }
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw std::invalid_argument("cannot parse number '" + std::string(text) + "'");
  }
  return value;
}

std::vector<double> nodal_flux(std::span<const double> z_mid) {
  const std::size_t m = z_mid.size();
  std::vector<double> z(m + 1);
  z[0] = 0.0;
  for (std::size_t i = 1; i < m; ++i) {
    z[i] = 0.5 * (z_mid[i - 1] + z_mid[i]);
  }
  z[m] = m >= 2 ? 1.5 * z_mid[m - 1] - 0.5 * z_mid[m - 2] : z_mid[m - 1];
  return z;
}

SolutionTable make_solution_table(const RadialGrid& grid, std::span<const double> u,
                                  std::span<const double> z_mid,
                                  std::span<const double> residual) {
  if (u.size() != grid.node_count() || z_mid.size() != grid.mesh_size() ||
      residual.size() != grid.mesh_size()) {
    throw GridMismatch("solution vectors do not match the grid");
  }
  SolutionTable t;
  t.r = grid.nodes();
  t.u.assign(u.begin(), u.end());
  t.z = nodal_flux(z_mid);
  t.residual.assign(residual.begin(), residual.end());
  t.residual.push_back(0.0); // Dirichlet node carries no equation
  return t;
}

std::filesystem::path solution_path(const std::filesystem::path& stem) {
  return std::filesystem::path(stem.string() + ".csv");
}

std::filesystem::path flux_path(const std::filesystem::path& stem) {
  return std::filesystem::path(stem.string() + "_flux.csv");
}

namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  }
  return out;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, sep)) {
    parts.push_back(item);
  }
  if (!line.empty() && line.back() == sep) {
    parts.emplace_back();
  }
  return parts;
}

} // namespace

void write_table_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& columns) {
  if (header.size() != columns.size()) {
    throw std::invalid_argument("table header and columns differ in count");
  }
  const std::size_t rows = columns.empty() ? 0 : columns.front().size();
  for (const auto& c : columns) {
    if (c.size() != rows) {
      throw std::invalid_argument("table columns differ in length");
    }
  }
  auto out = open_for_write(path);
  for (std::size_t j = 0; j < header.size(); ++j) {
    out << (j ? "," : "") << header[j];
  }
  out << '\n';
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < columns.size(); ++j) {
      out << (j ? "," : "") << format_number(columns[j][i]);
    }
    out << '\n';
  }
  if (!out) {
    throw std::runtime_error("failed writing '" + path.string() + "'");
  }
}

CsvTable read_table_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open '" + path.string() + "'");
  }
  CsvTable t;
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("'" + path.string() + "' is empty");
  }
  if (!line.empty() && line.back() == '\r') {
    line.pop_back();
  }
  t.header = split(line, ',');
  t.columns.resize(t.header.size());
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line == "\r") {
      continue;
    }
    const auto cells = split(line, ',');
    if (cells.size() != t.header.size()) {
      throw std::runtime_error(path.string() + ":" + std::to_string(row) + ": expected " +
                               std::to_string(t.header.size()) + " fields");
    }
    for (std::size_t j = 0; j < cells.size(); ++j) {
      t.columns[j].push_back(parse_number(cells[j]));
    }
  }
  return t;
}

void write_solution_csv(const std::filesystem::path& stem, const RadialGrid& grid,
                        std::span<const double> u, std::span<const double> z_mid,
                        std::span<const double> residual) {
  const auto t = make_solution_table(grid, u, z_mid, residual);
  write_table_csv(solution_path(stem), {"r", "u", "z", "residual"}, {t.r, t.u, t.z, t.residual});
  write_table_csv(flux_path(stem), {"r_mid", "z"},
                  {grid.midpoints(), std::vector<double>(z_mid.begin(), z_mid.end())});
}

SolutionTable read_solution_csv(const std::filesystem::path& path) {
  auto t = read_table_csv(path);
  if (t.header != std::vector<std::string>{"r", "u", "z", "residual"}) {
    throw std::runtime_error("'" + path.string() + "' does not have header r,u,z,residual");
  }
  SolutionTable s{std::move(t.columns[0]), std::move(t.columns[1]), std::move(t.columns[2]),
                  std::move(t.columns[3])};
  for (std::size_t i = 1; i < s.r.size(); ++i) {
    if (!(s.r[i] > s.r[i - 1])) {
      throw std::runtime_error("'" + path.string() + "': r must be strictly increasing");
    }
  }
  return s;
}

FluxTable read_flux_csv(const std::filesystem::path& path) {
  auto t = read_table_csv(path);
  if (t.header != std::vector<std::string>{"r_mid", "z"}) {
    throw std::runtime_error("'" + path.string() + "' does not have header r_mid,z");
  }
  return {std::move(t.columns[0]), std::move(t.columns[1])};
}

nlohmann::json solution_to_json(const RadialGrid& grid, std::span<const double> u,
                                std::span<const double> z_mid, std::span<const double> residual) {
  const auto t = make_solution_table(grid, u, z_mid, residual);
  return {{"r", t.r},
          {"u", t.u},
          {"z", t.z},
          {"residual", t.residual},
          {"flux", {{"r_mid", grid.midpoints()}, {"z", std::vector<double>(z_mid.begin(), z_mid.end())}}}};
}

namespace {

nlohmann::json finite_or_null(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

} // namespace

nlohmann::json to_json(const VerificationReport& r) {
  nlohmann::json verdict = {{"field_bound", r.verdict.field_bound},
                            {"pairing", r.verdict.pairing},
                            {"equation", r.verdict.equation},
                            {"trace", r.verdict.trace},
                            {"continuity", r.verdict.continuity},
                            {"energy", r.verdict.energy},
                            {"all", r.verdict.all()}};
  return {{"field_bound_defect", finite_or_null(r.field_bound_defect)},
          {"pairing_defect", finite_or_null(r.pairing_defect)},
          {"equation_residual", finite_or_null(r.equation_residual)},
          {"equation_flux_defect", finite_or_null(r.equation_flux_defect)},
          {"trace_value", finite_or_null(r.trace_value)},
          {"max_jump", finite_or_null(r.max_jump)},
          {"energy_gap", r.energy_gap ? finite_or_null(*r.energy_gap) : nlohmann::json(nullptr)},
          {"plateau_radius_estimate", r.plateau_radius_estimate},
          {"mesh_spacing", r.mesh_spacing},
          {"verdict", verdict}};
}

nlohmann::json to_json(const VerifyTolerances& t) {
  return {{"slope_floor", t.slope_floor}, {"field_bound", t.field_bound},
          {"pairing", t.pairing},         {"equation", t.equation},
          {"trace", t.trace},             {"jump_slope", t.jump_slope},
          {"energy", t.energy}};
}

void write_json(const std::filesystem::path& path, const nlohmann::json& doc) {
  auto out = open_for_write(path);
  out << doc.dump(2) << '\n';
  if (!out) {
    throw std::runtime_error("failed writing '" + path.string() + "'");
  }
}

} // namespace plateau::io
