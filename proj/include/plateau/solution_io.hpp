#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "plateau/grid.hpp"
#include "plateau/verifier.hpp"

namespace plateau::io {

/// 17 significant digits, '.' separator, independent of the global locale.
std::string format_number(double value);
double parse_number(std::string_view text);

/// Nodal solution table: header "r,u,z,residual", one row per node.
struct SolutionTable {
  std::vector<double> r;
  std::vector<double> u;
  std::vector<double> z;
  std::vector<double> residual;
};

/// Companion midpoint table: header "r_mid,z".
struct FluxTable {
  std::vector<double> r_mid;
  std::vector<double> z;
};

/// Midpoint z averaged to nodes; z(0) = 0 by symmetry and the last node is
/// extrapolated linearly.
std::vector<double> nodal_flux(std::span<const double> z_mid);

SolutionTable make_solution_table(const RadialGrid& grid, std::span<const double> u,
                                  std::span<const double> z_mid,
                                  std::span<const double> residual);

/// "<stem>.csv" and "<stem>_flux.csv".
std::filesystem::path solution_path(const std::filesystem::path& stem);
std::filesystem::path flux_path(const std::filesystem::path& stem);

void write_solution_csv(const std::filesystem::path& stem, const RadialGrid& grid,
                        std::span<const double> u, std::span<const double> z_mid,
                        std::span<const double> residual);
SolutionTable read_solution_csv(const std::filesystem::path& path);
FluxTable read_flux_csv(const std::filesystem::path& path);

/// Single JSON document with the nodal and midpoint tables.
nlohmann::json solution_to_json(const RadialGrid& grid, std::span<const double> u,
                                std::span<const double> z_mid, std::span<const double> residual);

/// Generic column table (sweeps). All columns must have equal length.
void write_table_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& columns);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;
};
CsvTable read_table_csv(const std::filesystem::path& path);

nlohmann::json to_json(const VerificationReport& report);
nlohmann::json to_json(const VerifyTolerances& tol);

void write_json(const std::filesystem::path& path, const nlohmann::json& doc);

} // namespace plateau::io
