#pragma once

#include <cstddef>
#include <vector>

namespace plateau {

/// Uniform radial mesh r_i = R i / M on [0, R] with midpoints r_{i+1/2}.
///
/// Control volume of node i is the shell [r_{i-1/2}, r_{i+1/2}] clipped to
/// [0, R]; its radial measure is (r_+^N - r_-^N) / N. Multiplying by the
/// unit-sphere area gives the full-domain volume.
class RadialGrid {
public:
  RadialGrid(int dim, double radius, std::size_t mesh_size);

  int dim() const noexcept { return dim_; }
  double radius() const noexcept { return radius_; }
  std::size_t mesh_size() const noexcept { return mesh_size_; }
  std::size_t node_count() const noexcept { return mesh_size_ + 1; }
  double spacing() const noexcept { return radius_ / static_cast<double>(mesh_size_); }

  double node(std::size_t i) const;
  double midpoint(std::size_t i) const; // r_{i+1/2}
  double node_weight(std::size_t i) const; // r_i^{N-1}
  double midpoint_weight(std::size_t i) const; // r_{i+1/2}^{N-1}
  double control_volume(std::size_t i) const;

  std::vector<double> nodes() const;
  std::vector<double> midpoints() const;

  /// Trapezoidal radial quadrature of sum f_i r_i^{N-1} dr (no sphere factor).
  double trapezoid(const std::vector<double>& nodal) const;

  bool operator==(const RadialGrid&) const = default;

private:
  int dim_;
  double radius_;
  std::size_t mesh_size_;
};

} // namespace plateau

#include <stdexcept>

namespace plateau {

/// A field or source sampled on a mesh other than the one it is used with.
class GridMismatch : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

} // namespace plateau
