#include "plateau/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace plateau {

RadialGrid::RadialGrid(int dim, double radius, std::size_t mesh_size)
    : dim_(dim), radius_(radius), mesh_size_(mesh_size) {
  if (dim < 1) {
    throw std::invalid_argument("grid dimension must be >= 1");
  }
  if (!(radius > 0.0)) {
    throw std::invalid_argument("grid radius must be positive");
  }
  if (mesh_size < 8) {
    throw std::invalid_argument("mesh size must be >= 8");
  }
}

double RadialGrid::node(std::size_t i) const {
  return radius_ * static_cast<double>(i) / static_cast<double>(mesh_size_);
}

double RadialGrid::midpoint(std::size_t i) const {
  return radius_ * (static_cast<double>(i) + 0.5) / static_cast<double>(mesh_size_);
}

double RadialGrid::node_weight(std::size_t i) const {
  return dim_ == 1 ? 1.0 : std::pow(node(i), dim_ - 1);
}

double RadialGrid::midpoint_weight(std::size_t i) const {
  return dim_ == 1 ? 1.0 : std::pow(midpoint(i), dim_ - 1);
}

double RadialGrid::control_volume(std::size_t i) const {
  const double h = spacing();
  const double lo = i == 0 ? 0.0 : node(i) - 0.5 * h;
  const double hi = i == mesh_size_ ? radius_ : node(i) + 0.5 * h;
  return (std::pow(hi, dim_) - std::pow(lo, dim_)) / dim_;
}

std::vector<double> RadialGrid::nodes() const {
  std::vector<double> r(node_count());
  for (std::size_t i = 0; i < r.size(); ++i) {
    r[i] = node(i);
  }
  return r;
}

std::vector<double> RadialGrid::midpoints() const {
  std::vector<double> r(mesh_size_);
  for (std::size_t i = 0; i < r.size(); ++i) {
    r[i] = midpoint(i);
  }
  return r;
}

double RadialGrid::trapezoid(const std::vector<double>& nodal) const {
  if (nodal.size() != node_count()) {
    throw std::invalid_argument("trapezoid: nodal vector has the wrong length");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < nodal.size(); ++i) {
    const double w = (i == 0 || i == mesh_size_) ? 0.5 : 1.0;
    sum += w * nodal[i] * node_weight(i);
  }
  return sum * spacing();
}

} // namespace plateau
