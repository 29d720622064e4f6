#include "plateau/scalar_calculus.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace plateau {

namespace {

// Exponents this close to 1 take the logarithmic branch.
constexpr double kLogBranchWindow = 1e-12;

// int_0^s (1-t)^{-a} dt, written with expm1/log1p so the a -> 1 limit is smooth.
double power_primitive(double s, double a) {
  const double log_gap = std::log1p(-s);
  if (std::abs(a - 1.0) <= kLogBranchWindow * std::max(1.0, std::abs(a))) {
    return -log_gap;
  }
  return std::expm1((1.0 - a) * log_gap) / (a - 1.0);
}

void require_unit_interval(double s, const char* what) {
  if (!(s >= 0.0 && s < 1.0)) {
    throw std::domain_error(std::string(what) + ": argument must lie in [0, 1), got " +
                            std::to_string(s));
  }
}

} // namespace

Gamma::Gamma(double value) : value_(value) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw std::invalid_argument("gamma must be a positive finite number");
  }
}

double truncate(double s, double k) {
  if (!(k >= 0.0)) {
    throw std::invalid_argument("truncation level k must be nonnegative");
  }
  return std::max(-k, std::min(s, k));
}

double remainder(double s, double k) {
  const double t = truncate(s, k);
  double g = s - t;
  // s - t can round so that t + g misses s by an ulp; nudge g until the sum is exact
  for (int i = 0; i < 4 && t + g != s; ++i) {
    g = std::nextafter(g, t + g < s ? INFINITY : -INFINITY);
  }
  return g;
}

double absorption_truncated(double s, std::int64_t n, Gamma gamma) {
  if (n < 1) {
    throw std::invalid_argument("truncation index n must be >= 1");
  }
  const double nn = static_cast<double>(n);
  if (s < 0.0) {
    return 0.0;
  }
  if (s >= 1.0) {
    return nn;
  }
  const double denom = std::pow(1.0 - s, gamma.value()) + 1.0 / nn;
  if (s < 1.0 / nn) {
    return nn * s / denom;
  }
  return 1.0 / denom;
}

double absorption_truncated_derivative(double s, std::int64_t n, Gamma gamma) {
  if (n < 1) {
    throw std::invalid_argument("truncation index n must be >= 1");
  }
  if (s < 0.0 || s >= 1.0) {
    return 0.0;
  }
  const double nn = static_cast<double>(n);
  const double g = gamma.value();
  const double base = std::pow(1.0 - s, g);
  const double denom = base + 1.0 / nn;
  // d/ds (1-s)^g = -g (1-s)^{g-1}
  const double ddenom = -g * base / (1.0 - s);
  if (s < 1.0 / nn) {
    return nn / denom - nn * s * ddenom / (denom * denom);
  }
  return -ddenom / (denom * denom);
}

double absorption_exact(double s, Gamma gamma) {
  require_unit_interval(s, "absorption_exact");
  return std::pow(1.0 - s, -gamma.value());
}

double phi(double s, Gamma gamma) {
  require_unit_interval(s, "phi");
  return power_primitive(s, gamma.value());
}

double phi_p(double t, Gamma gamma, double p) {
  if (!(p > 1.0)) {
    throw std::domain_error("phi_p: p must be > 1");
  }
  require_unit_interval(t, "phi_p");
  return power_primitive(t, gamma.value() / p);
}

bool phi_p_diverges(Gamma gamma, double p) {
  if (!(p > 1.0)) {
    throw std::domain_error("phi_p_diverges: p must be > 1");
  }
  return gamma.value() >= p;
}

} // namespace plateau
