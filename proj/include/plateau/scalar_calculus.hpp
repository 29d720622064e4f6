#pragma once

#include <cstdint>

namespace plateau {

/// Singular exponent of the absorption coefficient 1/(1-s)^gamma. Must be > 0.
class Gamma {
public:
  explicit Gamma(double value);
  double value() const noexcept { return value_; }

private:
  double value_;
};

/// Clamp to [-k, k]: T_k(s) = max(-k, min(s, k)).
double truncate(double s, double k);

/// Complement of the clamp: G_k(s) = s - T_k(s), rounded so that T_k(s) + G_k(s) == s exactly.
double remainder(double s, double k);

/// Bounded continuous truncation h_n of the singular coefficient.
///
///   0                          s < 0
///   n s / ((1-s)^g + 1/n)      0 <= s < 1/n
///   1 / ((1-s)^g + 1/n)        1/n <= s < 1
///   n                          s >= 1
double absorption_truncated(double s, std::int64_t n, Gamma gamma);

/// Derivative of absorption_truncated in s (one-sided right derivative at
/// the branch points).
double absorption_truncated_derivative(double s, std::int64_t n, Gamma gamma);

/// h(s) = (1-s)^{-gamma} on [0, 1). Throws std::domain_error outside.
double absorption_exact(double s, Gamma gamma);

/// Phi(s) = int_0^s (1-t)^{-gamma} dt on [0, 1).
double phi(double s, Gamma gamma);

/// Phi_p(t) = int_0^t (1-s)^{-gamma/p} ds on [0, 1), p > 1.
double phi_p(double t, Gamma gamma, double p);

/// True when Phi_p is unbounded on [0, 1), i.e. gamma >= p.
bool phi_p_diverges(Gamma gamma, double p);

} // namespace plateau
