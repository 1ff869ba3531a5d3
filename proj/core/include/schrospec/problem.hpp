#pragma once

namespace schrospec {

/// One stationary-state problem: H = p^2/2 + omega_sq x^2/2 + lambda x^4 on
/// [-half_width, half_width], targeting quantum number n with parity s.
struct ProblemSpec {
  double omega_sq = 1.0;
  double lambda = 0.0;
  int n = 0;
  int s = 1;
  double half_width = 3.5;
  double e_init = 0.0;  ///< reference energy of the energy-minimization loss
  double a = 0.8;       ///< steepness of the energy-minimization loss

  double potential(double x) const noexcept {
    const double x2 = x * x;
    return 0.5 * omega_sq * x2 + lambda * x2 * x2;
  }

  /// Throws ConfigError when an invariant is violated.
  void validate() const;
};

/// +1 for even n, -1 for odd n.
constexpr int parity_of(int n) noexcept { return n % 2 == 0 ? 1 : -1; }

}  // namespace schrospec
