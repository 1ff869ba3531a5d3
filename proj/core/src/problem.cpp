#include "schrospec/problem.hpp"

#include "schrospec/errors.hpp"

#include <cmath>
#include <string>

namespace schrospec {

void ProblemSpec::validate() const {
  if (n < 0) throw ConfigError("quantum number n must be >= 0");
  if (s != parity_of(n)) {
    throw ConfigError("symmetry sign s must be +1 for even n and -1 for odd n (n=" +
                      std::to_string(n) + ", s=" + std::to_string(s) + ")");
  }
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw ConfigError("half_width must be positive and finite");
  }
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw ConfigError("lambda must be >= 0");
  if (!std::isfinite(omega_sq)) throw ConfigError("omega_sq must be finite");
  if (lambda == 0.0 && omega_sq == 0.0) {
    throw ConfigError("lambda and omega_sq cannot both be zero (free particle)");
  }
  if (lambda == 0.0 && omega_sq < 0.0) throw ConfigError("omega_sq < 0 requires lambda > 0");
  if (!(a > 0.0) || !std::isfinite(a)) throw ConfigError("energy-loss steepness a must be > 0");
  if (!std::isfinite(e_init)) throw ConfigError("e_init must be finite");
}

}  // namespace schrospec
