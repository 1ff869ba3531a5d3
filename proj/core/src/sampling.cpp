#include "schrospec/sampling.hpp"

#include "schrospec/errors.hpp"

#include <cmath>

namespace schrospec {

void BatchSpec::validate() const {
  if (count < 2) throw ConfigError("batch count must be >= 2");
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw ConfigError("batch half_width must be positive");
  }
  if (!(jitter_fraction >= 0.0 && jitter_fraction <= 0.5)) {
    throw ConfigError("jitter_fraction must lie in [0, 0.5]");
  }
}

std::vector<double> sample_batch(const BatchSpec& spec, std::mt19937_64& rng) {
  spec.validate();
  const double spacing = 2.0 * spec.half_width / static_cast<double>(spec.count);
  std::uniform_real_distribution<double> jitter(-spec.jitter_fraction, spec.jitter_fraction);
  std::vector<double> xs(spec.count);
  for (std::size_t i = 0; i < spec.count; ++i) {
    const double centre = -spec.half_width + (static_cast<double>(i) + 0.5) * spacing;
    xs[i] = centre + jitter(rng) * spacing;
  }
  return xs;
}

BatchSampler::BatchSampler(BatchSpec spec, std::uint64_t seed) : spec_(spec), rng_(seed) {
  spec_.validate();
}

double harmonic_domain(int n) { return 7.0 + 2.0 * n; }

double anharmonic_domain_unclipped(int n, double lambda, double omega) {
  if (!(omega > 0.0)) throw ConfigError("anharmonic_domain needs omega > 0");
  if (!(lambda > 0.0)) return harmonic_domain(n);
  constexpr double kLeeway = 1.0;
  const double half = harmonic_domain(n) / 2.0;
  const double ratio = lambda / omega;
  // Positive root of ratio*y^2 + y = half^2 in y = (L_a/2 - leeway)^2. The
  // form 2c / (1 + sqrt(1 + 4 ratio c)) avoids cancellation for small ratio.
  const double c = half * half;
  const double y = 2.0 * c / (1.0 + std::sqrt(1.0 + 4.0 * ratio * c));
  return 2.0 * (std::sqrt(y) + kLeeway);
}

double anharmonic_domain(int n, double lambda, double omega) {
  if (!(lambda > 0.0)) return harmonic_domain(n);
  return std::min(anharmonic_domain_unclipped(n, lambda, omega), harmonic_domain(n));
}

double training_domain(int n, double omega_sq, double lambda) {
  const double omega = omega_sq == 0.0 ? 1.0 : std::sqrt(std::abs(omega_sq));
  return anharmonic_domain(n, lambda, omega);
}

}  // namespace schrospec
