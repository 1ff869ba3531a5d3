#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace schrospec {

/// Jittered-grid batch: `count` cells tile [-half_width, half_width]; each
/// point is drawn uniformly within jitter_fraction grid spacings of its cell
/// centre.
struct BatchSpec {
  std::size_t count = 512;
  double half_width = 3.5;
  double jitter_fraction = 0.5;

  void validate() const;
};

/// Sorted points for one batch; advances `rng`.
std::vector<double> sample_batch(const BatchSpec& spec, std::mt19937_64& rng);

/// Owns its own random stream.
class BatchSampler {
public:
  BatchSampler(BatchSpec spec, std::uint64_t seed);

  std::vector<double> next() { return sample_batch(spec_, rng_); }
  const BatchSpec& spec() const noexcept { return spec_; }

private:
  BatchSpec spec_;
  std::mt19937_64 rng_;
};

/// L(n) = 7 + 2n.
double harmonic_domain(int n);

/// Width L_a for which the anharmonic potential at L_a/2 - 1 matches the
/// harmonic one at L(n)/2, clipped to L(n). Falls back to L(n) for
/// lambda <= 0. Throws ConfigError for omega <= 0.
double anharmonic_domain(int n, double lambda, double omega);

/// The unclipped width, exposed for checking.
double anharmonic_domain_unclipped(int n, double lambda, double omega);

/// Training domain for an arbitrary (omega_sq, lambda): omega = sqrt|omega_sq|,
/// and omega = 1 when omega_sq == 0.
double training_domain(int n, double omega_sq, double lambda);

}  // namespace schrospec
