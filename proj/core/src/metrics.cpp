#include "schrospec/metrics.hpp"

#include "schrospec/errors.hpp"
#include "schrospec/sampling.hpp"

#include <cmath>
#include <random>
#include <vector>

namespace schrospec {

double energy_error(double e_ref, double e_pinn) {
  if (e_ref == 0.0) throw DegenerateInputError("energy_error: reference energy is zero");
  return (e_ref - e_pinn) / e_ref;
}

double overlap_squared(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.empty()) {
    throw DegenerateInputError("overlap_squared: vectors must be nonempty and of equal size");
  }
  double aa = 0.0, bb = 0.0, ab = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    aa += a[i] * a[i];
    bb += b[i] * b[i];
    ab += a[i] * b[i];
  }
  if (!(aa > 0.0) || !(bb > 0.0)) throw DegenerateInputError("overlap_squared: zero-norm vector");
  return (ab * ab) / (aa * bb);
}

FidelityReport fidelity(const BatchFunction& psi_ref, const BatchFunction& psi_pinn,
                        double half_width, const FidelityOptions& options) {
  if (options.resamples < 1) throw ConfigError("fidelity needs at least one resample");
  const BatchSpec spec{options.points, half_width, options.jitter_fraction};
  std::mt19937_64 rng(options.seed);

  std::vector<double> f(static_cast<std::size_t>(options.resamples));
  for (double& v : f) {
    const auto xs = sample_batch(spec, rng);
    v = overlap_squared(psi_ref(xs), psi_pinn(xs));
  }
  // Two passes: the spread is often near zero, where E[f^2] - E[f]^2 cancels.
  const double count = options.resamples;
  double mean = 0.0;
  for (double v : f) mean += v;
  mean /= count;
  double var = 0.0;
  for (double v : f) var += (v - mean) * (v - mean);
  var /= count;
  return {mean, std::sqrt(var), options.resamples};
}

}  // namespace schrospec
