#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace schrospec {

/// (E_ref - E_pinn) / E_ref. Positive means the network underestimates.
/// Throws DegenerateInputError for E_ref == 0.
double energy_error(double e_ref, double e_pinn);

/// |<a|b>|^2 of the two vectors after each is normalized to unit 2-norm.
/// Throws DegenerateInputError on a zero vector or size mismatch.
double overlap_squared(std::span<const double> a, std::span<const double> b);

struct FidelityReport {
  double mean = 0.0;
  double std = 0.0;  ///< population standard deviation
  int resamples = 0;
};

/// A wavefunction evaluated at a batch of points.
using BatchFunction = std::function<std::vector<double>(std::span<const double>)>;

struct FidelityOptions {
  int resamples = 1000;
  std::size_t points = 512;
  double jitter_fraction = 0.5;
  std::uint64_t seed = 0;
};

/// Mean and spread of overlap_squared over independently jittered grids
/// spanning [-half_width, half_width].
FidelityReport fidelity(const BatchFunction& psi_ref, const BatchFunction& psi_pinn,
                        double half_width, const FidelityOptions& options = {});

}  // namespace schrospec
