#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace schrospec {

enum class Region { LowLambda, HighLambda, Quartic };

std::string_view region_name(Region region);

/// log(E) = a log(lambda) + b (natural logarithms).
struct FitResult {
  double a = 0.0;
  double b = 0.0;
  Region region = Region::LowLambda;
  int n = 0;
  double residual = 0.0;  ///< sum of squared residuals in log-log space
  std::size_t points = 0;

  double predict(double lambda) const;
};

struct CriticalPoint {
  int n = 0;
  double lambda_c = 0.0;
  double e_c = 0.0;
};

struct EnergyPoint {
  double lambda = 0.0;
  double energy = 0.0;
};

/// One energy for quantum number n at coupling lambda; omega_sq separates the
/// anharmonic family (1) from the pure quartic one (0).
struct EnergySample {
  int n = 0;
  double lambda = 0.0;
  double energy = 0.0;
  std::string source;
  double omega_sq = 1.0;
};

struct RegionCutoffs {
  double low_below = 0.1;
  double high_above = 2.0;
};

/// Ordinary least squares on (log lambda, log E). Invariant under point
/// order. Throws FitError for fewer than two points, non-positive values, or
/// a degenerate lambda set.
FitResult fit_region(std::span<const EnergyPoint> points, Region region, int n);

/// Intersection of two fit lines. Throws FitError when the slopes coincide.
CriticalPoint critical_lambda(const FitResult& low, const FitResult& high);

/// Points of state n that belong to `region`: anharmonic samples below or
/// above the cutoffs, or every quartic sample.
std::vector<EnergyPoint> select_region(std::span<const EnergySample> samples, Region region,
                                       int n, const RegionCutoffs& cutoffs = {});

struct ScalingAnalysis {
  std::vector<FitResult> fits;
  std::vector<CriticalPoint> critical;
};

/// All three regional fits per n where data allow, and lambda_c wherever both
/// anharmonic fits exist.
ScalingAnalysis analyze_scaling(std::span<const EnergySample> samples,
                                const RegionCutoffs& cutoffs = {});

}  // namespace schrospec
