#include "schrospec/analysis.hpp"

#include "schrospec/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace schrospec {

std::string_view region_name(Region region) {
  switch (region) {
    case Region::LowLambda: return "low_lambda";
    case Region::HighLambda: return "high_lambda";
    case Region::Quartic: return "quartic";
  }
  return "unknown";
}

double FitResult::predict(double lambda) const { return std::exp(a * std::log(lambda) + b); }

FitResult fit_region(std::span<const EnergyPoint> points, Region region, int n) {
  if (points.size() < 2) throw FitError("fit needs at least two points");
  std::vector<std::pair<double, double>> logs;
  logs.reserve(points.size());
  for (const auto& p : points) {
    if (!(p.lambda > 0.0) || !(p.energy > 0.0)) {
      throw FitError("log-log fit needs positive lambda and energy");
    }
    logs.emplace_back(std::log(p.lambda), std::log(p.energy));
  }
  // Sorting first makes the sums, and so the result, independent of input order.
  std::sort(logs.begin(), logs.end());

  const double count = static_cast<double>(logs.size());
  double mx = 0.0, my = 0.0;
  for (const auto& [x, y] : logs) {
    mx += x;
    my += y;
  }
  mx /= count;
  my /= count;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [x, y] : logs) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  if (!(sxx > 0.0)) throw FitError("fit needs at least two distinct lambda values");

  FitResult fit;
  fit.a = sxy / sxx;
  fit.b = my - fit.a * mx;
  fit.region = region;
  fit.n = n;
  fit.points = logs.size();
  for (const auto& [x, y] : logs) {
    const double r = y - (fit.a * x + fit.b);
    fit.residual += r * r;
  }
  return fit;
}

CriticalPoint critical_lambda(const FitResult& low, const FitResult& high) {
  const double da = low.a - high.a;
  if (da == 0.0) throw FitError("fit lines are parallel; no intersection");
  const double log_lambda = (high.b - low.b) / da;
  // Average of both lines keeps the result symmetric in its arguments.
  const double log_e = 0.5 * ((low.a * log_lambda + low.b) + (high.a * log_lambda + high.b));
  return {low.n, std::exp(log_lambda), std::exp(log_e)};
}

std::vector<EnergyPoint> select_region(std::span<const EnergySample> samples, Region region,
                                       int n, const RegionCutoffs& cutoffs) {
  std::vector<EnergyPoint> out;
  for (const auto& s : samples) {
    if (s.n != n) continue;
    const bool quartic = s.omega_sq == 0.0;
    bool take = false;
    switch (region) {
      case Region::LowLambda: take = !quartic && s.lambda < cutoffs.low_below; break;
      case Region::HighLambda: take = !quartic && s.lambda > cutoffs.high_above; break;
      case Region::Quartic: take = quartic; break;
    }
    if (take) out.push_back({s.lambda, s.energy});
  }
  return out;
}

ScalingAnalysis analyze_scaling(std::span<const EnergySample> samples, const RegionCutoffs& cutoffs) {
  std::set<int> ns;
  for (const auto& s : samples) ns.insert(s.n);

  ScalingAnalysis out;
  for (int n : ns) {
    std::map<Region, FitResult> fits;
    for (Region r : {Region::LowLambda, Region::HighLambda, Region::Quartic}) {
      const auto pts = select_region(samples, r, n, cutoffs);
      if (pts.size() < 2) continue;
      fits.emplace(r, fit_region(pts, r, n));
      out.fits.push_back(fits.at(r));
    }
    const auto lo = fits.find(Region::LowLambda);
    const auto hi = fits.find(Region::HighLambda);
    if (lo != fits.end() && hi != fits.end() && lo->second.a != hi->second.a) {
      out.critical.push_back(critical_lambda(lo->second, hi->second));
    }
  }
  return out;
}

}  // namespace schrospec
