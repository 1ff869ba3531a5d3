// Symmetric tridiagonal eigen-solver: Sturm-sequence bisection for the
// eigenvalues and inverse iteration (LU with partial pivoting) for vectors.

#include "schrospec/errors.hpp"
#include "schrospec/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace schrospec {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void check_shapes(std::span<const double> diag, std::span<const double> offdiag) {
  if (diag.empty() || offdiag.size() + 1 != diag.size()) {
    throw OracleError(OracleError::Kind::InvalidArgument,
                      "tridiagonal matrix needs n diagonal and n-1 off-diagonal entries");
  }
}

double pivot_floor(std::span<const double> offdiag) {
  double emax = 1.0;
  for (double e : offdiag) emax = std::max(emax, e * e);
  return std::numeric_limits<double>::min() * emax;
}

std::pair<double, double> gershgorin(std::span<const double> diag, std::span<const double> offdiag) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  const std::size_t n = diag.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double r = (i > 0 ? std::abs(offdiag[i - 1]) : 0.0) + (i + 1 < n ? std::abs(offdiag[i]) : 0.0);
    lo = std::min(lo, diag[i] - r);
    hi = std::max(hi, diag[i] + r);
  }
  const double pad = 2.0 * kEps * std::max(std::abs(lo), std::abs(hi)) + 1e-300;
  return {lo - pad, hi + pad};
}

std::size_t count_below(std::span<const double> diag, std::span<const double> offdiag, double shift,
                        double pivmin) {
  std::size_t count = 0;
  double q = diag[0] - shift;
  if (std::abs(q) < pivmin) q = -pivmin;
  if (q < 0.0) ++count;
  for (std::size_t i = 1; i < diag.size(); ++i) {
    q = diag[i] - shift - offdiag[i - 1] * offdiag[i - 1] / q;
    if (std::abs(q) < pivmin) q = -pivmin;
    if (q < 0.0) ++count;
  }
  return count;
}

/// LU factorization of T - shift I with partial pivoting, stored as in
/// LAPACK's dgttrf: U has diagonal d and super-diagonals u1, u2; l holds the
/// multipliers, swap[i] marks an interchange of rows i and i+1.
struct TridiagonalLu {
  std::vector<double> l, d, u1, u2;
  std::vector<char> swap;

  TridiagonalLu(std::span<const double> diag, std::span<const double> offdiag, double shift,
                double tiny) {
    const std::size_t n = diag.size();
    d.resize(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = diag[i] - shift;
    l.assign(offdiag.begin(), offdiag.end());
    u1.assign(offdiag.begin(), offdiag.end());
    u2.assign(n > 2 ? n - 2 : 0, 0.0);
    swap.assign(n > 1 ? n - 1 : 0, 0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (std::abs(d[i]) >= std::abs(l[i])) {
        if (d[i] == 0.0) d[i] = tiny;
        const double fact = l[i] / d[i];
        l[i] = fact;
        d[i + 1] -= fact * u1[i];
      } else {
        const double fact = d[i] / l[i];
        d[i] = l[i];
        l[i] = fact;
        const double temp = u1[i];
        u1[i] = d[i + 1];
        d[i + 1] = temp - fact * d[i + 1];
        if (i + 2 < n) {
          u2[i] = u1[i + 1];
          u1[i + 1] = -fact * u1[i + 1];
        }
        swap[i] = 1;
      }
    }
    for (double& v : d) {
      if (std::abs(v) < tiny) v = std::copysign(tiny, v == 0.0 ? 1.0 : v);
    }
  }

  void solve(std::vector<double>& b) const {
    const std::size_t n = d.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (!swap[i]) {
        b[i + 1] -= l[i] * b[i];
      } else {
        const double temp = b[i];
        b[i] = b[i + 1];
        b[i + 1] = temp - l[i] * b[i];
      }
    }
    b[n - 1] /= d[n - 1];
    if (n > 1) b[n - 2] = (b[n - 2] - u1[n - 2] * b[n - 1]) / d[n - 2];
    for (std::size_t i = n >= 2 ? n - 2 : 0; i-- > 0;) {
      b[i] = (b[i] - u1[i] * b[i + 1] - u2[i] * b[i + 2]) / d[i];
    }
  }
};

void normalize(std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  s = std::sqrt(s);
  if (!(s > 0.0) || !std::isfinite(s)) {
    throw OracleError(OracleError::Kind::NoConvergence, "inverse iteration produced a null vector");
  }
  for (double& x : v) x /= s;
}

}  // namespace

std::size_t sturm_count(std::span<const double> diag, std::span<const double> offdiag,
                        double shift) {
  check_shapes(diag, offdiag);
  return count_below(diag, offdiag, shift, pivot_floor(offdiag));
}

std::vector<double> tridiagonal_lowest_eigenvalues(std::span<const double> diag,
                                                   std::span<const double> offdiag,
                                                   std::size_t count) {
  check_shapes(diag, offdiag);
  if (count > diag.size()) {
    throw OracleError(OracleError::Kind::InvalidArgument, "asked for more eigenvalues than rows");
  }
  const double pivmin = pivot_floor(offdiag);
  const auto [glo, ghi] = gershgorin(diag, offdiag);

  std::vector<double> values;
  values.reserve(count);
  double floor = glo;
  for (std::size_t j = 0; j < count; ++j) {
    double lo = floor;
    double hi = ghi;
    for (int iter = 0; iter < 256; ++iter) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (hi - lo <= 2.0 * kEps * std::max(std::abs(lo), std::abs(hi)) + pivmin) break;
      if (count_below(diag, offdiag, mid, pivmin) > j) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    values.push_back(0.5 * (lo + hi));
    floor = lo;
  }
  return values;
}

std::vector<double> tridiagonal_eigenvector(std::span<const double> diag,
                                            std::span<const double> offdiag, double eigenvalue,
                                            const std::vector<std::vector<double>>& previous) {
  check_shapes(diag, offdiag);
  const std::size_t n = diag.size();
  const auto [glo, ghi] = gershgorin(diag, offdiag);
  const double tiny = kEps * std::max(std::abs(glo), std::abs(ghi));
  const TridiagonalLu lu(diag, offdiag, eigenvalue, tiny);

  std::mt19937_64 rng(0x0ddba11);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = dist(rng);

  const auto orthogonalize = [&](std::vector<double>& w) {
    for (const auto& p : previous) {
      if (p.size() != n) continue;
      double dot = 0.0;
      for (std::size_t i = 0; i < n; ++i) dot += p[i] * w[i];
      for (std::size_t i = 0; i < n; ++i) w[i] -= dot * p[i];
    }
  };

  orthogonalize(v);
  normalize(v);
  for (int iter = 0; iter < 4; ++iter) {
    lu.solve(v);
    orthogonalize(v);
    normalize(v);
  }
  return v;
}

}  // namespace schrospec
