#include "schrospec/oracle.hpp"

#include "schrospec/errors.hpp"
#include "schrospec/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace schrospec {

namespace {

/// Even and odd parity blocks of the central-difference Hamiltonian on a
/// symmetric grid with a node at x = 0. The potential is even, so the two
/// blocks decouple; the even block is symmetrized by scaling the centre row.
struct ParityBlocks {
  double h = 0.0;
  std::vector<double> even_diag, even_off, odd_diag, odd_off;
};

ParityBlocks build_blocks(double omega_sq, double lambda, double X, int grid_points) {
  ParityBlocks b;
  const int half = (grid_points - 1) / 2;  // nodes 0..half on x >= 0, node half is the wall
  b.h = X / half;
  const double kinetic = 1.0 / (b.h * b.h);
  const double hop = -0.5 * kinetic;
  const auto potential = [&](int j) {
    const double x = j * b.h;
    return 0.5 * omega_sq * x * x + lambda * x * x * x * x;
  };
  const int m = half - 1;  // interior nodes with x > 0
  b.even_diag.resize(static_cast<std::size_t>(m) + 1);
  b.even_off.assign(static_cast<std::size_t>(m), hop);
  for (int j = 0; j <= m; ++j) b.even_diag[static_cast<std::size_t>(j)] = kinetic + potential(j);
  b.even_off[0] = std::numbers::sqrt2 * hop;
  b.odd_diag.resize(static_cast<std::size_t>(m));
  b.odd_off.assign(static_cast<std::size_t>(m) - 1, hop);
  for (int j = 1; j <= m; ++j) b.odd_diag[static_cast<std::size_t>(j) - 1] = kinetic + potential(j);
  return b;
}

struct Level {
  double energy;
  bool even;
  std::size_t index;  // within its parity block
};

std::vector<Level> lowest_levels(const ParityBlocks& b, int k) {
  const auto count = static_cast<std::size_t>(k);
  const auto even = tridiagonal_lowest_eigenvalues(b.even_diag, b.even_off, std::min(count, b.even_diag.size()));
  const auto odd = tridiagonal_lowest_eigenvalues(b.odd_diag, b.odd_off, std::min(count, b.odd_diag.size()));
  std::vector<Level> levels;
  for (std::size_t i = 0; i < even.size(); ++i) levels.push_back({even[i], true, i});
  for (std::size_t i = 0; i < odd.size(); ++i) levels.push_back({odd[i], false, i});
  std::sort(levels.begin(), levels.end(), [](const Level& a, const Level& c) { return a.energy < c.energy; });
  levels.resize(count);
  return levels;
}

std::vector<double> level_energies(double omega_sq, double lambda, double X, int grid_points, int k) {
  const auto levels = lowest_levels(build_blocks(omega_sq, lambda, X, grid_points), k);
  std::vector<double> e;
  for (const auto& l : levels) e.push_back(l.energy);
  return e;
}

void fix_sign(std::vector<double>& v) {
  double vmax = 0.0;
  for (double x : v) vmax = std::max(vmax, std::abs(x));
  for (double x : v) {
    if (std::abs(x) > 1e-6 * vmax) {
      if (x < 0.0) {
        for (double& y : v) y = -y;
      }
      return;
    }
  }
}

}  // namespace

double OracleSolution::evaluate(std::size_t k, double x) const {
  const auto& psi = wavefunctions.at(k);
  if (grid.size() < 2 || x < grid.front() || x > grid.back()) return 0.0;
  const double h = (grid.back() - grid.front()) / static_cast<double>(grid.size() - 1);
  const double pos = (x - grid.front()) / h;
  auto i = static_cast<std::size_t>(pos);
  if (i >= grid.size() - 1) return psi.back();
  const double t = pos - static_cast<double>(i);
  return psi[i] + t * (psi[i + 1] - psi[i]);
}

double default_oracle_half_width(int k, double lambda) {
  return std::max(harmonic_domain(k), anharmonic_domain(k, lambda, 1.0)) / 2.0 + 2.0;
}

OracleSolution diagonalize(double omega_sq, double lambda, double X, int k,
                           const OracleOptions& options) {
  using Kind = OracleError::Kind;
  if (options.grid_points < 201) throw OracleError(Kind::InvalidArgument, "grid_points must be >= 201");
  if (!(X > 0.0) || !std::isfinite(X)) throw OracleError(Kind::InvalidArgument, "X must be positive");
  if (k < 1) throw OracleError(Kind::InvalidArgument, "need at least one state");
  if (!(lambda >= 0.0)) throw OracleError(Kind::InvalidArgument, "lambda must be >= 0");
  if (lambda == 0.0 && omega_sq <= 0.0) {
    throw OracleError(Kind::InvalidArgument, "potential is not confining (lambda = 0, omega_sq <= 0)");
  }
  // A node at x = 0 needs an odd point count.
  const int base_points = options.grid_points % 2 == 1 ? options.grid_points : options.grid_points + 1;
  if ((base_points - 1) / 2 - 1 < k) throw OracleError(Kind::InvalidArgument, "grid too coarse for k states");

  OracleSolution sol;

  // Wavefunctions on the base grid.
  const ParityBlocks blocks = build_blocks(omega_sq, lambda, X, base_points);
  const auto levels = lowest_levels(blocks, k);
  const int half = (base_points - 1) / 2;
  sol.grid.resize(static_cast<std::size_t>(base_points));
  for (int i = 0; i < base_points; ++i) sol.grid[static_cast<std::size_t>(i)] = (i - half) * blocks.h;
  sol.grid.front() = -X;
  sol.grid.back() = X;

  std::vector<std::vector<double>> even_vecs, odd_vecs;
  for (const auto& level : levels) {
    std::vector<double> full(static_cast<std::size_t>(base_points), 0.0);
    const auto c = static_cast<std::size_t>(half);
    if (level.even) {
      auto w = tridiagonal_eigenvector(blocks.even_diag, blocks.even_off, level.energy, even_vecs);
      even_vecs.push_back(w);
      full[c] = std::numbers::sqrt2 * w[0];
      for (std::size_t j = 1; j < w.size(); ++j) full[c + j] = full[c - j] = w[j];
    } else {
      auto w = tridiagonal_eigenvector(blocks.odd_diag, blocks.odd_off, level.energy, odd_vecs);
      odd_vecs.push_back(w);
      for (std::size_t j = 0; j < w.size(); ++j) {
        full[c + j + 1] = w[j];
        full[c - j - 1] = -w[j];
      }
    }
    double norm = 0.0;
    for (double v : full) norm += v * v;
    norm = std::sqrt(norm);
    for (double& v : full) v /= norm;
    fix_sign(full);

    const double edge = std::max(std::abs(full[1]), std::abs(full[full.size() - 2]));
    if (!(edge < 1e-8)) {
      throw OracleError(Kind::DomainTooSmall,
                        "state " + std::to_string(sol.wavefunctions.size()) +
                            " does not vanish at +-X = " + std::to_string(X) +
                            " (edge amplitude " + std::to_string(edge) + ")");
    }
    sol.wavefunctions.push_back(std::move(full));
  }

  // Richardson extrapolation over successively halved spacings.
  std::vector<double> coarse;
  for (const auto& l : levels) coarse.push_back(l.energy);
  int points = 2 * base_points - 1;
  std::vector<double> fine = level_energies(omega_sq, lambda, X, points, k);
  const auto extrapolate = [](const std::vector<double>& c, const std::vector<double>& f) {
    std::vector<double> r(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) r[i] = (4.0 * f[i] - c[i]) / 3.0;
    return r;
  };
  std::vector<double> previous = extrapolate(coarse, fine);
  while (true) {
    const int next_points = 2 * points - 1;
    if (next_points > options.max_grid_points) {
      throw OracleError(Kind::NoConvergence, "energies did not converge to " +
                                                 std::to_string(options.richardson_tol) +
                                                 " within the grid limit");
    }
    auto finer = level_energies(omega_sq, lambda, X, next_points, k);
    auto current = extrapolate(fine, finer);
    double change = 0.0;
    for (std::size_t i = 0; i < current.size(); ++i) change = std::max(change, std::abs(current[i] - previous[i]));
    points = next_points;
    fine = std::move(finer);
    previous = std::move(current);
    if (change < options.richardson_tol) break;
  }
  sol.energies = std::move(previous);
  sol.finest_grid_points = points;
  return sol;
}

double harmonic_wavefunction(int n, double omega, double x) {
  if (n < 0 || !(omega > 0.0)) throw ConfigError("harmonic_wavefunction needs n >= 0, omega > 0");
  const double xi = std::sqrt(omega) * x;
  double prev = std::pow(omega / std::numbers::pi, 0.25) * std::exp(-0.5 * xi * xi);
  if (n == 0) return prev;
  double cur = std::numbers::sqrt2 * xi * prev;
  for (int m = 2; m <= n; ++m) {
    const double next = std::sqrt(2.0 / m) * xi * cur - std::sqrt((m - 1.0) / m) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

HarmonicState harmonic_exact(int n, double omega, std::span<const double> grid) {
  HarmonicState st;
  st.energy = (n + 0.5) * omega;
  st.psi.resize(grid.size());
  double norm = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    st.psi[i] = harmonic_wavefunction(n, omega, grid[i]);
    norm += st.psi[i] * st.psi[i];
  }
  norm = std::sqrt(norm);
  if (!(norm > 0.0)) throw DegenerateInputError("harmonic state vanishes on the grid");
  for (double& v : st.psi) v /= norm;
  return st;
}

double perturbative_energy(int n, double lambda) {
  if (n < 0) throw ConfigError("perturbative_energy needs n >= 0");
  const double nn = n;
  // Terms whose numerator vanishes are dropped before dividing, so a zero
  // denominator in an inactive term never produces 0/0.
  const auto term = [](double num, double den) { return num == 0.0 ? 0.0 : num / den; };
  const double t1 = term((nn + 1) * (nn + 1.5) * (nn + 1.5) * (nn + 2), 2 + 3 * lambda * (2 * nn + 3));
  const double t2 = term(nn * (nn - 0.5) * (nn - 0.5) * (nn - 1), 2 + 3 * lambda * (2 * nn - 1));
  const double t3 = term((nn + 1) * (nn + 2) * (nn + 3) * (nn + 4), 16 * (4 + 6 * lambda * (2 * nn + 5)));
  const double t4 = term(nn * (nn - 1) * (nn - 2) * (nn - 3), 16 * (4 + 6 * lambda * (2 * nn - 3)));
  return (nn + 0.5) + 0.75 * lambda * (1 + 2 * nn * (nn + 1)) - lambda * lambda * (t1 - t2 + t3 - t4);
}

}  // namespace schrospec
