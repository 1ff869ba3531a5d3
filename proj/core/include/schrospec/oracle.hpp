#pragma once

#include <span>
#include <vector>

namespace schrospec {

/// Reference eigenpairs on a uniform grid over [-X, X] (endpoints included,
/// where the wavefunctions vanish). Wavefunctions have unit discrete norm and
/// a fixed sign: the first component above 1e-6 of the maximum is positive.
struct OracleSolution {
  std::vector<double> grid;
  std::vector<double> energies;
  std::vector<std::vector<double>> wavefunctions;
  /// Grid points of the finest mesh used for the extrapolated energies.
  int finest_grid_points = 0;

  /// Linear interpolation of state k; zero outside the grid.
  double evaluate(std::size_t k, double x) const;
};

struct OracleOptions {
  int grid_points = 4001;
  double richardson_tol = 1e-8;
  int max_grid_points = 1 << 19;
};

/// Lowest k eigenpairs of the central-difference discretization of
/// -1/2 d^2/dx^2 + omega_sq x^2 / 2 + lambda x^4 on [-X, X] with Dirichlet
/// ends. Energies are Richardson-extrapolated from successively halved grids
/// until two extrapolations agree to options.richardson_tol.
///
/// Throws OracleError: InvalidArgument (grid_points < 201, X <= 0, k < 1),
/// DomainTooSmall (|psi_k| >= 1e-8 next to either end), NoConvergence.
OracleSolution diagonalize(double omega_sq, double lambda, double X, int k,
                           const OracleOptions& options = {});

/// Default oracle half-width: max(L(k), L_a(k, lambda, 1)) / 2 + 2.
double default_oracle_half_width(int k, double lambda);

/// diagonalize() on the default half-width for k states.
inline OracleSolution diagonalize_default(double omega_sq, double lambda, int k,
                                          const OracleOptions& options = {}) {
  return diagonalize(omega_sq, lambda, default_oracle_half_width(k, lambda), k, options);
}

/// Harmonic-oscillator eigenfunction (Hermite function), L2-normalized on the
/// real line.
double harmonic_wavefunction(int n, double omega, double x);

struct HarmonicState {
  std::vector<double> psi;  ///< unit discrete norm on the grid
  double energy = 0.0;
};

HarmonicState harmonic_exact(int n, double omega, std::span<const double> grid);

/// Second-order Rayleigh-Schrodinger-type formula for omega = 1.
double perturbative_energy(int n, double lambda);

// Symmetric tridiagonal primitives (exposed for tests and benchmarks).

/// Lowest `count` eigenvalues, ascending, by Sturm-sequence bisection.
std::vector<double> tridiagonal_lowest_eigenvalues(std::span<const double> diag,
                                                   std::span<const double> offdiag,
                                                   std::size_t count);

/// Number of eigenvalues strictly below `shift`.
std::size_t sturm_count(std::span<const double> diag, std::span<const double> offdiag,
                        double shift);

/// Eigenvector for a computed eigenvalue by inverse iteration, unit 2-norm,
/// orthogonalized against `previous`.
std::vector<double> tridiagonal_eigenvector(std::span<const double> diag,
                                            std::span<const double> offdiag, double eigenvalue,
                                            const std::vector<std::vector<double>>& previous = {});

}  // namespace schrospec
