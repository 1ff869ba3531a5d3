#pragma once

#include "schrospec/networks.hpp"
#include "schrospec/problem.hpp"

#include <Eigen/Core>

#include <array>
#include <span>
#include <string_view>
#include <vector>

namespace schrospec {

/// One value per loss term. Used both for loss values and for weights.
struct LossTerms {
  double integral = 0.0;
  double normalization = 0.0;
  double boundary = 0.0;
  double orthogonality = 0.0;
  double equation = 0.0;
  double energy_min = 0.0;
  double symmetry = 0.0;

  static constexpr std::array<std::string_view, 7> names{
      "integral", "normalization", "boundary", "orthogonality",
      "equation", "energy_min",    "symmetry"};

  std::array<double, 7> as_array() const noexcept {
    return {integral, normalization, boundary, orthogonality, equation, energy_min, symmetry};
  }
  double dot(const LossTerms& w) const noexcept;
};

struct LossBreakdown {
  LossTerms values;
  LossTerms weights;
  double total = 0.0;
};

/// Static loss weights of a fresh run. Orthogonality scales with n.
struct LossWeights {
  double normalization = 500.0;
  double integral = 1000.0;
  double boundary = 10.0;
  double symmetry = 1000.0;
  double orthogonality_per_n = 500.0;
  double equation_start = 1.0;
  double energy_start = 100.0;
};

enum class Scenario { Fresh, Transfer };

/// Epoch-dependent weights. The equation weight ramps linearly from
/// equation_start to equation_end over equation_ramp_epochs and then holds;
/// the energy weight decays linearly to zero over energy_decay_epochs.
/// Transfer runs replace the orthogonality and energy weights.
struct WeightSchedule {
  LossWeights base;
  double equation_end = 100.0;
  int equation_ramp_epochs = 10000;
  int energy_decay_epochs = 10000;
  double transfer_orthogonality_per_n = 30.0;
  double transfer_energy_start = 0.0;

  LossTerms weights_at(int epoch, Scenario scenario, int n) const;
};

/// A converged state sampled on a dense grid, evaluable anywhere by linear
/// interpolation and zero outside its grid. psi has unit discrete norm.
class ArchivedState {
public:
  ArchivedState(int n, double energy, std::vector<double> grid, std::vector<double> psi);

  int n() const noexcept { return n_; }
  double energy() const noexcept { return energy_; }
  const std::vector<double>& grid() const noexcept { return grid_; }
  const std::vector<double>& psi() const noexcept { return psi_; }

  double operator()(double x) const noexcept;

private:
  int n_;
  double energy_;
  std::vector<double> grid_;
  std::vector<double> psi_;
};

/// Previously converged states 0..n-1 used by the orthogonality loss.
class StateArchive {
public:
  void add(ArchivedState state) { states_.push_back(std::move(state)); }
  std::size_t size() const noexcept { return states_.size(); }
  bool empty() const noexcept { return states_.empty(); }
  const ArchivedState& operator[](std::size_t i) const { return states_[i]; }
  auto begin() const noexcept { return states_.begin(); }
  auto end() const noexcept { return states_.end(); }

  /// True when the archive holds exactly the states 0..n-1.
  bool covers_below(int n) const;

private:
  std::vector<ArchivedState> states_;
};

// Individual terms. MSE metric unless noted.

double integral_loss(std::span<const EvalBundle> batch);

/// Sum of absolute errors of nu(-L/2) = 0 and nu(L/2) = 1.
double normalization_loss(double nu_left, double nu_right);
double normalization_loss(const ModelPair& model, double half_width);

/// Sum of absolute errors of psi(+-L/2) = 0.
double boundary_loss(double psi_left, double psi_right);
double boundary_loss(const ModelPair& model, double half_width);

/// Sum over archived states of the squared overlap, both vectors normalized
/// on the batch grid. Zero when the archive is empty or psi vanishes.
double orthogonality_loss(std::span<const double> xs, std::span<const double> psi,
                          const StateArchive& archive);

double equation_loss(std::span<const EvalBundle> batch, double energy, const ProblemSpec& spec);

double energy_min_loss(double energy, const ProblemSpec& spec);

double symmetry_loss(std::span<const double> psi, std::span<const double> psi_mirror, int s);
double symmetry_loss(std::span<const EvalBundle> batch, const ModelPair& model, int s);

LossBreakdown total_loss(const LossTerms& values, const LossTerms& weights);

/// Full objective on one batch, optionally with gradients for both networks.
struct ObjectiveResult {
  LossBreakdown breakdown;
  double energy = 0.0;
  Eigen::VectorXd psi_grad;
  Eigen::VectorXd energy_grad;
};

/// Evaluates all seven terms on the collocation points `xs` (plus their
/// mirror images and the two domain endpoints) and, when requested, the
/// gradient of the weighted total by reverse accumulation. Throws
/// NumericError naming the first non-finite term.
ObjectiveResult evaluate_objective(const ModelPair& model, std::span<const double> xs,
                                   const ProblemSpec& spec, const StateArchive& archive,
                                   const LossTerms& weights, bool with_gradient = true);

}  // namespace schrospec
