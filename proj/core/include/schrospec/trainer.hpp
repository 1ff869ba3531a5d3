#pragma once

#include "schrospec/losses.hpp"
#include "schrospec/networks.hpp"
#include "schrospec/problem.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <vector>

namespace schrospec {

class Adam {
public:
  Adam(std::size_t size, double beta1 = 0.9, double beta2 = 0.999, double eps = 1e-8);

  void step(Eigen::VectorXd& params, const Eigen::VectorXd& grad, double learning_rate);
  std::int64_t steps() const noexcept { return t_; }

private:
  double beta1_, beta2_, eps_;
  std::int64_t t_ = 0;
  Eigen::VectorXd m_, v_;
};

struct TrainConfig {
  double learning_rate = 1e-3;
  int lr_decay_every = 20000;
  double lr_decay_factor = 0.5;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_eps = 1e-8;

  int max_epochs = 200000;
  double total_loss_threshold = 5e-2;
  double eq_loss_threshold = 4e-4;

  std::uint64_t seed = 0;
  std::optional<std::filesystem::path> transfer_from;
  Scenario scenario = Scenario::Fresh;
  WeightSchedule schedule;

  std::size_t batch_size = 512;
  double jitter_fraction = 0.5;
  ModelShape shape;

  /// Single-threaded, fixed-order reductions; identical traces for identical
  /// inputs.
  bool deterministic = true;

  /// Points in the dense snapshot stored for the orthogonality loss.
  std::size_t snapshot_points = 2048;

  /// Log progress to std::clog every this many epochs (0 = silent).
  int log_every = 0;

  /// Compute the validation fidelity every this many epochs (0 = never).
  int validate_every = 0;

  void validate() const;

  double learning_rate_at(int epoch) const;
};

struct TraceRow {
  int epoch = 0;
  LossBreakdown losses;
  double energy = 0.0;
  std::optional<double> fidelity;
};

struct TrainTrace {
  std::vector<TraceRow> rows;
  bool converged = false;
  /// Epoch index at which both thresholds were met, if they were.
  std::optional<int> converged_epoch;
};

enum class TrainStatus { Converged, NotConverged, NumericFailure };

struct TrainResult {
  ModelPair model;
  TrainTrace trace;
  TrainStatus status = TrainStatus::NotConverged;
  double energy = 0.0;
  std::string failure;  ///< non-finite term name on NumericFailure
};

/// Optional validation applied outside the training step, e.g. fidelity
/// against a known reference state.
using Validator = std::function<double(const ModelPair&)>;

/// Trains one state. Initialization precedence: `init`, then
/// cfg.transfer_from, then a fresh seed-derived model. Throws ConfigError if
/// the archive does not hold exactly the states below spec.n.
TrainResult train_state(const ProblemSpec& spec, const TrainConfig& cfg,
                        const StateArchive& archive,
                        const std::optional<ModelPair>& init = std::nullopt,
                        const Validator& validator = {});

/// Samples the converged wavefunction on `points` uniform nodes spanning the
/// training domain, normalized to unit discrete norm.
ArchivedState snapshot_state(const ModelPair& model, const ProblemSpec& spec, double energy,
                             std::size_t points = 2048);

/// Physical parameters shared by every state of a cascade or sweep.
struct ProblemFamily {
  double omega_sq = 1.0;
  double lambda = 0.0;
  double e_init = 0.0;  ///< ground-state E_init; excited states use the previous energy
  double a = 0.8;
  std::optional<double> domain_override;  ///< full width L, all n

  ProblemSpec state(int n, double e_init_for_state) const;
};

struct SolvedState {
  ProblemSpec spec;
  TrainResult result;
  std::optional<ArchivedState> snapshot;  ///< absent after a numeric failure
};

struct CascadeHooks {
  /// Initial model for state n, if any (transfer learning).
  std::function<std::optional<ModelPair>(int n)> init_for;
  /// Previously solved state n to reuse instead of training.
  std::function<std::optional<SolvedState>(int n)> resume;
  std::function<void(const SolvedState&)> on_state;
  std::function<Validator(const ProblemSpec&)> validator_for;
};

struct CascadeResult {
  std::vector<SolvedState> states;
  StateArchive archive;
  bool complete = false;
};

/// Trains n = 0..n_max in order, alternating parity and archiving each
/// converged state for the orthogonality loss of the next. Stops at the first
/// state that fails to converge.
CascadeResult train_cascade(const ProblemFamily& family, const TrainConfig& cfg, int n_max,
                            const CascadeHooks& hooks = {});

struct SweepHooks {
  std::function<std::optional<SolvedState>(int n, double lambda)> resume;
  std::function<void(double lambda, const SolvedState&)> on_state;
  std::function<Validator(const ProblemSpec&)> validator_for;
};

struct SweepResult {
  std::vector<double> lambdas;
  std::vector<std::vector<SolvedState>> states;  ///< per lambda, per n
};

/// The standard coupling grid 0.005 * 2^k, k = 0..12.
std::vector<double> default_lambda_grid();

/// Solves states 0..n_max for each lambda in ascending order, initializing
/// every run from the same state at the closest lambda where it converged;
/// `base` holds the seed models per n at `base_lambda`. Transfer-mode
/// weights apply. Non-convergence is recorded, not fatal. Throws ConfigError
/// when `base` lacks a state.
SweepResult sweep_lambda(const std::vector<ModelPair>& base, double base_lambda,
                         const ProblemFamily& family, std::vector<double> lambdas,
                         const TrainConfig& cfg, int n_max, const SweepHooks& hooks = {});

}  // namespace schrospec
