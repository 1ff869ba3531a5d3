#include "schrospec/trainer.hpp"

#include "schrospec/checkpoint.hpp"
#include "schrospec/errors.hpp"
#include "schrospec/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <iostream>
#include <random>

namespace schrospec {

Adam::Adam(std::size_t size, double beta1, double beta2, double eps)
    : beta1_(beta1), beta2_(beta2), eps_(eps),
      m_(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(size))),
      v_(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(size))) {}

void Adam::step(Eigen::VectorXd& params, const Eigen::VectorXd& grad, double learning_rate) {
  if (params.size() != m_.size() || grad.size() != m_.size()) {
    throw ConfigError("Adam: parameter/gradient size mismatch");
  }
  ++t_;
  m_ = beta1_ * m_ + (1.0 - beta1_) * grad;
  v_ = beta2_ * v_ + (1.0 - beta2_) * grad.cwiseAbs2();
  const double bc1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
  const double bc2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
  const double step = learning_rate / bc1;
  params.array() -= step * m_.array() / ((v_.array() / bc2).sqrt() + eps_);
}

void TrainConfig::validate() const {
  if (!(learning_rate > 0.0)) throw ConfigError("learning_rate must be > 0");
  if (lr_decay_every < 0) throw ConfigError("lr_decay_every must be >= 0");
  if (!(lr_decay_factor > 0.0 && lr_decay_factor <= 1.0)) {
    throw ConfigError("lr_decay_factor must lie in (0, 1]");
  }
  if (max_epochs < 1) throw ConfigError("max_epochs must be >= 1");
  if (!(total_loss_threshold > 0.0)) throw ConfigError("total_loss_threshold must be > 0");
  if (!(eq_loss_threshold > 0.0)) throw ConfigError("eq_loss_threshold must be > 0");
  if (batch_size < 2) throw ConfigError("batch_size must be >= 2");
  if (!(jitter_fraction >= 0.0 && jitter_fraction <= 0.5)) {
    throw ConfigError("jitter_fraction must lie in [0, 0.5]");
  }
  if (snapshot_points < 2) throw ConfigError("snapshot_points must be >= 2");
  if (shape.psi.width <= 0 || shape.energy.width <= 0 || shape.psi.hidden_layers < 0 ||
      shape.energy.hidden_layers < 0) {
    throw ConfigError("network shape must have positive widths");
  }
}

double TrainConfig::learning_rate_at(int epoch) const {
  if (lr_decay_every <= 0) return learning_rate;
  return learning_rate * std::pow(lr_decay_factor, static_cast<double>(epoch / lr_decay_every));
}

namespace {

void log_row(const ProblemSpec& spec, const TraceRow& row, double lr) {
  const auto& v = row.losses.values;
  std::clog << "[n=" << spec.n << " lambda=" << spec.lambda << "] epoch " << row.epoch
            << std::scientific << std::setprecision(3) << " total=" << row.losses.total
            << " eq=" << v.equation << " int=" << v.integral << " norm=" << v.normalization
            << " bc=" << v.boundary << " orth=" << v.orthogonality << " sym=" << v.symmetry
            << " E=" << std::setprecision(6) << row.energy << " lr=" << std::setprecision(2) << lr;
  if (row.fidelity) std::clog << " F=" << std::fixed << std::setprecision(6) << *row.fidelity;
  std::clog << std::defaultfloat << '\n';
}

}  // namespace

TrainResult train_state(const ProblemSpec& spec, const TrainConfig& cfg,
                        const StateArchive& archive, const std::optional<ModelPair>& init,
                        const Validator& validator) {
  spec.validate();
  cfg.validate();
  if (!archive.covers_below(spec.n)) {
    throw ConfigError("archive must hold exactly the states 0.." + std::to_string(spec.n - 1) +
                      " to train n=" + std::to_string(spec.n));
  }

  TrainResult result;
  if (init) {
    result.model = *init;
  } else if (cfg.transfer_from) {
    result.model = load_checkpoint(*cfg.transfer_from).model;
  } else {
    result.model = init_model(cfg.shape, cfg.seed);
  }
  result.model.validate();
  ModelPair& model = result.model;

  Adam psi_opt(model.psi_net.size(), cfg.adam_beta1, cfg.adam_beta2, cfg.adam_eps);
  Adam energy_opt(model.energy_net.size(), cfg.adam_beta1, cfg.adam_beta2, cfg.adam_eps);

  std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                    static_cast<std::uint32_t>(spec.n), 0x5eedu};
  std::mt19937_64 rng(seq);
  const BatchSpec batch_spec{cfg.batch_size, spec.half_width, cfg.jitter_fraction};

  auto& rows = result.trace.rows;
  rows.reserve(static_cast<std::size_t>(std::min(cfg.max_epochs, 1 << 20)));

  for (int epoch = 0; epoch < cfg.max_epochs; ++epoch) {
    const auto xs = sample_batch(batch_spec, rng);
    const LossTerms weights = cfg.schedule.weights_at(epoch, cfg.scenario, spec.n);

    ObjectiveResult obj;
    try {
      obj = evaluate_objective(model, xs, spec, archive, weights, true);
    } catch (const NumericError& e) {
      result.status = TrainStatus::NumericFailure;
      result.failure = e.term();
      if (!rows.empty()) result.energy = rows.back().energy;
      return result;
    }

    TraceRow row{epoch, obj.breakdown, obj.energy, std::nullopt};
    if (validator && cfg.validate_every > 0 && epoch % cfg.validate_every == 0) {
      row.fidelity = validator(model);
    }
    rows.push_back(row);
    result.energy = obj.energy;

    const bool done = obj.breakdown.total < cfg.total_loss_threshold &&
                      obj.breakdown.values.equation < cfg.eq_loss_threshold;
    const double lr = cfg.learning_rate_at(epoch);
    if (cfg.log_every > 0 && (epoch % cfg.log_every == 0 || done)) log_row(spec, row, lr);
    if (done) {
      result.status = TrainStatus::Converged;
      result.trace.converged = true;
      result.trace.converged_epoch = epoch;
      return result;
    }

    if (!obj.psi_grad.allFinite() || !obj.energy_grad.allFinite()) {
      result.status = TrainStatus::NumericFailure;
      result.failure = "gradient";
      return result;
    }
    psi_opt.step(model.psi_net.values(), obj.psi_grad, lr);
    energy_opt.step(model.energy_net.values(), obj.energy_grad, lr);
  }
  result.status = TrainStatus::NotConverged;
  return result;
}

ArchivedState snapshot_state(const ModelPair& model, const ProblemSpec& spec, double energy,
                             std::size_t points) {
  if (points < 2) throw ConfigError("snapshot needs at least two points");
  std::vector<double> grid(points);
  const double step = 2.0 * spec.half_width / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) grid[i] = -spec.half_width + step * static_cast<double>(i);
  grid.back() = spec.half_width;
  auto psi = psi_values(model, grid);
  return ArchivedState(spec.n, energy, std::move(grid), std::move(psi));
}

ProblemSpec ProblemFamily::state(int n, double e_init_for_state) const {
  ProblemSpec spec;
  spec.omega_sq = omega_sq;
  spec.lambda = lambda;
  spec.n = n;
  spec.s = parity_of(n);
  spec.half_width = domain_override ? *domain_override / 2.0 : training_domain(n, omega_sq, lambda) / 2.0;
  spec.e_init = e_init_for_state;
  spec.a = a;
  return spec;
}

namespace {

SolvedState finish_state(const ProblemSpec& spec, TrainResult result, const TrainConfig& cfg) {
  SolvedState st{spec, std::move(result), std::nullopt};
  if (st.result.status != TrainStatus::NumericFailure) {
    st.snapshot = snapshot_state(st.result.model, spec, st.result.energy, cfg.snapshot_points);
  }
  return st;
}

}  // namespace

CascadeResult train_cascade(const ProblemFamily& family, const TrainConfig& cfg, int n_max,
                            const CascadeHooks& hooks) {
  if (n_max < 0) throw ConfigError("n_max must be >= 0");
  CascadeResult out;
  double previous_energy = family.e_init;
  for (int n = 0; n <= n_max; ++n) {
    const ProblemSpec spec = family.state(n, n == 0 ? family.e_init : previous_energy);

    std::optional<SolvedState> st = hooks.resume ? hooks.resume(n) : std::nullopt;
    if (!st) {
      const std::optional<ModelPair> init = hooks.init_for ? hooks.init_for(n) : std::nullopt;
      const Validator validator = hooks.validator_for ? hooks.validator_for(spec) : Validator{};
      st = finish_state(spec, train_state(spec, cfg, out.archive, init, validator), cfg);
      if (hooks.on_state) hooks.on_state(*st);
    }
    out.states.push_back(*st);
    if (st->result.status != TrainStatus::Converged || !st->snapshot) return out;
    out.archive.add(*st->snapshot);
    previous_energy = st->result.energy;
  }
  out.complete = true;
  return out;
}

std::vector<double> default_lambda_grid() {
  std::vector<double> grid;
  for (int k = 0; k <= 12; ++k) grid.push_back(0.005 * std::ldexp(1.0, k));
  return grid;
}

SweepResult sweep_lambda(const std::vector<ModelPair>& base, double base_lambda,
                         const ProblemFamily& family, std::vector<double> lambdas,
                         const TrainConfig& cfg_in, int n_max, const SweepHooks& hooks) {
  if (n_max < 0) throw ConfigError("n_max must be >= 0");
  if (base.size() < static_cast<std::size_t>(n_max) + 1) {
    throw ConfigError("sweep needs a base checkpoint for every n up to " + std::to_string(n_max));
  }
  std::sort(lambdas.begin(), lambdas.end());
  lambdas.erase(std::unique(lambdas.begin(), lambdas.end()), lambdas.end());

  TrainConfig cfg = cfg_in;
  cfg.scenario = Scenario::Transfer;

  // Solved (lambda, model) per n; the seed models sit at base_lambda.
  std::vector<std::vector<std::pair<double, ModelPair>>> solved(static_cast<std::size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) solved[static_cast<std::size_t>(n)].emplace_back(base_lambda, base[static_cast<std::size_t>(n)]);

  const auto closest = [&](int n, double lambda) -> const ModelPair& {
    const auto& cands = solved[static_cast<std::size_t>(n)];
    const auto it = std::min_element(cands.begin(), cands.end(), [lambda](const auto& a, const auto& b) {
      return std::abs(a.first - lambda) < std::abs(b.first - lambda);
    });
    return it->second;
  };

  SweepResult out;
  for (double lambda : lambdas) {
    ProblemFamily fam = family;
    fam.lambda = lambda;
    StateArchive archive;
    double previous_energy = family.e_init;
    std::vector<SolvedState> at_lambda;

    for (int n = 0; n <= n_max; ++n) {
      const ProblemSpec spec = fam.state(n, n == 0 ? family.e_init : previous_energy);
      std::optional<SolvedState> st = hooks.resume ? hooks.resume(n, lambda) : std::nullopt;
      if (!st) {
        const Validator validator = hooks.validator_for ? hooks.validator_for(spec) : Validator{};
        st = finish_state(spec, train_state(spec, cfg, archive, closest(n, lambda), validator), cfg);
        if (hooks.on_state) hooks.on_state(lambda, *st);
      }
      at_lambda.push_back(*st);
      if (!st->snapshot) break;
      if (st->result.status == TrainStatus::Converged) {
        solved[static_cast<std::size_t>(n)].emplace_back(lambda, st->result.model);
      }
      archive.add(*st->snapshot);
      previous_energy = st->result.energy;
    }
    out.lambdas.push_back(lambda);
    out.states.push_back(std::move(at_lambda));
  }
  return out;
}

}  // namespace schrospec
