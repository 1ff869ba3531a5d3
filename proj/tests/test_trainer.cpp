#include <schrospec/errors.hpp>
#include <schrospec/trainer.hpp>

#include <doctest.h>

#include <cmath>
#include <cstring>

using namespace schrospec;

namespace {

TrainConfig tiny_config(int epochs) {
  TrainConfig cfg;
  cfg.shape = ModelShape{{2, 8}, {1, 4}};
  cfg.max_epochs = epochs;
  cfg.batch_size = 32;
  cfg.snapshot_points = 128;
  return cfg;
}

/// Thresholds every state meets at once: runs stop at epoch 0.
TrainConfig instant_config() {
  TrainConfig cfg = tiny_config(5);
  cfg.total_loss_threshold = 1e12;
  cfg.eq_loss_threshold = 1e12;
  return cfg;
}

bool same_rows(const TrainTrace& a, const TrainTrace& b) {
  if (a.rows.size() != b.rows.size()) return false;
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    const auto& ra = a.rows[i];
    const auto& rb = b.rows[i];
    if (ra.epoch != rb.epoch || ra.energy != rb.energy || ra.losses.total != rb.losses.total) return false;
    if (ra.losses.values.as_array() != rb.losses.values.as_array()) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("first Adam step moves each parameter by the learning rate") {
  Adam adam(3);
  Eigen::VectorXd p(3), g(3);
  p << 1.0, -2.0, 0.5;
  g << 0.3, -4.0, 0.0;
  adam.step(p, g, 0.01);
  CHECK(p[0] == doctest::Approx(1.0 - 0.01 * 0.3 / (0.3 + 1e-8)));
  CHECK(p[1] == doctest::Approx(-2.0 + 0.01));
  CHECK(p[2] == 0.5);
  CHECK(adam.steps() == 1);
}

TEST_CASE("Adam matches a hand-rolled second step") {
  Adam adam(1, 0.9, 0.999, 1e-8);
  Eigen::VectorXd p(1), g(1);
  p << 0.0;
  g << 1.0;
  adam.step(p, g, 0.1);
  g << -2.0;
  adam.step(p, g, 0.1);
  const double m = 0.9 * 0.1 + 0.1 * -2.0;
  const double v = 0.999 * 0.001 + 0.001 * 4.0;
  const double expected = -0.1 / (1 + 1e-8) - 0.1 * (m / (1 - 0.81)) / (std::sqrt(v / (1 - 0.999 * 0.999)) + 1e-8);
  CHECK(p[0] == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("step learning-rate decay") {
  TrainConfig cfg;
  CHECK(cfg.learning_rate_at(0) == 1e-3);
  CHECK(cfg.learning_rate_at(19999) == 1e-3);
  CHECK(cfg.learning_rate_at(20000) == 5e-4);
  CHECK(cfg.learning_rate_at(45000) == 2.5e-4);
}

TEST_CASE("training configuration validation") {
  TrainConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.total_loss_threshold = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = TrainConfig{};
  cfg.eq_loss_threshold = -1.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = TrainConfig{};
  cfg.max_epochs = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("trace length equals the epochs run") {
  ProblemSpec spec;
  const TrainResult r = train_state(spec, tiny_config(7), StateArchive{});
  CHECK(r.status == TrainStatus::NotConverged);
  CHECK(r.trace.rows.size() == 7);
  CHECK_FALSE(r.trace.converged);
  for (std::size_t i = 0; i < r.trace.rows.size(); ++i) {
    CHECK(r.trace.rows[i].epoch == static_cast<int>(i));
    CHECK(std::isfinite(r.trace.rows[i].energy));
  }
  CHECK(r.energy == r.trace.rows.back().energy);
}

TEST_CASE("convergence stops at the first epoch meeting both thresholds") {
  ProblemSpec spec;
  const TrainResult r = train_state(spec, instant_config(), StateArchive{});
  CHECK(r.status == TrainStatus::Converged);
  REQUIRE(r.trace.rows.size() == 1);
  CHECK(r.trace.converged);
  CHECK(r.trace.converged_epoch == 0);
  const auto& last = r.trace.rows.back();
  CHECK(last.losses.total < 1e12);
  CHECK(last.losses.values.equation < 1e12);
  // The returned model is the one that met the thresholds.
  CHECK(r.model == init_model(tiny_config(1).shape, 0));
}

TEST_CASE("deterministic mode reproduces traces exactly") {
  ProblemSpec spec;
  spec.lambda = 0.08;
  const TrainConfig cfg = tiny_config(25);
  const TrainResult a = train_state(spec, cfg, StateArchive{});
  const TrainResult b = train_state(spec, cfg, StateArchive{});
  CHECK(same_rows(a.trace, b.trace));
  CHECK(a.model == b.model);

  TrainConfig other = cfg;
  other.seed = 1;
  CHECK_FALSE(same_rows(a.trace, train_state(spec, other, StateArchive{}).trace));
}

TEST_CASE("archive must hold exactly the lower states") {
  ProblemSpec spec;
  spec.n = 1;
  spec.s = -1;
  spec.half_width = 4.5;
  CHECK_THROWS_AS(train_state(spec, tiny_config(1), StateArchive{}), ConfigError);
}

TEST_CASE("numeric failure keeps the last finite trace") {
  ProblemSpec spec;
  TrainConfig cfg = tiny_config(50);
  cfg.learning_rate = 1e300;  // blows the parameters up after the first step
  const TrainResult r = train_state(spec, cfg, StateArchive{});
  CHECK(r.status == TrainStatus::NumericFailure);
  CHECK_FALSE(r.failure.empty());
  CHECK_FALSE(r.trace.rows.empty());
  for (const auto& row : r.trace.rows) CHECK(std::isfinite(row.losses.total));
}

TEST_CASE("validator runs outside the training step") {
  ProblemSpec spec;
  TrainConfig cfg = tiny_config(6);
  cfg.validate_every = 2;
  int calls = 0;
  const TrainResult r = train_state(spec, cfg, StateArchive{}, std::nullopt, [&](const ModelPair&) {
    ++calls;
    return 0.5;
  });
  CHECK(calls == 3);
  CHECK(r.trace.rows[0].fidelity == 0.5);
  CHECK_FALSE(r.trace.rows[1].fidelity.has_value());
  // Validation does not perturb training.
  CHECK(same_rows(r.trace, train_state(spec, tiny_config(6), StateArchive{}).trace));
}

TEST_CASE("snapshot covers the training domain with unit norm") {
  ProblemSpec spec;
  spec.half_width = 4.5;
  const ArchivedState st = snapshot_state(init_model(ModelShape{{2, 8}, {1, 4}}, 1), spec, 0.7, 2048);
  CHECK(st.grid().size() == 2048);
  CHECK(st.grid().front() == -4.5);
  CHECK(st.grid().back() == 4.5);
  double norm = 0.0;
  for (double v : st.psi()) norm += v * v;
  CHECK(norm == doctest::Approx(1.0));
  CHECK(st.energy() == 0.7);
}

TEST_CASE("cascade alternates parity, widens the domain, and chains E_init") {
  ProblemFamily family;
  std::vector<ProblemSpec> seen;
  CascadeHooks hooks;
  hooks.on_state = [&](const SolvedState& st) { seen.push_back(st.spec); };
  const CascadeResult r = train_cascade(family, instant_config(), 5, hooks);
  CHECK(r.complete);
  REQUIRE(r.states.size() == 6);
  REQUIRE(seen.size() == 6);
  CHECK(r.archive.size() == 6);
  for (int n = 0; n <= 5; ++n) {
    const auto& spec = r.states[static_cast<std::size_t>(n)].spec;
    CHECK(spec.n == n);
    CHECK(spec.s == (n % 2 == 0 ? 1 : -1));
    CHECK(2 * spec.half_width == 7.0 + 2.0 * n);
    if (n == 0) {
      CHECK(spec.e_init == family.e_init);
    } else {
      CHECK(spec.e_init == r.states[static_cast<std::size_t>(n) - 1].result.energy);
    }
  }
}

TEST_CASE("cascade stops at the first state that does not converge") {
  ProblemFamily family;
  const CascadeResult r = train_cascade(family, tiny_config(3), 3);
  CHECK_FALSE(r.complete);
  CHECK(r.states.size() == 1);
  CHECK(r.states[0].result.status == TrainStatus::NotConverged);
}

TEST_CASE("cascade resumes previously solved states") {
  ProblemFamily family;
  const CascadeResult first = train_cascade(family, instant_config(), 1);
  int trained = 0;
  CascadeHooks hooks;
  hooks.resume = [&](int n) -> std::optional<SolvedState> {
    if (n == 0) return first.states[0];
    return std::nullopt;
  };
  hooks.on_state = [&](const SolvedState&) { ++trained; };
  const CascadeResult second = train_cascade(family, instant_config(), 1, hooks);
  CHECK(trained == 1);
  CHECK(second.complete);
  CHECK(second.states[1].result.model == first.states[1].result.model);
}

TEST_CASE("default coupling grid") {
  const auto grid = default_lambda_grid();
  REQUIRE(grid.size() == 13);
  CHECK(grid.front() == 0.005);
  CHECK(grid.back() == doctest::Approx(20.48).epsilon(1e-15));
  for (std::size_t i = 1; i < grid.size(); ++i) CHECK(grid[i] == 2 * grid[i - 1]);
}

TEST_CASE("sweep visits couplings in ascending order in transfer mode") {
  ProblemFamily family;
  const ModelShape shape = tiny_config(1).shape;
  const std::vector<ModelPair> base{init_model(shape, 1), init_model(shape, 2)};
  std::vector<std::pair<double, int>> order;
  SweepHooks hooks;
  hooks.on_state = [&](double lambda, const SolvedState& st) {
    order.emplace_back(lambda, st.spec.n);
    // The first epoch of a transfer run starts from the seed model.
    CHECK(st.result.trace.rows.front().losses.weights.energy_min == 0.0);
    CHECK(st.result.trace.rows.front().losses.weights.orthogonality == 30.0 * st.spec.n);
  };
  TrainConfig cfg = instant_config();
  const SweepResult r = sweep_lambda(base, 0.0, family, {0.02, 0.005, 0.01}, cfg, 1, hooks);
  REQUIRE(r.lambdas == std::vector<double>{0.005, 0.01, 0.02});
  REQUIRE(order.size() == 6);
  CHECK(order[0] == std::pair<double, int>{0.005, 0});
  CHECK(order[1] == std::pair<double, int>{0.005, 1});
  CHECK(order[5] == std::pair<double, int>{0.02, 1});
  // Instant convergence leaves each model untouched, so every coupling
  // inherits the base models through the chain.
  for (const auto& per_lambda : r.states) {
    CHECK(per_lambda[0].result.model == base[0]);
    CHECK(per_lambda[1].result.model == base[1]);
  }
}

TEST_CASE("sweep seeds from the closest converged coupling") {
  ProblemFamily family;
  const ModelShape shape = tiny_config(1).shape;
  const std::vector<ModelPair> base{init_model(shape, 1)};
  std::vector<ModelPair> inits;
  SweepHooks hooks;
  // Pretend lambda = 0.04 was solved earlier with a distinct model.
  const ModelPair solved_004 = init_model(shape, 99);
  hooks.resume = [&](int, double lambda) -> std::optional<SolvedState> {
    if (lambda != 0.04) return std::nullopt;
    ProblemSpec spec = family.state(0, 0.0);
    spec.lambda = 0.04;
    TrainResult tr;
    tr.model = solved_004;
    tr.status = TrainStatus::Converged;
    return SolvedState{spec, tr, snapshot_state(solved_004, spec, 0.5, 64)};
  };
  hooks.on_state = [&](double, const SolvedState& st) { inits.push_back(st.result.model); };
  sweep_lambda(base, 0.0, family, {0.01, 0.04, 0.08}, instant_config(), 0, hooks);
  REQUIRE(inits.size() == 2);
  CHECK(inits[0] == base[0]);      // 0.01 is closest to the base coupling
  CHECK(inits[1] == solved_004);   // 0.08 is closest to 0.04
}

TEST_CASE("sweep needs a base model for every state") {
  ProblemFamily family;
  CHECK_THROWS_AS(sweep_lambda({}, 0.0, family, {0.005}, instant_config(), 0), ConfigError);
}
