#include "fd.hpp"

#include <schrospec/errors.hpp>
#include <schrospec/networks.hpp>

#include <doctest.h>

#include <cstring>
#include <limits>

using namespace schrospec;

TEST_CASE("full-size layer dimensions") {
  CHECK(psi_layer_dims(ModelShape{}.psi) == std::vector<int>{1, 256, 256, 256, 256, 256, 256, 256, 2});
  CHECK(energy_layer_dims(ModelShape{}.energy) == std::vector<int>{1, 256, 256, 256, 256, 1});
}

TEST_CASE("parameter layout") {
  NetworkParams p({1, 3, 2});
  CHECK(p.size() == 3 + 3 + 6 + 2);
  CHECK(NetworkParams::parameter_count({1, 3, 2}) == p.size());
  CHECK(p.weight_offset(0) == 0);
  CHECK(p.bias_offset(0) == 3);
  CHECK(p.weight_offset(1) == 6);
  CHECK(p.bias_offset(1) == 12);
  p.weights(1)(1, 2) = 4.0;  // row-major: row 1, col 2
  CHECK(p.values()[6 + 1 * 3 + 2] == 4.0);

  CHECK_THROWS_AS(NetworkParams({1}), ConfigError);
  CHECK_THROWS_AS(NetworkParams({1, 0, 2}), ConfigError);
  CHECK_THROWS_AS(NetworkParams({1, 2}, Eigen::VectorXd::Zero(3)), ConfigError);
}

TEST_CASE("initialization is reproducible per seed") {
  const ModelShape shape{{2, 16}, {2, 8}};
  CHECK(init_model(shape, 0) == init_model(shape, 0));
  CHECK_FALSE(init_model(shape, 0) == init_model(shape, 1));
}

TEST_CASE("glorot bounds and zero biases") {
  const ModelPair m = init_model(ModelShape{{3, 32}, {2, 16}}, 7);
  const auto& p = m.psi_net;
  for (std::size_t l = 0; l < p.num_layers(); ++l) {
    const double fan_in = p.layer_dims()[l];
    const double fan_out = p.layer_dims()[l + 1];
    const double limit = std::sqrt(6.0 / (fan_in + fan_out));
    CHECK(p.weights(l).cwiseAbs().maxCoeff() <= limit);
    CHECK(p.biases(l).isZero(0.0));
  }
}

TEST_CASE("zero-weight network outputs zero everywhere") {
  ModelPair m{NetworkParams(psi_layer_dims({2, 4})), NetworkParams(energy_layer_dims({1, 4}))};
  for (double x : {-2.0, 0.0, 1.5}) {
    const EvalBundle b = evaluate(m, x);
    CHECK(b.psi == 0.0);
    CHECK(b.dpsi == 0.0);
    CHECK(b.d2psi == 0.0);
    CHECK(b.nu == 0.0);
    CHECK(b.dnu == 0.0);
  }
  CHECK(predict_energy(m) == 0.0);
}

TEST_CASE("energy head does not depend on x") {
  const ModelPair m = init_model(ModelShape{{2, 8}, {2, 8}}, 4);
  CHECK(predict_energy(m) == predict_energy(m));
  CHECK(predict_energy(m) != 0.0);
}

TEST_CASE("dnu/dx from jets matches a finite difference of nu") {
  const ModelPair m = init_model(ModelShape{{3, 16}, {1, 4}}, 21);
  for (double x : {-2.5, -0.3, 0.8, 3.1}) {
    const auto nu = [&](double t) { return evaluate(m, t).nu; };
    CHECK(test::rel_err(evaluate(m, x).dnu, test::fd5(nu, x, 1e-3), 1e-3) <= 1e-6);
  }
}

TEST_CASE("batch evaluation matches pointwise evaluation and is pure") {
  const ModelPair m = init_model(ModelShape{{3, 16}, {1, 4}}, 9);
  const std::vector<double> xs{-1.0, -0.25, 0.5, 2.0};
  const auto batch = evaluate_batch(m, xs);
  const auto values = psi_values(m, xs);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const EvalBundle one = evaluate(m, xs[i]);
    CHECK(batch[i].x == xs[i]);
    CHECK(batch[i].psi == doctest::Approx(one.psi).epsilon(1e-13));
    CHECK(batch[i].d2psi == doctest::Approx(one.d2psi).epsilon(1e-12));
    CHECK(batch[i].dnu == doctest::Approx(one.dnu).epsilon(1e-12));
    CHECK(values[i] == batch[i].psi);
    const EvalBundle again = evaluate(m, xs[i]);
    CHECK(std::memcmp(&one, &again, sizeof(EvalBundle)) == 0);
  }
}

TEST_CASE("non-finite output is a numeric error") {
  ModelPair m = init_model(ModelShape{{1, 4}, {1, 4}}, 0);
  m.psi_net.biases(1)[0] = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(evaluate(m, 0.0), NumericError);
  CHECK_THROWS_AS(evaluate_batch(m, std::vector<double>{0.0}), NumericError);
}

TEST_CASE("model validation") {
  ModelPair m = init_model(ModelShape{{1, 4}, {1, 4}}, 0);
  CHECK_NOTHROW(m.validate());
  std::swap(m.psi_net, m.energy_net);
  CHECK_THROWS_AS(m.validate(), ConfigError);
}
