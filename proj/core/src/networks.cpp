#include "schrospec/networks.hpp"

#include "schrospec/errors.hpp"

#include <cmath>
#include <string>

namespace schrospec {

namespace {

std::vector<int> mlp_dims(const MlpShape& shape, int out) {
  if (shape.hidden_layers < 0 || shape.width <= 0) {
    throw ConfigError("invalid MLP shape: hidden_layers=" + std::to_string(shape.hidden_layers) +
                      " width=" + std::to_string(shape.width));
  }
  std::vector<int> dims{1};
  for (int i = 0; i < shape.hidden_layers; ++i) dims.push_back(shape.width);
  dims.push_back(out);
  return dims;
}

void require_finite(double v, const char* head) {
  if (!std::isfinite(v)) throw NumericError(head, std::string("non-finite network output: ") + head);
}

}  // namespace

std::vector<int> psi_layer_dims(const MlpShape& shape) { return mlp_dims(shape, 2); }
std::vector<int> energy_layer_dims(const MlpShape& shape) { return mlp_dims(shape, 1); }

void ModelPair::validate() const {
  if (psi_net.num_layers() == 0 || psi_net.input_dim() != 1 || psi_net.output_dim() != 2) {
    throw ConfigError("psi network must map 1 input to 2 outputs (psi, nu)");
  }
  if (energy_net.num_layers() == 0 || energy_net.input_dim() != 1 ||
      energy_net.output_dim() != 1) {
    throw ConfigError("energy network must map 1 input to 1 output");
  }
}

void glorot_uniform(NetworkParams& params, std::mt19937_64& rng) {
  for (std::size_t l = 0; l < params.num_layers(); ++l) {
    auto w = params.weights(l);
    const double limit = std::sqrt(6.0 / static_cast<double>(w.rows() + w.cols()));
    std::uniform_real_distribution<double> dist(-limit, limit);
    for (Eigen::Index i = 0; i < w.rows(); ++i) {
      for (Eigen::Index j = 0; j < w.cols(); ++j) w(i, j) = dist(rng);
    }
    params.biases(l).setZero();
  }
}

ModelPair init_model(const ModelShape& shape, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  ModelPair model{NetworkParams(psi_layer_dims(shape.psi)),
                  NetworkParams(energy_layer_dims(shape.energy))};
  glorot_uniform(model.psi_net, rng);
  glorot_uniform(model.energy_net, rng);
  return model;
}

double predict_energy(const ModelPair& model) {
  const double e = jet_forward(model.energy_net, Jet2::constant(1.0)).front().value;
  require_finite(e, "energy");
  return e;
}

EvalBundle evaluate(const ModelPair& model, double x) {
  const auto out = jet_forward(model.psi_net, x);
  EvalBundle b{x, out[kPsi].value, out[kPsi].d1, out[kPsi].d2, out[kNu].value, out[kNu].d1};
  require_finite(b.psi, "psi");
  require_finite(b.dpsi, "dpsi");
  require_finite(b.d2psi, "d2psi");
  require_finite(b.nu, "nu");
  require_finite(b.dnu, "dnu");
  return b;
}

std::vector<EvalBundle> evaluate_batch(const ModelPair& model, std::span<const double> xs) {
  Tape tape;
  const JetBatch out = tape.forward(model.psi_net, xs, xs.size());
  std::vector<EvalBundle> result(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const auto j = static_cast<Eigen::Index>(i);
    result[i] = {xs[i], out.value(kPsi, j), out.d1(kPsi, j), out.d2(kPsi, j), out.value(kNu, j),
                 out.d1(kNu, j)};
  }
  if (!out.value.allFinite() || !out.d1.allFinite() || !out.d2.allFinite()) {
    throw NumericError("psi", "non-finite network output in batch evaluation");
  }
  return result;
}

std::vector<double> psi_values(const ModelPair& model, std::span<const double> xs) {
  Tape tape;
  const JetBatch out = tape.forward(model.psi_net, xs, 0);
  std::vector<double> psi(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) psi[i] = out.value(kPsi, static_cast<Eigen::Index>(i));
  return psi;
}

}  // namespace schrospec
