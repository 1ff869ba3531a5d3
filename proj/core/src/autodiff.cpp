#include "schrospec/autodiff.hpp"

#include "schrospec/errors.hpp"

namespace schrospec {

std::vector<Jet2> jet_forward(const NetworkParams& params, Jet2 input) {
  if (params.num_layers() == 0 || params.input_dim() != 1) {
    throw ConfigError("jet_forward expects a network with scalar input");
  }
  std::vector<Jet2> act{input};
  std::vector<Jet2> next;
  for (std::size_t l = 0; l < params.num_layers(); ++l) {
    const auto w = params.weights(l);
    const auto b = params.biases(l);
    const bool hidden = l + 1 < params.num_layers();
    next.assign(static_cast<std::size_t>(w.rows()), Jet2{});
    for (Eigen::Index i = 0; i < w.rows(); ++i) {
      Jet2 z = Jet2::constant(b[i]);
      for (Eigen::Index j = 0; j < w.cols(); ++j) z = z + w(i, j) * act[static_cast<std::size_t>(j)];
      next[static_cast<std::size_t>(i)] = hidden ? tanh(z) : z;
    }
    act.swap(next);
  }
  return act;
}

JetBatch JetBatch::zeros_like(const JetBatch& other) {
  return {Eigen::MatrixXd::Zero(other.value.rows(), other.value.cols()),
          Eigen::MatrixXd::Zero(other.d1.rows(), other.d1.cols()),
          Eigen::MatrixXd::Zero(other.d2.rows(), other.d2.cols())};
}

JetBatch Tape::forward(const NetworkParams& params, std::span<const double> inputs,
                       std::size_t jet_count) {
  if (params.num_layers() == 0 || params.input_dim() != 1) {
    throw ConfigError("Tape::forward expects a network with scalar input");
  }
  if (jet_count > inputs.size()) throw ConfigError("jet count exceeds number of inputs");

  params_ = &params;
  const auto m = static_cast<Eigen::Index>(inputs.size());
  const auto k = static_cast<Eigen::Index>(jet_count);
  points_ = inputs.size();
  jets_ = jet_count;
  const std::size_t depth = params.num_layers();
  layers_.resize(depth);

  // Stacked layout per layer input: [values (m) | d/dx (k) | d2/dx2 (k)].
  Eigen::MatrixXd& in0 = layers_[0].input;
  in0.resize(1, m + 2 * k);
  for (Eigen::Index j = 0; j < m; ++j) in0(0, j) = inputs[static_cast<std::size_t>(j)];
  in0.block(0, m, 1, k).setOnes();
  in0.block(0, m + k, 1, k).setZero();

  JetBatch out;
  for (std::size_t l = 0; l < depth; ++l) {
    const auto w = params.weights(l);
    const auto b = params.biases(l);
    Eigen::MatrixXd z = w * layers_[l].input;
    z.leftCols(m).colwise() += b;

    if (l + 1 == depth) {
      out.value = z.leftCols(m);
      out.d1 = z.middleCols(m, k);
      out.d2 = z.rightCols(k);
      break;
    }

    layers_[l].pre_derivs = z.rightCols(2 * k);
    Eigen::MatrixXd& h = layers_[l + 1].input;
    h.resize(z.rows(), z.cols());
    h.leftCols(m) = z.leftCols(m).array().tanh();
    const auto t = h.leftCols(k).array();
    const Eigen::ArrayXXd dt = 1.0 - t.square();
    const auto z1 = z.middleCols(m, k).array();
    const auto z2 = z.rightCols(k).array();
    h.middleCols(m, k) = dt * z1;
    h.rightCols(k) = dt * z2 - 2.0 * t * dt * z1.square();
  }
  return out;
}

void Tape::backward(const JetBatch& adjoint, Eigen::Ref<Eigen::VectorXd> gradient) const {
  if (params_ == nullptr) throw ConfigError("Tape::backward called before forward");
  const NetworkParams& params = *params_;
  const auto m = static_cast<Eigen::Index>(points_);
  const auto k = static_cast<Eigen::Index>(jets_);
  if (adjoint.value.cols() != m || adjoint.d1.cols() != k || adjoint.d2.cols() != k ||
      adjoint.value.rows() != params.output_dim()) {
    throw ConfigError("adjoint shape does not match the recorded forward pass");
  }
  if (gradient.size() != static_cast<Eigen::Index>(params.size())) {
    throw ConfigError("gradient buffer does not match parameter count");
  }

  const std::size_t depth = params.num_layers();
  Eigen::MatrixXd g(adjoint.value.rows(), m + 2 * k);
  g.leftCols(m) = adjoint.value;
  g.middleCols(m, k) = adjoint.d1;
  g.rightCols(k) = adjoint.d2;

  for (std::size_t l = depth; l-- > 0;) {
    const auto w = params.weights(l);
    const Eigen::MatrixXd& a = layers_[l].input;
    const auto rows = w.rows();
    const auto cols = w.cols();
    Eigen::Map<RowMatrix> gw(gradient.data() + params.weight_offset(l), rows, cols);
    gw.noalias() += g * a.transpose();
    gradient.segment(static_cast<Eigen::Index>(params.bias_offset(l)), rows) +=
        g.leftCols(m).rowwise().sum();
    if (l == 0) break;

    // Adjoint of the previous layer's tanh outputs, then back through tanh.
    Eigen::MatrixXd gh = w.transpose() * g;
    const Eigen::MatrixXd& h = layers_[l].input;
    const Eigen::MatrixXd& zd = layers_[l - 1].pre_derivs;
    const auto t = h.leftCols(m).array();
    const Eigen::ArrayXXd dt = 1.0 - t.square();

    Eigen::MatrixXd gz(gh.rows(), gh.cols());
    gz.leftCols(m) = gh.leftCols(m).array() * dt;
    if (k > 0) {
      const auto tk = t.leftCols(k);
      const auto dtk = dt.leftCols(k);
      const Eigen::ArrayXXd ddt = -2.0 * tk * dtk;
      const Eigen::ArrayXXd dddt = -2.0 * dtk.square() + 4.0 * tk.square() * dtk;
      const auto z1 = zd.leftCols(k).array();
      const auto z2 = zd.rightCols(k).array();
      const auto g1 = gh.middleCols(m, k).array();
      const auto g2 = gh.rightCols(k).array();
      gz.leftCols(k).array() += g1 * ddt * z1 + g2 * (ddt * z2 + dddt * z1.square());
      gz.middleCols(m, k) = g1 * dtk + 2.0 * g2 * ddt * z1;
      gz.rightCols(k) = g2 * dtk;
    }
    g.swap(gz);
  }
}

Eigen::VectorXd Tape::backward(const JetBatch& adjoint) const {
  if (params_ == nullptr) throw ConfigError("Tape::backward called before forward");
  Eigen::VectorXd gradient = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(params_->size()));
  backward(adjoint, gradient);
  return gradient;
}

}  // namespace schrospec
