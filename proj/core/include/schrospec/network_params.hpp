#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <vector>

namespace schrospec {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Parameters of a dense MLP with tanh hidden layers and an identity output
/// layer. All parameters live in one flat vector, layer by layer: the weight
/// matrix (out x in, row-major) followed by the bias vector. This is also the
/// order used by gradients, the optimizer, and checkpoints.
class NetworkParams {
public:
  NetworkParams() = default;

  /// Zero-initialized parameters. Throws ConfigError on fewer than two
  /// layers or non-positive dimensions.
  explicit NetworkParams(std::vector<int> layer_dims);

  /// Throws ConfigError when `values` does not match the layer dimensions.
  NetworkParams(std::vector<int> layer_dims, Eigen::VectorXd values);

  const std::vector<int>& layer_dims() const noexcept { return dims_; }
  std::size_t num_layers() const noexcept { return dims_.empty() ? 0 : dims_.size() - 1; }
  int input_dim() const { return dims_.front(); }
  int output_dim() const { return dims_.back(); }
  std::size_t size() const noexcept { return static_cast<std::size_t>(values_.size()); }

  Eigen::Map<const RowMatrix> weights(std::size_t layer) const;
  Eigen::Map<RowMatrix> weights(std::size_t layer);
  Eigen::Map<const Eigen::VectorXd> biases(std::size_t layer) const;
  Eigen::Map<Eigen::VectorXd> biases(std::size_t layer);

  std::size_t weight_offset(std::size_t layer) const { return offsets_[layer]; }
  std::size_t bias_offset(std::size_t layer) const;

  const Eigen::VectorXd& values() const noexcept { return values_; }
  Eigen::VectorXd& values() noexcept { return values_; }

  bool all_finite() const;

  static std::size_t parameter_count(const std::vector<int>& layer_dims);

  friend bool operator==(const NetworkParams& a, const NetworkParams& b);

private:
  std::vector<int> dims_;
  std::vector<std::size_t> offsets_;
  Eigen::VectorXd values_;
};

}  // namespace schrospec
