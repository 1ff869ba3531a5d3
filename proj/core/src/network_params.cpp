#include "schrospec/network_params.hpp"

#include "schrospec/errors.hpp"

#include <string>

namespace schrospec {

namespace {

void check_dims(const std::vector<int>& dims) {
  if (dims.size() < 2) {
    throw ConfigError("network needs at least an input and an output layer");
  }
  for (int d : dims) {
    if (d <= 0) throw ConfigError("layer dimension must be positive, got " + std::to_string(d));
  }
}

}  // namespace

std::size_t NetworkParams::parameter_count(const std::vector<int>& dims) {
  std::size_t total = 0;
  for (std::size_t i = 0; i + 1 < dims.size(); ++i) {
    total += static_cast<std::size_t>(dims[i + 1]) * (static_cast<std::size_t>(dims[i]) + 1);
  }
  return total;
}

NetworkParams::NetworkParams(std::vector<int> layer_dims)
    : NetworkParams(layer_dims, Eigen::VectorXd::Zero(static_cast<Eigen::Index>(
                                    (check_dims(layer_dims), parameter_count(layer_dims))))) {}

NetworkParams::NetworkParams(std::vector<int> layer_dims, Eigen::VectorXd values)
    : dims_(std::move(layer_dims)), values_(std::move(values)) {
  check_dims(dims_);
  const std::size_t expected = parameter_count(dims_);
  if (static_cast<std::size_t>(values_.size()) != expected) {
    throw ConfigError("parameter vector has " + std::to_string(values_.size()) +
                      " entries, layer dims need " + std::to_string(expected));
  }
  offsets_.reserve(dims_.size() - 1);
  std::size_t offset = 0;
  for (std::size_t i = 0; i + 1 < dims_.size(); ++i) {
    offsets_.push_back(offset);
    offset += static_cast<std::size_t>(dims_[i + 1]) * (static_cast<std::size_t>(dims_[i]) + 1);
  }
}

std::size_t NetworkParams::bias_offset(std::size_t layer) const {
  return offsets_[layer] + static_cast<std::size_t>(dims_[layer + 1]) * dims_[layer];
}

Eigen::Map<const RowMatrix> NetworkParams::weights(std::size_t layer) const {
  return {values_.data() + offsets_[layer], dims_[layer + 1], dims_[layer]};
}

Eigen::Map<RowMatrix> NetworkParams::weights(std::size_t layer) {
  return {values_.data() + offsets_[layer], dims_[layer + 1], dims_[layer]};
}

Eigen::Map<const Eigen::VectorXd> NetworkParams::biases(std::size_t layer) const {
  return {values_.data() + bias_offset(layer), dims_[layer + 1]};
}

Eigen::Map<Eigen::VectorXd> NetworkParams::biases(std::size_t layer) {
  return {values_.data() + bias_offset(layer), dims_[layer + 1]};
}

bool NetworkParams::all_finite() const { return values_.allFinite(); }

bool operator==(const NetworkParams& a, const NetworkParams& b) {
  return a.dims_ == b.dims_ && a.values_.size() == b.values_.size() &&
         (a.values_.array() == b.values_.array()).all();
}

}  // namespace schrospec
