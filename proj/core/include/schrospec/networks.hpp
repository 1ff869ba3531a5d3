#pragma once

#include "schrospec/autodiff.hpp"
#include "schrospec/network_params.hpp"

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace schrospec {

struct MlpShape {
  int hidden_layers = 7;
  int width = 256;
};

/// Architecture of both networks. Defaults are the full-size models: seven
/// hidden layers of 256 for the wavefunction, four of 256 for the energy.
struct ModelShape {
  MlpShape psi{7, 256};
  MlpShape energy{4, 256};
};

/// Output heads of the wavefunction network.
enum PsiHead : int { kPsi = 0, kNu = 1 };

/// Wavefunction network (x -> psi, nu) and energy network (1 -> E).
struct ModelPair {
  NetworkParams psi_net;
  NetworkParams energy_net;

  /// Throws ConfigError unless psi_net maps 1 -> 2 and energy_net maps 1 -> 1.
  void validate() const;

  friend bool operator==(const ModelPair&, const ModelPair&) = default;
};

/// Network outputs and their x-derivatives at one collocation point.
struct EvalBundle {
  double x = 0.0;
  double psi = 0.0;
  double dpsi = 0.0;
  double d2psi = 0.0;
  double nu = 0.0;
  double dnu = 0.0;
};

std::vector<int> psi_layer_dims(const MlpShape& shape);
std::vector<int> energy_layer_dims(const MlpShape& shape);

/// Glorot-uniform weights, zero biases.
void glorot_uniform(NetworkParams& params, std::mt19937_64& rng);

/// Fresh model, reproducible per seed.
ModelPair init_model(const ModelShape& shape, std::uint64_t seed);

/// Output of the energy network for its constant input 1.
double predict_energy(const ModelPair& model);

/// Single-point evaluation through scalar jets. Throws NumericError on a
/// non-finite output.
EvalBundle evaluate(const ModelPair& model, double x);

/// Batched evaluation; same contract as evaluate().
std::vector<EvalBundle> evaluate_batch(const ModelPair& model, std::span<const double> xs);

/// psi only (no derivatives), batched.
std::vector<double> psi_values(const ModelPair& model, std::span<const double> xs);

}  // namespace schrospec
