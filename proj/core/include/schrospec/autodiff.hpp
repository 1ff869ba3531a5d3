#pragma once

#include "schrospec/network_params.hpp"

#include <Eigen/Core>

#include <cmath>
#include <span>
#include <vector>

namespace schrospec {

/// Second-order forward jet: a value together with its first and second
/// derivative with respect to the scalar network input x.
struct Jet2 {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;

  static constexpr Jet2 variable(double x) noexcept { return {x, 1.0, 0.0}; }
  static constexpr Jet2 constant(double c) noexcept { return {c, 0.0, 0.0}; }
};

constexpr Jet2 operator+(Jet2 a, Jet2 b) noexcept { return {a.value + b.value, a.d1 + b.d1, a.d2 + b.d2}; }
constexpr Jet2 operator-(Jet2 a, Jet2 b) noexcept { return {a.value - b.value, a.d1 - b.d1, a.d2 - b.d2}; }
constexpr Jet2 operator-(Jet2 a) noexcept { return {-a.value, -a.d1, -a.d2}; }
constexpr Jet2 operator*(Jet2 a, Jet2 b) noexcept {
  return {a.value * b.value, a.d1 * b.value + a.value * b.d1,
          a.d2 * b.value + 2.0 * a.d1 * b.d1 + a.value * b.d2};
}
constexpr Jet2 operator*(double c, Jet2 a) noexcept { return {c * a.value, c * a.d1, c * a.d2}; }
constexpr Jet2 operator*(Jet2 a, double c) noexcept { return c * a; }
constexpr Jet2 operator+(Jet2 a, double c) noexcept { return {a.value + c, a.d1, a.d2}; }
constexpr Jet2 operator+(double c, Jet2 a) noexcept { return a + c; }
constexpr Jet2 operator-(Jet2 a, double c) noexcept { return {a.value - c, a.d1, a.d2}; }
constexpr Jet2 operator-(double c, Jet2 a) noexcept { return {c - a.value, -a.d1, -a.d2}; }

/// Composition f(g) given f, f', f'' evaluated at g.value.
constexpr Jet2 compose(Jet2 g, double f, double df, double d2f) noexcept {
  return {f, df * g.d1, d2f * g.d1 * g.d1 + df * g.d2};
}

inline Jet2 operator/(Jet2 a, Jet2 b) noexcept {
  const double inv = 1.0 / b.value;
  const Jet2 r = compose(b, inv, -inv * inv, 2.0 * inv * inv * inv);
  return a * r;
}

inline Jet2 tanh(Jet2 a) noexcept {
  const double t = std::tanh(a.value);
  const double dt = 1.0 - t * t;
  return compose(a, t, dt, -2.0 * t * dt);
}

inline Jet2 exp(Jet2 a) noexcept {
  const double e = std::exp(a.value);
  return compose(a, e, e, e);
}

inline Jet2 square(Jet2 a) noexcept { return a * a; }

/// Evaluates every output head of the network at a single input carried as a
/// jet. Hidden layers use tanh, the output layer is affine. Throws ConfigError
/// if the network input dimension is not 1.
std::vector<Jet2> jet_forward(const NetworkParams& params, Jet2 input);

inline std::vector<Jet2> jet_forward(const NetworkParams& params, double x) {
  return jet_forward(params, Jet2::variable(x));
}

/// Network outputs for a batch of scalar inputs. `value` holds every input
/// column (out x m); `d1` and `d2` hold the x-derivatives for the first
/// k inputs only (out x k), where k is the jet count passed to Tape::forward.
struct JetBatch {
  Eigen::MatrixXd value;
  Eigen::MatrixXd d1;
  Eigen::MatrixXd d2;

  static JetBatch zeros_like(const JetBatch& other);
};

/// Batched forward jet propagation that records what reverse accumulation
/// needs. The adjoint of any scalar built from the JetBatch components is
/// pulled back to a gradient over the flat parameter vector.
///
/// A tape is bound to one parameter state; it must be re-recorded after the
/// parameters change.
class Tape {
public:
  /// Runs the network on `inputs`. Derivative jets are seeded for the first
  /// `jet_count` inputs with dx/dx = 1; the remaining inputs carry values
  /// only. Pass jet_count = 0 for a constant input.
  JetBatch forward(const NetworkParams& params, std::span<const double> inputs,
                   std::size_t jet_count);

  /// Pulls `adjoint` (same layout as the forward result) back to the
  /// parameters, accumulating into `gradient`.
  void backward(const JetBatch& adjoint, Eigen::Ref<Eigen::VectorXd> gradient) const;

  Eigen::VectorXd backward(const JetBatch& adjoint) const;

private:
  struct Layer {
    Eigen::MatrixXd input;  // in x (m + 2k): values | d1 | d2
    Eigen::MatrixXd pre_derivs;  // out x 2k: z' | z'' (hidden layers only)
  };

  const NetworkParams* params_ = nullptr;
  std::size_t points_ = 0;
  std::size_t jets_ = 0;
  std::vector<Layer> layers_;
};

}  // namespace schrospec
