#include "schrospec/losses.hpp"

#include "schrospec/autodiff.hpp"
#include "schrospec/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace schrospec {

double LossTerms::dot(const LossTerms& w) const noexcept {
  return integral * w.integral + normalization * w.normalization + boundary * w.boundary +
         orthogonality * w.orthogonality + equation * w.equation + energy_min * w.energy_min +
         symmetry * w.symmetry;
}

LossTerms WeightSchedule::weights_at(int epoch, Scenario scenario, int n) const {
  const bool fresh = scenario == Scenario::Fresh;
  const double e = static_cast<double>(std::max(epoch, 0));

  LossTerms w;
  w.integral = base.integral;
  w.normalization = base.normalization;
  w.boundary = base.boundary;
  w.symmetry = base.symmetry;
  w.orthogonality = (fresh ? base.orthogonality_per_n : transfer_orthogonality_per_n) * n;

  const double ramp =
      equation_ramp_epochs > 0 ? std::min(1.0, e / static_cast<double>(equation_ramp_epochs)) : 1.0;
  w.equation = base.equation_start + (equation_end - base.equation_start) * ramp;

  const double energy_start = fresh ? base.energy_start : transfer_energy_start;
  const double decay = energy_decay_epochs > 0
                           ? std::max(0.0, 1.0 - e / static_cast<double>(energy_decay_epochs))
                           : 1.0;
  w.energy_min = energy_start * decay;
  return w;
}

ArchivedState::ArchivedState(int n, double energy, std::vector<double> grid,
                             std::vector<double> psi)
    : n_(n), energy_(energy), grid_(std::move(grid)), psi_(std::move(psi)) {
  if (grid_.size() < 2 || grid_.size() != psi_.size()) {
    throw ConfigError("archived state needs matching grid and psi with at least two points");
  }
  if (!std::is_sorted(grid_.begin(), grid_.end())) {
    throw ConfigError("archived state grid must be ascending");
  }
  double norm = 0.0;
  for (double v : psi_) norm += v * v;
  norm = std::sqrt(norm);
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw DegenerateInputError("archived state has zero or non-finite norm");
  }
  for (double& v : psi_) v /= norm;
}

double ArchivedState::operator()(double x) const noexcept {
  if (x < grid_.front() || x > grid_.back()) return 0.0;
  auto it = std::upper_bound(grid_.begin(), grid_.end(), x);
  if (it == grid_.end()) return psi_.back();
  const auto hi = static_cast<std::size_t>(it - grid_.begin());
  const std::size_t lo = hi - 1;
  const double t = (x - grid_[lo]) / (grid_[hi] - grid_[lo]);
  return psi_[lo] + t * (psi_[hi] - psi_[lo]);
}

bool StateArchive::covers_below(int n) const {
  if (static_cast<int>(states_.size()) != n) return false;
  for (std::size_t i = 0; i < states_.size(); ++i) {
    if (states_[i].n() != static_cast<int>(i)) return false;
  }
  return true;
}

double integral_loss(std::span<const EvalBundle> batch) {
  if (batch.empty()) throw ConfigError("integral_loss needs a nonempty batch");
  double sum = 0.0;
  for (const auto& b : batch) {
    const double r = b.dnu - b.psi * b.psi;
    sum += r * r;
  }
  return sum / static_cast<double>(batch.size());
}

double normalization_loss(double nu_left, double nu_right) {
  return std::abs(nu_left) + std::abs(nu_right - 1.0);
}

double normalization_loss(const ModelPair& model, double half_width) {
  return normalization_loss(evaluate(model, -half_width).nu, evaluate(model, half_width).nu);
}

double boundary_loss(double psi_left, double psi_right) {
  return std::abs(psi_left) + std::abs(psi_right);
}

double boundary_loss(const ModelPair& model, double half_width) {
  return boundary_loss(evaluate(model, -half_width).psi, evaluate(model, half_width).psi);
}

namespace {

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

/// Archived states sampled at the batch points, normalized on that grid.
/// Empty rows mark states that vanish on the batch.
std::vector<std::vector<double>> archived_on_grid(std::span<const double> xs,
                                                  const StateArchive& archive) {
  std::vector<std::vector<double>> out;
  out.reserve(archive.size());
  for (const auto& state : archive) {
    std::vector<double> phi(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) phi[i] = state(xs[i]);
    const double nrm = norm2(phi);
    if (nrm > 0.0) {
      for (double& v : phi) v /= nrm;
    } else {
      phi.clear();
    }
    out.push_back(std::move(phi));
  }
  return out;
}

double orthogonality_from_grid(std::span<const double> psi,
                               const std::vector<std::vector<double>>& phis,
                               std::vector<double>* grad) {
  const double nrm = norm2(psi);
  if (grad) grad->assign(psi.size(), 0.0);
  if (!(nrm > 0.0)) return 0.0;
  double loss = 0.0;
  for (const auto& phi : phis) {
    if (phi.empty()) continue;
    double overlap = 0.0;
    for (std::size_t i = 0; i < psi.size(); ++i) overlap += psi[i] * phi[i];
    overlap /= nrm;
    loss += overlap * overlap;
    if (grad) {
      // d(overlap)/d(psi_i) = (phi_i - overlap * psi_i / |psi|) / |psi|
      for (std::size_t i = 0; i < psi.size(); ++i) {
        (*grad)[i] += 2.0 * overlap * (phi[i] - overlap * psi[i] / nrm) / nrm;
      }
    }
  }
  return loss;
}

}  // namespace

double orthogonality_loss(std::span<const double> xs, std::span<const double> psi,
                          const StateArchive& archive) {
  if (xs.size() != psi.size()) throw ConfigError("orthogonality_loss: size mismatch");
  if (archive.empty()) return 0.0;
  return orthogonality_from_grid(psi, archived_on_grid(xs, archive), nullptr);
}

double equation_loss(std::span<const EvalBundle> batch, double energy, const ProblemSpec& spec) {
  if (batch.empty()) throw ConfigError("equation_loss needs a nonempty batch");
  double sum = 0.0;
  for (const auto& b : batch) {
    const double r = -0.5 * b.d2psi + (spec.potential(b.x) - energy) * b.psi;
    sum += r * r;
  }
  return sum / static_cast<double>(batch.size());
}

double energy_min_loss(double energy, const ProblemSpec& spec) {
  return std::exp(spec.a * (energy - spec.e_init));
}

double symmetry_loss(std::span<const double> psi, std::span<const double> psi_mirror, int s) {
  if (psi.empty() || psi.size() != psi_mirror.size()) {
    throw ConfigError("symmetry_loss: need equal-size nonempty inputs");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    const double r = psi[i] - s * psi_mirror[i];
    sum += r * r;
  }
  return sum / static_cast<double>(psi.size());
}

double symmetry_loss(std::span<const EvalBundle> batch, const ModelPair& model, int s) {
  std::vector<double> psi, mirror_x;
  for (const auto& b : batch) {
    psi.push_back(b.psi);
    mirror_x.push_back(-b.x);
  }
  return symmetry_loss(psi, psi_values(model, mirror_x), s);
}

LossBreakdown total_loss(const LossTerms& values, const LossTerms& weights) {
  return {values, weights, values.dot(weights)};
}

ObjectiveResult evaluate_objective(const ModelPair& model, std::span<const double> xs,
                                   const ProblemSpec& spec, const StateArchive& archive,
                                   const LossTerms& weights, bool with_gradient) {
  if (xs.empty()) throw ConfigError("evaluate_objective needs collocation points");
  const std::size_t n = xs.size();
  const auto N = static_cast<Eigen::Index>(n);
  const double inv_n = 1.0 / static_cast<double>(n);

  // Inputs: batch | mirrored batch | -L/2 | +L/2; jets for the batch only.
  std::vector<double> inputs(2 * n + 2);
  for (std::size_t i = 0; i < n; ++i) {
    inputs[i] = xs[i];
    inputs[n + i] = -xs[i];
  }
  inputs[2 * n] = -spec.half_width;
  inputs[2 * n + 1] = spec.half_width;

  Tape psi_tape;
  Tape energy_tape;
  const JetBatch out = psi_tape.forward(model.psi_net, inputs, n);
  const double one = 1.0;
  const JetBatch e_out = energy_tape.forward(model.energy_net, std::span(&one, 1), 0);
  const double energy = e_out.value(0, 0);

  std::vector<EvalBundle> batch(n);
  std::vector<double> psi(n), mirror(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto j = static_cast<Eigen::Index>(i);
    batch[i] = {xs[i], out.value(kPsi, j), out.d1(kPsi, j), out.d2(kPsi, j), out.value(kNu, j),
                out.d1(kNu, j)};
    psi[i] = batch[i].psi;
    mirror[i] = out.value(kPsi, N + j);
  }
  const double psi_left = out.value(kPsi, 2 * N);
  const double psi_right = out.value(kPsi, 2 * N + 1);
  const double nu_left = out.value(kNu, 2 * N);
  const double nu_right = out.value(kNu, 2 * N + 1);

  const auto phis = archived_on_grid(xs, archive);
  std::vector<double> ortho_grad;

  LossTerms v;
  v.integral = integral_loss(batch);
  v.normalization = normalization_loss(nu_left, nu_right);
  v.boundary = boundary_loss(psi_left, psi_right);
  v.orthogonality = orthogonality_from_grid(psi, phis, with_gradient ? &ortho_grad : nullptr);
  v.equation = equation_loss(batch, energy, spec);
  v.energy_min = energy_min_loss(energy, spec);
  v.symmetry = symmetry_loss(psi, mirror, spec.s);

  const auto vals = v.as_array();
  for (std::size_t t = 0; t < vals.size(); ++t) {
    if (!std::isfinite(vals[t])) {
      throw NumericError(std::string(LossTerms::names[t]),
                         "non-finite " + std::string(LossTerms::names[t]) + " loss");
    }
  }

  ObjectiveResult result;
  result.breakdown = total_loss(v, weights);
  result.energy = energy;
  if (!std::isfinite(result.breakdown.total)) throw NumericError("total", "non-finite total loss");
  if (!with_gradient) return result;

  JetBatch adj = JetBatch::zeros_like(out);
  double d_energy = 0.0;
  const auto sgn = [](double x) { return static_cast<double>((x > 0.0) - (x < 0.0)); };

  for (std::size_t i = 0; i < n; ++i) {
    const auto j = static_cast<Eigen::Index>(i);
    const EvalBundle& b = batch[i];

    const double r_int = b.dnu - b.psi * b.psi;
    adj.d1(kNu, j) += weights.integral * 2.0 * r_int * inv_n;
    adj.value(kPsi, j) += weights.integral * -4.0 * r_int * b.psi * inv_n;

    const double vmE = spec.potential(b.x) - energy;
    const double r_eq = -0.5 * b.d2psi + vmE * b.psi;
    adj.d2(kPsi, j) += weights.equation * -r_eq * inv_n;
    adj.value(kPsi, j) += weights.equation * 2.0 * r_eq * vmE * inv_n;
    d_energy += weights.equation * -2.0 * r_eq * b.psi * inv_n;

    const double r_sym = b.psi - spec.s * mirror[i];
    adj.value(kPsi, j) += weights.symmetry * 2.0 * r_sym * inv_n;
    adj.value(kPsi, N + j) += weights.symmetry * -2.0 * spec.s * r_sym * inv_n;

    if (!ortho_grad.empty()) adj.value(kPsi, j) += weights.orthogonality * ortho_grad[i];
  }
  adj.value(kNu, 2 * N) += weights.normalization * sgn(nu_left);
  adj.value(kNu, 2 * N + 1) += weights.normalization * sgn(nu_right - 1.0);
  adj.value(kPsi, 2 * N) += weights.boundary * sgn(psi_left);
  adj.value(kPsi, 2 * N + 1) += weights.boundary * sgn(psi_right);
  d_energy += weights.energy_min * spec.a * v.energy_min;

  result.psi_grad = psi_tape.backward(adj);
  JetBatch e_adj = JetBatch::zeros_like(e_out);
  e_adj.value(0, 0) = d_energy;
  result.energy_grad = energy_tape.backward(e_adj);
  return result;
}

}  // namespace schrospec
