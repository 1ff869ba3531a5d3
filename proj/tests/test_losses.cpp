#include "fd.hpp"

#include <schrospec/errors.hpp>
#include <schrospec/losses.hpp>
#include <schrospec/oracle.hpp>
#include <schrospec/sampling.hpp>
#include <schrospec/trainer.hpp>

#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

using namespace schrospec;

namespace {

std::vector<EvalBundle> bundles(std::span<const double> xs, auto&& psi, auto&& d2psi, auto&& nu,
                                auto&& dnu) {
  std::vector<EvalBundle> out;
  for (double x : xs) out.push_back({x, psi(x), 0.0, d2psi(x), nu(x), dnu(x)});
  return out;
}

std::vector<double> grid(double half, std::size_t count) {
  std::vector<double> xs(count);
  for (std::size_t i = 0; i < count; ++i) {
    xs[i] = -half + 2.0 * half * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  return xs;
}

ArchivedState archived(int n, std::span<const double> xs, auto&& f) {
  std::vector<double> psi;
  for (double x : xs) psi.push_back(f(x));
  return ArchivedState(n, 0.0, {xs.begin(), xs.end()}, psi);
}

const auto zero = [](double) { return 0.0; };
const auto one = [](double) { return 1.0; };
const auto gauss = [](double x) { return std::exp(-0.5 * x * x); };
const auto gauss_d2 = [](double x) { return (x * x - 1.0) * std::exp(-0.5 * x * x); };

}  // namespace

TEST_CASE("integral loss") {
  const auto xs = grid(2.0, 4);
  CHECK(integral_loss(bundles(xs, zero, zero, zero, zero)) == 0.0);
  const auto sq = [](double x) { return x * x; };
  CHECK(integral_loss(bundles(xs, [](double x) { return x; }, zero, zero, sq)) == doctest::Approx(0.0).epsilon(1e-30));
  // psi = 1, nu = 0 on four points: mean of (0 - 1)^2.
  CHECK(integral_loss(bundles(xs, one, zero, zero, zero)) == doctest::Approx(1.0));
}

TEST_CASE("normalization loss is a sum of absolute errors") {
  CHECK(normalization_loss(0.0, 1.0) == 0.0);
  CHECK(normalization_loss(0.0, 0.0) == 1.0);
  CHECK(normalization_loss(0.1, 0.8) == doctest::Approx(0.3));
  CHECK(normalization_loss(-0.1, 1.2) == doctest::Approx(0.3));

  // A zero network fails only this loss.
  const ModelPair m{NetworkParams(psi_layer_dims({1, 4})), NetworkParams(energy_layer_dims({1, 4}))};
  CHECK(normalization_loss(m, 3.5) == 1.0);
  CHECK(boundary_loss(m, 3.5) == 0.0);
}

TEST_CASE("boundary loss") {
  CHECK(boundary_loss(0.0, 0.0) == 0.0);
  CHECK(boundary_loss(0.2, -0.1) == doctest::Approx(0.3));
  const double c = 0.05;
  CHECK(boundary_loss(c, c) == doctest::Approx(2 * std::abs(c)));
}

TEST_CASE("orthogonality loss") {
  const auto xs = grid(4.0, 201);
  StateArchive archive;
  std::vector<double> psi;
  for (double x : xs) psi.push_back(gauss(x));
  CHECK(orthogonality_loss(xs, psi, archive) == 0.0);

  archive.add(archived(0, grid(4.0, 1001), gauss));
  CHECK(orthogonality_loss(xs, psi, archive) == doctest::Approx(1.0).epsilon(1e-9));

  std::vector<double> flipped;
  for (double v : psi) flipped.push_back(-3.0 * v);
  CHECK(orthogonality_loss(xs, flipped, archive) == doctest::Approx(1.0).epsilon(1e-9));

  std::vector<double> odd;
  for (double x : xs) odd.push_back(x * gauss(x));
  CHECK(orthogonality_loss(xs, odd, archive) == doctest::Approx(0.0).epsilon(1e-12));

  const std::vector<double> nothing(xs.size(), 0.0);
  CHECK(orthogonality_loss(xs, nothing, archive) == 0.0);
}

TEST_CASE("archived states are normalized and vanish outside their grid") {
  const auto xs = grid(3.0, 301);
  const ArchivedState st = archived(0, xs, gauss);
  double norm = 0.0;
  for (double v : st.psi()) norm += v * v;
  CHECK(norm == doctest::Approx(1.0));
  CHECK(st(3.5) == 0.0);
  CHECK(st(-3.01) == 0.0);
  CHECK(st(0.0) == doctest::Approx(st.psi()[150]));
}

TEST_CASE("equation loss") {
  ProblemSpec spec;  // omega^2 = 1, lambda = 0
  const auto xs = grid(3.5, 64);
  const auto b = bundles(xs, gauss, gauss_d2, zero, zero);
  CHECK(equation_loss(b, 0.5, spec) == doctest::Approx(0.0).epsilon(1e-15));

  // With E = 0.6 the residual is (E0 - E) psi.
  double expected = 0.0;
  for (double x : xs) expected += 0.01 * gauss(x) * gauss(x);
  expected /= static_cast<double>(xs.size());
  CHECK(equation_loss(b, 0.6, spec) == doctest::Approx(expected).epsilon(1e-12));

  CHECK(equation_loss(bundles(xs, zero, zero, zero, zero), 0.6, spec) == 0.0);
}

TEST_CASE("equation loss on interpolated oracle states is small") {
  const OracleSolution sol = diagonalize(1.0, 0.0, 6.0, 2, {});
  ProblemSpec spec;
  spec.n = 1;
  spec.s = -1;
  const double h = sol.grid[1] - sol.grid[0];
  // Interior nodes of the oracle grid, with a three-point second derivative.
  for (int k = 0; k < 2; ++k) {
    const auto& psi = sol.wavefunctions[static_cast<std::size_t>(k)];
    std::vector<EvalBundle> b;
    for (std::size_t i = 1; i + 1 < psi.size(); i += 7) {
      const double d2 = (psi[i + 1] - 2 * psi[i] + psi[i - 1]) / (h * h);
      b.push_back({sol.grid[i], psi[i], 0.0, d2, 0.0, 0.0});
    }
    CHECK(equation_loss(b, sol.energies[static_cast<std::size_t>(k)], spec) <= 1e-6);
  }
}

TEST_CASE("energy minimization loss") {
  ProblemSpec spec;
  spec.e_init = 0.0;
  spec.a = 0.8;
  CHECK(energy_min_loss(0.0, spec) == 1.0);
  CHECK(energy_min_loss(-1.0, spec) == doctest::Approx(0.4493289641));
  CHECK(energy_min_loss(0.2, spec) < energy_min_loss(0.3, spec));
}

TEST_CASE("symmetry loss") {
  const std::vector<double> even{1.0, 2.0, 1.0};
  CHECK(symmetry_loss(even, even, 1) == 0.0);
  const std::vector<double> odd{-1.0, 0.0, 1.0};
  const std::vector<double> odd_mirror{1.0, 0.0, -1.0};
  CHECK(symmetry_loss(odd, odd_mirror, -1) == 0.0);
  // psi(x) = x, s = +1, batch {1, -1}.
  const std::vector<double> psi{1.0, -1.0};
  const std::vector<double> mirror{-1.0, 1.0};
  CHECK(symmetry_loss(psi, mirror, 1) == doctest::Approx(4.0));
}

TEST_CASE("total loss is the weighted sum") {
  LossTerms v;
  v.energy_min = std::exp(0.8 * -0.5);
  LossTerms w;
  w.energy_min = 100.0;
  w.integral = 1000.0;
  const LossBreakdown b = total_loss(v, w);
  CHECK(b.total == doctest::Approx(100.0 * std::exp(-0.4)));
  CHECK(b.values.energy_min == v.energy_min);
  CHECK(b.weights.integral == 1000.0);
}

TEST_CASE("weight schedule") {
  const WeightSchedule sched;
  const LossTerms w0 = sched.weights_at(0, Scenario::Fresh, 3);
  CHECK(w0.normalization == 500.0);
  CHECK(w0.integral == 1000.0);
  CHECK(w0.boundary == 10.0);
  CHECK(w0.symmetry == 1000.0);
  CHECK(w0.orthogonality == 1500.0);
  CHECK(w0.equation == 1.0);
  CHECK(w0.energy_min == 100.0);

  const LossTerms mid = sched.weights_at(5000, Scenario::Fresh, 0);
  CHECK(mid.equation == doctest::Approx(50.5));
  CHECK(mid.energy_min == doctest::Approx(50.0));
  CHECK(mid.orthogonality == 0.0);

  const LossTerms late = sched.weights_at(30000, Scenario::Fresh, 1);
  CHECK(late.equation == 100.0);
  CHECK(late.energy_min == 0.0);

  const LossTerms t = sched.weights_at(0, Scenario::Transfer, 3);
  CHECK(t.orthogonality == 90.0);
  CHECK(t.energy_min == 0.0);
}

TEST_CASE("objective terms agree with the standalone losses") {
  const ModelPair m = init_model(ModelShape{{2, 8}, {2, 6}}, 3);
  ProblemSpec spec;
  spec.n = 1;
  spec.s = -1;
  spec.half_width = 4.5;
  spec.lambda = 0.3;
  std::mt19937_64 rng(1);
  const auto xs = sample_batch({32, 4.5, 0.5}, rng);
  StateArchive archive;
  archive.add(archived(0, grid(4.5, 301), gauss));
  const LossTerms w = WeightSchedule{}.weights_at(100, Scenario::Fresh, 1);

  const ObjectiveResult r = evaluate_objective(m, xs, spec, archive, w, false);
  const auto b = evaluate_batch(m, xs);
  const double energy = predict_energy(m);
  CHECK(r.energy == doctest::Approx(energy).epsilon(1e-14));
  CHECK(r.breakdown.values.integral == doctest::Approx(integral_loss(b)).epsilon(1e-12));
  CHECK(r.breakdown.values.normalization == doctest::Approx(normalization_loss(m, 4.5)).epsilon(1e-12));
  CHECK(r.breakdown.values.boundary == doctest::Approx(boundary_loss(m, 4.5)).epsilon(1e-12));
  CHECK(r.breakdown.values.equation == doctest::Approx(equation_loss(b, energy, spec)).epsilon(1e-12));
  CHECK(r.breakdown.values.energy_min == doctest::Approx(energy_min_loss(energy, spec)).epsilon(1e-12));
  CHECK(r.breakdown.values.symmetry == doctest::Approx(symmetry_loss(b, m, -1)).epsilon(1e-12));
  CHECK(r.breakdown.values.orthogonality ==
        doctest::Approx(orthogonality_loss(xs, psi_values(m, xs), archive)).epsilon(1e-12));
  CHECK(r.breakdown.total == doctest::Approx(r.breakdown.values.dot(w)).epsilon(1e-14));
  for (double v : r.breakdown.values.as_array()) CHECK(v >= 0.0);
}

TEST_CASE("objective gradient matches finite differences on a 2x8 net") {
  const ModelPair m = init_model(ModelShape{{2, 8}, {2, 6}}, 3);
  ProblemSpec spec;
  spec.n = 1;
  spec.s = -1;
  spec.half_width = 4.5;
  spec.lambda = 0.3;
  std::mt19937_64 rng(2);
  const auto xs = sample_batch({32, 4.5, 0.5}, rng);
  StateArchive archive;
  archive.add(archived(0, grid(4.5, 301), gauss));
  const LossTerms w = WeightSchedule{}.weights_at(500, Scenario::Fresh, 1);
  const ObjectiveResult r = evaluate_objective(m, xs, spec, archive, w, true);

  const auto check_net = [&](bool energy_net, const Eigen::VectorXd& grad) {
    const NetworkParams& p0 = energy_net ? m.energy_net : m.psi_net;
    for (Eigen::Index i = 0; i < p0.values().size(); ++i) {
      const auto f = [&](double v) {
        ModelPair mp = m;
        (energy_net ? mp.energy_net : mp.psi_net).values()[i] = v;
        return evaluate_objective(mp, xs, spec, archive, w, false).breakdown.total;
      };
      const double fd = test::fd5(f, p0.values()[i], 1e-4);
      CHECK(test::rel_err(grad[i], fd, 1e-2) <= 1e-5);
    }
  };
  check_net(false, r.psi_grad);
  check_net(true, r.energy_grad);
}

TEST_CASE("non-finite terms are reported by name") {
  ModelPair m = init_model(ModelShape{{1, 4}, {1, 4}}, 0);
  m.energy_net.biases(1)[0] = 1e300;
  ProblemSpec spec;
  std::mt19937_64 rng(0);
  const auto xs = sample_batch({16, 3.5, 0.5}, rng);
  const LossTerms w = WeightSchedule{}.weights_at(0, Scenario::Fresh, 0);
  try {
    evaluate_objective(m, xs, spec, StateArchive{}, w, true);
    FAIL("expected NumericError");
  } catch (const NumericError& e) {
    CHECK((e.term() == "equation" || e.term() == "energy_min"));
  }
}
