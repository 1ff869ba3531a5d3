#include <schrospec/errors.hpp>
#include <schrospec/metrics.hpp>
#include <schrospec/oracle.hpp>

#include <doctest.h>

#include <cmath>

using namespace schrospec;

namespace {

BatchFunction pointwise(auto f) {
  return [f](std::span<const double> xs) {
    std::vector<double> out;
    for (double x : xs) out.push_back(f(x));
    return out;
  };
}

const auto ground = [](double x) { return std::exp(-0.5 * x * x); };
const auto first = [](double x) { return x * std::exp(-0.5 * x * x); };

}  // namespace

TEST_CASE("energy error keeps its sign") {
  CHECK(energy_error(0.5, 0.5) == 0.0);
  CHECK(energy_error(0.5, 0.499812) == doctest::Approx(3.76e-4));
  CHECK(energy_error(1.0, 1.1) == doctest::Approx(-0.1));
  CHECK_THROWS_AS(energy_error(0.0, 1.0), DegenerateInputError);
}

TEST_CASE("overlap of normalized vectors") {
  const std::vector<double> a{1.0, 2.0, 3.0};
  const std::vector<double> b{-2.0, -4.0, -6.0};
  CHECK(overlap_squared(a, b) == doctest::Approx(1.0));
  const std::vector<double> c{3.0, 0.0, -1.0};
  CHECK(overlap_squared(a, c) == doctest::Approx(0.0));
  const std::vector<double> z(3, 0.0);
  CHECK_THROWS_AS(overlap_squared(a, z), DegenerateInputError);
  CHECK_THROWS_AS(overlap_squared(a, std::vector<double>{1.0}), DegenerateInputError);
}

TEST_CASE("fidelity of identical states") {
  const FidelityReport r = fidelity(pointwise(ground), pointwise(ground), 3.5);
  CHECK(r.resamples == 1000);
  CHECK(r.mean == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.std <= 1e-9);
}

TEST_CASE("fidelity of opposite-parity states") {
  FidelityOptions opt;
  opt.resamples = 200;
  const FidelityReport r = fidelity(pointwise(ground), pointwise(first), 3.5, opt);
  CHECK(r.mean < 1e-3);
  CHECK(r.mean >= 0.0);
}

TEST_CASE("fidelity is symmetric, sign- and scale-invariant") {
  const auto a = [](double x) { return std::exp(-0.5 * x * x) * (1 + 0.1 * x); };
  const auto b = [](double x) { return std::exp(-0.6 * x * x); };
  FidelityOptions opt;
  opt.resamples = 100;
  opt.seed = 3;
  const double ab = fidelity(pointwise(a), pointwise(b), 4.0, opt).mean;
  const double ba = fidelity(pointwise(b), pointwise(a), 4.0, opt).mean;
  const double flipped = fidelity(pointwise(a), pointwise([&](double x) { return -b(x); }), 4.0, opt).mean;
  const double scaled = fidelity(pointwise(a), pointwise([&](double x) { return 7.5 * b(x); }), 4.0, opt).mean;
  CHECK(ab == doctest::Approx(ba).epsilon(1e-14));
  CHECK(ab == doctest::Approx(flipped).epsilon(1e-14));
  CHECK(ab == doctest::Approx(scaled).epsilon(1e-14));
  CHECK(ab < 1.0);
  CHECK(ab > 0.9);
  const double self = fidelity(pointwise(a), pointwise([&](double x) { return -0.01 * a(x); }), 4.0, opt).mean;
  CHECK(self == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("fidelity report bounds and errors") {
  FidelityOptions opt;
  opt.resamples = 50;
  const FidelityReport r = fidelity(pointwise(ground), pointwise([](double x) { return std::exp(-x * x); }), 3.5, opt);
  CHECK(r.mean <= 1.0 + 1e-9);
  CHECK(r.std >= 0.0);
  CHECK_THROWS_AS(fidelity(pointwise(ground), pointwise([](double) { return 0.0; }), 3.5, opt),
                  DegenerateInputError);
  opt.resamples = 0;
  CHECK_THROWS_AS(fidelity(pointwise(ground), pointwise(ground), 3.5, opt), ConfigError);
}

TEST_CASE("analytic harmonic state against the oracle") {
  const OracleSolution sol = diagonalize(1.0, 0.0, 8.0, 2);
  for (std::size_t k = 0; k < 2; ++k) {
    const auto oracle = pointwise([&](double x) { return sol.evaluate(k, x); });
    const auto exact = pointwise([&](double x) { return harmonic_wavefunction(static_cast<int>(k), 1.0, x); });
    FidelityOptions opt;
    opt.resamples = 100;
    CHECK(fidelity(exact, oracle, 3.5 + k, opt).mean >= 1.0 - 1e-8);
  }
}
