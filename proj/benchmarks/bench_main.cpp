#include <schrospec/autodiff.hpp>
#include <schrospec/losses.hpp>
#include <schrospec/networks.hpp>
#include <schrospec/oracle.hpp>
#include <schrospec/sampling.hpp>
#include <schrospec/trainer.hpp>

#include <benchmark/benchmark.h>

#include <random>

using namespace schrospec;

namespace {

std::vector<double> batch(std::size_t points, double half_width) {
  std::mt19937_64 rng(1);
  return sample_batch({points, half_width, 0.5}, rng);
}

// Args: hidden layers, width, batch size.
void BM_TapeForward(benchmark::State& state) {
  const MlpShape shape{static_cast<int>(state.range(0)), static_cast<int>(state.range(1))};
  const ModelPair m = init_model(ModelShape{shape, {1, 4}}, 0);
  const auto xs = batch(static_cast<std::size_t>(state.range(2)), 3.5);
  Tape tape;
  for (auto _ : state) benchmark::DoNotOptimize(tape.forward(m.psi_net, xs, xs.size()));
  state.SetItemsProcessed(state.iterations() * state.range(2));
}
BENCHMARK(BM_TapeForward)->Args({4, 64, 128})->Args({4, 64, 512})->Args({7, 256, 512})->Unit(benchmark::kMillisecond);

void BM_TapeBackward(benchmark::State& state) {
  const MlpShape shape{static_cast<int>(state.range(0)), static_cast<int>(state.range(1))};
  const ModelPair m = init_model(ModelShape{shape, {1, 4}}, 0);
  const auto xs = batch(static_cast<std::size_t>(state.range(2)), 3.5);
  Tape tape;
  const JetBatch out = tape.forward(m.psi_net, xs, xs.size());
  JetBatch adj = JetBatch::zeros_like(out);
  adj.value.setOnes();
  adj.d2.setOnes();
  for (auto _ : state) benchmark::DoNotOptimize(tape.backward(adj));
  state.SetItemsProcessed(state.iterations() * state.range(2));
}
BENCHMARK(BM_TapeBackward)->Args({4, 64, 128})->Args({4, 64, 512})->Args({7, 256, 512})->Unit(benchmark::kMillisecond);

// Full seven-term objective with gradients, state n = 1 against one archived
// state.
void BM_Objective(benchmark::State& state) {
  const MlpShape shape{static_cast<int>(state.range(0)), static_cast<int>(state.range(1))};
  const ModelPair m = init_model(ModelShape{shape, {4, shape.width}}, 0);
  const ProblemSpec spec = ProblemFamily{}.state(1, 0.5);
  StateArchive archive;
  archive.add(snapshot_state(init_model(ModelShape{{1, 4}, {1, 4}}, 1), ProblemFamily{}.state(0, 0.0), 0.5));
  const auto xs = batch(static_cast<std::size_t>(state.range(2)), spec.half_width);
  const LossTerms w = WeightSchedule{}.weights_at(100, Scenario::Fresh, 1);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_objective(m, xs, spec, archive, w, true));
  state.SetItemsProcessed(state.iterations() * state.range(2));
}
BENCHMARK(BM_Objective)->Args({4, 64, 128})->Args({4, 64, 512})->Args({7, 256, 512})->Unit(benchmark::kMillisecond);

// Arg: grid points of the coarsest mesh.
void BM_OracleAnharmonic(benchmark::State& state) {
  OracleOptions opts;
  opts.grid_points = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(diagonalize(1.0, 0.64, 10.0, 6, opts));
}
BENCHMARK(BM_OracleAnharmonic)->Arg(2001)->Arg(4001)->Unit(benchmark::kMillisecond);

void BM_TridiagonalEigenvalues(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<double> diag(n, 2.0), off(n - 1, -1.0);
  for (auto _ : state) benchmark::DoNotOptimize(tridiagonal_lowest_eigenvalues(diag, off, 6));
}
BENCHMARK(BM_TridiagonalEigenvalues)->Arg(1 << 12)->Arg(1 << 16)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
