// Serial vs OpenMP timings of the element-parallel kernels.
//
// Arguments are (mesh cells per side, degree). Run with OMP_NUM_THREADS to vary the team.

#include <benchmark/benchmark.h>

#include <memory>

#include "etdg/error_analysis.hpp"

using namespace etdg;

namespace {

ExecutionPolicy policy_of(const benchmark::State& state) {
  return state.range(2) == 0 ? ExecutionPolicy::serial : ExecutionPolicy::parallel;
}

std::shared_ptr<const BrokenSpace> square_space(const benchmark::State& state) {
  auto mesh = std::make_shared<const Mesh>(build_unit_square_mesh(static_cast<int>(state.range(0))));
  return std::make_shared<const BrokenSpace>(std::move(mesh), static_cast<int>(state.range(1)));
}

void label(benchmark::State& state, const BrokenSpace& space) {
  state.SetLabel(state.range(2) == 0 ? "serial" : "parallel");
  state.counters["elements"] = space.mesh().num_elements();
  state.counters["elements/s"] =
      benchmark::Counter(space.mesh().num_elements(), benchmark::Counter::kIsIterationInvariantRate);
}

void BM_LocalTrefftz(benchmark::State& state) {
  const auto space = square_space(state);
  const Wavenumber omega(10.0);
  for (auto _ : state) {
    auto local = build_local_trefftz(*space, omega, policy_of(state));
    benchmark::DoNotOptimize(local.data());
  }
  label(state, *space);
}

void BM_AssembleSipdg(benchmark::State& state) {
  const auto space = square_space(state);
  const FormParameters params{Wavenumber(10.0), 10.0};
  for (auto _ : state) {
    SparseMatrixC a = assemble_sipdg(*space, params, policy_of(state));
    benchmark::DoNotOptimize(a.valuePtr());
  }
  label(state, *space);
}

void BM_ErrorIntegrals(benchmark::State& state) {
  const auto space = square_space(state);
  const ManufacturedCase c = hankel_case(10.0);
  const Eigen::VectorXcd u = l2_projection(*space, c.u);
  for (auto _ : state) {
    benchmark::DoNotOptimize(l2_error(*space, u, c, 0, policy_of(state)));
    benchmark::DoNotOptimize(dg_error(*space, u, c, 0, policy_of(state)));
  }
  label(state, *space);
}

void sizes(benchmark::internal::Benchmark* b) {
  for (int n : {16, 32}) {
    for (int p : {3, 6}) {
      for (int parallel : {0, 1}) b->Args({n, p, parallel});
    }
  }
  b->ArgNames({"n", "p", "omp"})->Unit(benchmark::kMillisecond);
}

}  // namespace

BENCHMARK(BM_LocalTrefftz)->Apply(sizes);
BENCHMARK(BM_AssembleSipdg)->Apply(sizes);
BENCHMARK(BM_ErrorIntegrals)->Apply(sizes);

BENCHMARK_MAIN();
