// Serial reference kernels against the OpenMP ones at the experiment sizes.
#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "bgkc/kernels.hpp"

using namespace bgkc;

namespace {

struct KineticCase {
  VelocityGrid xi{1.0, 80};
  int nx;
  std::vector<double> f, left, right, alpha, out;

  explicit KineticCase(int cells) : nx(cells) {
    const auto eq = maxwellian(0.6, xi);
    for (int i = 0; i < nx; ++i) {
      const auto local = maxwellian(0.6 * std::cos(6.0 * i / nx), xi);
      f.insert(f.end(), local.values().begin(), local.values().end());
    }
    left.assign(eq.values().begin(), eq.values().end());
    right.assign(xi.size(), 0.0);
    alpha.assign(nx, 10.0);
    out.resize(f.size());
  }
  kernels::KineticStepArgs args() const { return {xi, nx, 4.0 / nx, 0.9 * 4.0 / nx, f, left, right, alpha}; }
};

struct LayerCase {
  VelocityGrid xi{1.0, 80};
  int ny;
  std::vector<double> incoming, prev, tail, out;

  explicit LayerCase(int cells) : ny(cells) {
    const auto g = maxwellian(0.4, xi);
    incoming.assign(g.values().begin(), g.values().end());
    const auto start = maxwellian(-0.6, xi);
    for (int k = 0; k <= ny; ++k) prev.insert(prev.end(), start.values().begin(), start.values().end());
    tail.assign(start.values().begin(), start.values().end());
    out.resize(prev.size());
  }
  kernels::LayerSweepArgs args() const { return {xi, ny, 20.0 / ny, incoming, prev, tail}; }
};

void BM_kinetic_reference(benchmark::State& state) {
  KineticCase c(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    kernels::reference::kinetic_step(c.args(), c.out);
    benchmark::DoNotOptimize(c.out.data());
  }
}

void BM_kinetic_parallel(benchmark::State& state) {
  KineticCase c(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    kernels::parallel::kinetic_step(c.args(), c.out);
    benchmark::DoNotOptimize(c.out.data());
  }
}

void BM_layer_reference(benchmark::State& state) {
  LayerCase c(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    kernels::reference::layer_sweep(c.args(), c.out);
    benchmark::DoNotOptimize(c.out.data());
  }
}

void BM_layer_parallel(benchmark::State& state) {
  LayerCase c(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    kernels::parallel::layer_sweep(c.args(), c.out);
    benchmark::DoNotOptimize(c.out.data());
  }
}

void BM_godunov_reference(benchmark::State& state) {
  std::vector<double> u(state.range(0)), out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = std::sin(0.01 * i);
  for (auto _ : state) {
    kernels::reference::godunov_update(u, 0.1, 0.5, out);
    benchmark::DoNotOptimize(out.data());
  }
}

void BM_godunov_parallel(benchmark::State& state) {
  std::vector<double> u(state.range(0)), out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = std::sin(0.01 * i);
  for (auto _ : state) {
    kernels::parallel::godunov_update(u, 0.1, 0.5, out);
    benchmark::DoNotOptimize(out.data());
  }
}

}  // namespace

BENCHMARK(BM_kinetic_reference)->Arg(200)->Arg(400)->Arg(1600);
BENCHMARK(BM_kinetic_parallel)->Arg(200)->Arg(400)->Arg(1600);
BENCHMARK(BM_layer_reference)->Arg(100)->Arg(400);
BENCHMARK(BM_layer_parallel)->Arg(100)->Arg(400);
BENCHMARK(BM_godunov_reference)->Arg(200)->Arg(20000);
BENCHMARK(BM_godunov_parallel)->Arg(200)->Arg(20000);

BENCHMARK_MAIN();
