#include "sigcomp/kernels.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

using namespace sigcomp;

struct Problem {
  NetworkShape shape;
  ParamVector theta;
  Matrix X;
  Vector y;
};

Problem make_problem(int m, int d, int q) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Problem p{NetworkShape(d, q), {}, Matrix(m, d), Vector(m)};
  p.theta.resize(p.shape.n());
  for (auto& v : p.theta) v = u(rng);
  for (int i = 0; i < m; ++i) {
    for (int k = 0; k < d; ++k) p.X(i, k) = u(rng);
    p.y[i] = u(rng);
  }
  return p;
}

template <bool Parallel>
void BM_Assemble(benchmark::State& state) {
  const Problem p = make_problem(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)),
                                 static_cast<int>(state.range(2)));
  Vector F;
  Matrix J;
  for (auto _ : state) {
    if constexpr (Parallel) {
      par::assemble_residuals(p.theta, p.shape, p.X, p.y, LossKind::Quadratic, F, &J);
    } else {
      ref::assemble_residuals(p.theta, p.shape, p.X, p.y, LossKind::Quadratic, F, &J);
    }
    benchmark::DoNotOptimize(J.data());
  }
  state.counters["threads"] = kernel_threads();
}

template <bool Parallel>
void BM_Gram(benchmark::State& state) {
  const Problem p = make_problem(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)),
                                 static_cast<int>(state.range(2)));
  Vector F;
  Matrix J;
  ref::assemble_residuals(p.theta, p.shape, p.X, p.y, LossKind::Quadratic, F, &J);
  for (auto _ : state) {
    Matrix G = Parallel ? par::gram(J) : ref::gram(J);
    benchmark::DoNotOptimize(G.data());
  }
  state.counters["threads"] = kernel_threads();
}

// Franke (289 x 2, q = 72) and digits (252 x 64, q = 4) problem sizes.
#define SIGCOMP_SIZES Args({289, 2, 72})->Args({252, 64, 4})->Args({1000, 2, 250})

BENCHMARK(BM_Assemble<false>)->SIGCOMP_SIZES;
BENCHMARK(BM_Assemble<true>)->SIGCOMP_SIZES;
BENCHMARK(BM_Gram<false>)->SIGCOMP_SIZES;
BENCHMARK(BM_Gram<true>)->SIGCOMP_SIZES;

}  // namespace

BENCHMARK_MAIN();
