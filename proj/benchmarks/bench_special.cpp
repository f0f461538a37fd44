#include <benchmark/benchmark.h>

#include "mhk/hyper_multi.hpp"
#include "mhk/special.hpp"

using namespace mhk;

static void BM_gauss_2f1_inner(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(gauss_2f1(1.3, 2.1, 3.7, Complex(0.3, 0.2)));
}
BENCHMARK(BM_gauss_2f1_inner);

// integer gap near z = 1 goes through the log connection
static void BM_gauss_2f1_log_branch(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(gauss_2f1(3, 4, 9, 0.85));
}
BENCHMARK(BM_gauss_2f1_log_branch);

static void BM_fd1(benchmark::State& state) {
    FD1Params p;
    p.a = p.a_prime = p.b1 = p.b2 = p.c = 2;
    const double r = state.range(0) / 100.0;
    p.x1 = r * r;
    p.x2 = Complex(0.5, 0.3) * r * r;
    p.y1 = std::conj(p.x2);
    p.y2 = r * r;
    for (auto _ : state)
        benchmark::DoNotOptimize(fd1(p));
}
BENCHMARK(BM_fd1)->Arg(30)->Arg(50)->Arg(70);
