#include <benchmark/benchmark.h>

#include "mhk/kernels.hpp"

using namespace mhk;

namespace {

KernelParams power(double s) {
    KernelParams k;
    k.n = 2;
    k.weight = WeightSpec::power(s);
    return k;
}

}  // namespace

// fresh s each round so the cache never answers
static void BM_cpq_cold(benchmark::State& state) {
    double s = 0.1;
    for (auto _ : state) {
        s += 1e-7;
        benchmark::DoNotOptimize(coeff_cpq(power(s), state.range(0), state.range(0)));
    }
}
BENCHMARK(BM_cpq_cold)->Arg(1)->Arg(8)->Arg(32)->Unit(benchmark::kMicrosecond);

static void BM_szego_fd(benchmark::State& state) {
    const BallPoint z(CVector{0.4, Complex(0.1, 0.2)}), w(CVector{Complex(0.0, 0.3), 0.3});
    for (auto _ : state)
        benchmark::DoNotOptimize(szego_fd(2, z, w));
}
BENCHMARK(BM_szego_fd);

static void BM_szego_2f1(benchmark::State& state) {
    const BallPoint z(CVector{0.4, Complex(0.1, 0.2)}), w(CVector{Complex(0.0, 0.3), 0.3});
    for (auto _ : state)
        benchmark::DoNotOptimize(szego_2f1(2, z, w));
}
BENCHMARK(BM_szego_2f1);

// coefficients warm after the first round
static void BM_bergman(benchmark::State& state) {
    const double r = state.range(0) / 100.0;
    const BallPoint z = BallPoint::axis(2, 0, r), w(CVector{Complex(0.0, r / 2), r / 2});
    for (auto _ : state)
        benchmark::DoNotOptimize(bergman_kernel(power(0.0), z, w));
}
BENCHMARK(BM_bergman)->Arg(30)->Arg(60)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
