#include <benchmark/benchmark.h>

#include <cmath>

#include "celestial/inclusions.hpp"
#include "celestial/moser.hpp"
#include "celestial/parallel.hpp"
#include "celestial/systolic.hpp"

using namespace celestial;

namespace {

FiberPair hill_in_rkp() {
    const double outer = std::cbrt(4.0);
    return {[](const Vec2& p, double th) { return radial_fiber_point(ProblemKind::HillLunar, 2.2, {p, th}); },
            [outer](const Vec2& p, double th) { return radial_fiber_point(ProblemKind::RotatingKepler, outer, {p, th}); },
            [outer](const Vec2& q, const Vec2& p) {
                return eval_hamiltonian(ProblemKind::RotatingKepler, {q[0], q[1], p[0], p[1]}) + outer;
            }};
}

const SweepGrid kGrid{32, 128, 12.0};

void BM_FiberSweepSerial(benchmark::State& st) {
    const auto pair = hill_in_rkp();
    for (auto _ : st) benchmark::DoNotOptimize(compare_fibers_serial(pair, kGrid));
}

void BM_FiberSweepParallel(benchmark::State& st) {
    const auto pair = hill_in_rkp();
    for (auto _ : st) benchmark::DoNotOptimize(compare_fibers(pair, kGrid));
}

void BM_QuadratureSerial(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(contact_volume_quadrature_serial(2.0));
}

void BM_QuadratureParallel(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(contact_volume_quadrature(2.0));
}

void BM_MonteCarloSerial(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(contact_volume_mc_serial(2.0, st.range(0), 42));
}

void BM_MonteCarloParallel(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(contact_volume_mc(2.0, st.range(0), 42));
}

}  // namespace

BENCHMARK(BM_FiberSweepSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FiberSweepParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_QuadratureSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_QuadratureParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_MonteCarloSerial)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MonteCarloParallel)->Arg(100000)->Unit(benchmark::kMillisecond)->UseRealTime();

int main(int argc, char** argv) {
    apply_thread_limit_from_env();
    benchmark::Initialize(&argc, argv);
    if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
    benchmark::RunSpecifiedBenchmarks();
    benchmark::Shutdown();
    return 0;
}
