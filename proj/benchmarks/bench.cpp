// Microbenchmarks for the hot paths: a single amplitude solve, a clock-time
// evaluation (two perturbed solves + Richardson), the adaptive spectral
// average, resonance search and a short real-time propagation. Run via
// `benchmarks/swpclock_bench`; pass --benchmark_filter=... to select.

#include <benchmark/benchmark.h>

#include "swpclock/averaging.hpp"
#include "swpclock/clock_times.hpp"
#include "swpclock/packet.hpp"
#include "swpclock/params.hpp"
#include "swpclock/potential.hpp"
#include "swpclock/propagation.hpp"
#include "swpclock/resonance.hpp"
#include "swpclock/scattering.hpp"
#include "swpclock/sweep.hpp"

namespace {

const swpclock::PhysicalParams pp{};

void BM_AmplitudesRectangular(benchmark::State& state) {
    const auto pot = swpclock::Potential::rectangular(0.5, 10.0);
    double k = 0.7;
    for (auto _ : state) {
        benchmark::DoNotOptimize(swpclock::amplitudes(pot, pp, k));
        k = k == 0.7 ? 0.71 : 0.7; // defeat caching of a single k
    }
}
BENCHMARK(BM_AmplitudesRectangular);

void BM_AmplitudesDoubleDelta(benchmark::State& state) {
    const auto pot = swpclock::Potential::double_delta(16.0, 5.0);
    double k = 1.2;
    for (auto _ : state) {
        benchmark::DoNotOptimize(swpclock::amplitudes(pot, pp, k));
        k = k == 1.2 ? 1.21 : 1.2;
    }
}
BENCHMARK(BM_AmplitudesDoubleDelta);

void BM_ClockTimesRectangular(benchmark::State& state) {
    const auto pot = swpclock::Potential::rectangular(0.5, 10.0);
    double k = 0.7;
    for (auto _ : state) {
        benchmark::DoNotOptimize(swpclock::clock_times(pot, pp, k));
        k = k == 0.7 ? 0.71 : 0.7;
    }
}
BENCHMARK(BM_ClockTimesRectangular);

void BM_DwellIntegralRectangular(benchmark::State& state) {
    const auto pot = swpclock::Potential::rectangular(0.5, 10.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(swpclock::dwell_integral(pot, pp, 0.7));
}
BENCHMARK(BM_DwellIntegralRectangular);

void BM_AveragedTimesRectangular(benchmark::State& state) {
    const swpclock::GaussianPacket packet{0.7, 10.0, -80.0};
    const auto pot = swpclock::Potential::rectangular(0.5, 10.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(swpclock::averaged_times(packet, pot, pp, {}));
}
BENCHMARK(BM_AveragedTimesRectangular)->Unit(benchmark::kMillisecond);

void BM_AveragedTimesDoubleDelta(benchmark::State& state) {
    const swpclock::GaussianPacket packet{1.2, 6.0, -48.0};
    const auto pot = swpclock::Potential::double_delta(16.0, 5.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(swpclock::averaged_times(packet, pot, pp, {}));
}
BENCHMARK(BM_AveragedTimesDoubleDelta)->Unit(benchmark::kMillisecond);

void BM_FindResonances(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(swpclock::find_resonances(16.0, 5.0, pp, 0.1, 3.0));
}
BENCHMARK(BM_FindResonances);

void BM_SweepRowWidth(benchmark::State& state) {
    // One row of the canonical barrier-width sweep at the given width.
    swpclock::SweepSpec spec;
    spec.kind = swpclock::SweepKind::BarrierWidth;
    spec.packet = {0.7, 10.0, -80.0};
    spec.barrierHeight = 0.5;
    const double width = static_cast<double>(state.range(0));
    spec.axis = {width, width, 1, false};
    for (auto _ : state)
        benchmark::DoNotOptimize(swpclock::run_sweep(spec));
}
BENCHMARK(BM_SweepRowWidth)->Arg(10)->Arg(60)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_EvolveShort(benchmark::State& state) {
    // 2001-node Cayley propagation for t = 5 (8000 steps); scales linearly in
    // nodes x steps, so this calibrates the long production runs.
    const swpclock::GaussianPacket packet{0.7, 10.0, -80.0};
    const auto pot = swpclock::Potential::rectangular(0.5, 10.0);
    const swpclock::Grid1D grid{-200.0, 200.0, 2001};
    swpclock::EvolveOptions evo;
    evo.tMax = 5.0;
    evo.insideTolerance = 1.0; // short run never reaches the asymptotic state
    for (auto _ : state)
        benchmark::DoNotOptimize(swpclock::evolve(packet, pot, pp, grid, evo));
}
BENCHMARK(BM_EvolveShort)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
