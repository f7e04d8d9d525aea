#include <benchmark/benchmark.h>

#include "matchdist/bottleneck.hpp"
#include "matchdist/bounds.hpp"
#include "matchdist/generator.hpp"
#include "matchdist/persistence.hpp"
#include "matchdist/solver.hpp"

using namespace matchdist;

namespace {

NormalizedPair rnd_pair(std::uint32_t n)
{
    return normalize_pair(generate_random({n, 4 * n, 1, 11, 1000}), generate_random({n, 4 * n, 1, 12, 1000}));
}

const Slice kSlice{0.7, 120.0, SliceType::FlatY};

}  // namespace

static void BM_Restrict(benchmark::State& state)
{
    const auto p = rnd_pair(static_cast<std::uint32_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(restrict(p.first, kSlice));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(p.first.size()));
}
BENCHMARK(BM_Restrict)->Arg(100)->Arg(500)->Arg(2000);

static void BM_PersistenceDim0(benchmark::State& state)
{
    const auto p = rnd_pair(static_cast<std::uint32_t>(state.range(0)));
    const MonoFiltration m = restrict(p.first, kSlice);
    for (auto _ : state) benchmark::DoNotOptimize(persistence_dim0(m));
}
BENCHMARK(BM_PersistenceDim0)->Arg(100)->Arg(500)->Arg(2000);

static void BM_PersistenceReduction(benchmark::State& state)
{
    const auto p = rnd_pair(static_cast<std::uint32_t>(state.range(0)));
    const MonoFiltration m = restrict(p.first, kSlice);
    for (auto _ : state) benchmark::DoNotOptimize(persistence_general(m, 0));
}
BENCHMARK(BM_PersistenceReduction)->Arg(100)->Arg(500);

static void BM_Bottleneck(benchmark::State& state)
{
    const auto p = rnd_pair(static_cast<std::uint32_t>(state.range(0)));
    const Diagram a = persistence(restrict(p.first, kSlice), 0);
    const Diagram b = persistence(restrict(p.second, kSlice), 0);
    for (auto _ : state) benchmark::DoNotOptimize(bottleneck_distance(a, b));
    state.counters["points"] = static_cast<double>(a.size() + b.size());
}
BENCHMARK(BM_Bottleneck)->Arg(100)->Arg(500)->Arg(2000)->Unit(benchmark::kMicrosecond);

static void BM_Eval(benchmark::State& state)
{
    const auto p = rnd_pair(static_cast<std::uint32_t>(state.range(0)));
    const Evaluator eval(p.first, p.second, 0);
    for (auto _ : state) benchmark::DoNotOptimize(eval(kSlice));
}
BENCHMARK(BM_Eval)->Arg(100)->Arg(500)->Unit(benchmark::kMicrosecond);

static void BM_Bound(benchmark::State& state)
{
    const auto p = rnd_pair(500);
    const ParamBox b = subdivide(initial_boxes(p.first, p.second)[2])[1];
    const auto kind = static_cast<BoundKind>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(compute_bound(kind, p.first, p.second, b, 1.0));
    state.SetLabel(std::string(to_string(kind)));
}
BENCHMARK(BM_Bound)->DenseRange(0, 2);

static void BM_Approximate(benchmark::State& state)
{
    const auto p = rnd_pair(100);
    SolverConfig cfg;
    cfg.mode = Mode::Relative;
    cfg.epsilon = 0.5;
    cfg.bound = static_cast<BoundKind>(state.range(0));
    std::uint64_t calls = 0;
    for (auto _ : state) calls = approximate(p.first, p.second, cfg).calls;
    state.counters["calls"] = static_cast<double>(calls);
    state.SetLabel(std::string(to_string(cfg.bound)));
}
BENCHMARK(BM_Approximate)->DenseRange(0, 2)->Unit(benchmark::kMillisecond)->Iterations(1);

BENCHMARK_MAIN();
