#include <benchmark/benchmark.h>

#include "gramconv/lcg_build.hpp"
#include "inputs.hpp"

using namespace gramconv;

namespace {

void BM_BuildLcgRandom(benchmark::State& state) {
    const std::string t = bench::random_text(static_cast<std::size_t>(state.range(0)), 4, 1);
    LcgBuildStats st;
    for (auto _ : state) benchmark::DoNotOptimize(build_lcg(t, 2, &st).num_rules());
    state.counters["levels"] = st.levels;
    state.SetBytesProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BuildLcgRandom)->Arg(1 << 16)->Arg(1 << 20)->Unit(benchmark::kMillisecond);

void BM_BuildLcgFromSlp(benchmark::State& state) {
    const Slp slp = build_slp_from_text(bench::genome(state.range(0) / 20, 20, 0.002, 3), 3);
    for (auto _ : state) benchmark::DoNotOptimize(build_lcg(slp, 4).num_rules());
    state.SetBytesProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BuildLcgFromSlp)->Arg(1 << 20)->Unit(benchmark::kMillisecond);

}  // namespace
