#include <benchmark/benchmark.h>

#include "gramconv/lcg_build.hpp"
#include "gramconv/lz_fcpm.hpp"
#include "gramconv/lz_from_lcg.hpp"
#include "gramconv/lz_stream.hpp"
#include "inputs.hpp"

using namespace gramconv;

namespace {

Slp genome_slp(std::int64_t n) { return build_slp_from_text(bench::genome(n / 20, 20, 0.002, 1), 1); }

void BM_LzStream(benchmark::State& state) {
    const Slp slp = genome_slp(state.range(0));
    std::size_t z = 0;
    for (auto _ : state) z = slp_to_lz_stream(slp, 2).size();
    state.counters["z"] = static_cast<double>(z);
}
BENCHMARK(BM_LzStream)->Arg(1 << 16)->Arg(1 << 20)->Unit(benchmark::kMillisecond);

void BM_LzFcpm(benchmark::State& state) {
    const Slp slp = genome_slp(state.range(0));
    const auto engine = state.range(1) ? EngineKind::kIndex : EngineKind::kScan;
    for (auto _ : state) benchmark::DoNotOptimize(slp_to_lz_fcpm(slp, 3, engine).size());
}
BENCHMARK(BM_LzFcpm)->Args({1 << 14, 0})->Args({1 << 14, 1})->Unit(benchmark::kMillisecond);

void BM_LcgToLz(benchmark::State& state) {
    const Rlcfg lcg = build_lcg(bench::genome(state.range(0) / 20, 20, 0.002, 4), 4);
    for (auto _ : state) benchmark::DoNotOptimize(lcg_to_lz(lcg, 5).size());
}
BENCHMARK(BM_LcgToLz)->Arg(1 << 16)->Unit(benchmark::kMillisecond);

}  // namespace
