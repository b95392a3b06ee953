#include <benchmark/benchmark.h>

#include <random>

#include "gramconv/balanced_slp.hpp"
#include "gramconv/lcg_build.hpp"
#include "gramconv/primary_index.hpp"
#include "inputs.hpp"

using namespace gramconv;

namespace {

void BM_BuildIndex(benchmark::State& state) {
    const BalancedSlp t(build_slp_from_text(bench::genome(state.range(0) / 10, 10, 0.002, 1), 1),
                        FingerprintContext::from_seed(2));
    const auto kind = state.range(1) ? PrefixRangeKind::kZFast : PrefixRangeKind::kBinarySearch;
    for (auto _ : state) {
        PrimaryIndex idx = build_index(t, {kind, SortMode::kFingerprint});
        benchmark::DoNotOptimize(idx.num_points());
    }
}
BENCHMARK(BM_BuildIndex)->Args({1 << 16, 0})->Args({1 << 16, 1})->Unit(benchmark::kMillisecond);

void BM_Leftmost(benchmark::State& state) {
    const BalancedSlp t(build_slp_from_text(bench::genome(state.range(0) / 10, 10, 0.002, 3), 3),
                        FingerprintContext::from_seed(4));
    const auto kind = state.range(1) ? PrefixRangeKind::kZFast : PrefixRangeKind::kBinarySearch;
    const PrimaryIndex idx = build_index(t, {kind, SortMode::kFingerprint});
    std::mt19937_64 rng(5);
    const std::uint64_t n = t.length();
    for (auto _ : state) {
        const Position i = 1 + rng() % (n - 64);
        const Position k = i + 1 + rng() % 63;
        const Position j = i + rng() % (k - i);
        benchmark::DoNotOptimize(idx.leftmost(i, j, k));
    }
}
BENCHMARK(BM_Leftmost)->Args({1 << 16, 0})->Args({1 << 16, 1});

}  // namespace
