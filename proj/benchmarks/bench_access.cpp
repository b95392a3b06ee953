#include <benchmark/benchmark.h>

#include <random>

#include "gramconv/balanced_slp.hpp"
#include "gramconv/lcg_access.hpp"
#include "gramconv/lcg_build.hpp"
#include "inputs.hpp"

using namespace gramconv;

namespace {

void BM_Balance(benchmark::State& state) {
    const Slp slp = build_slp_from_text(bench::genome(state.range(0) / 10, 10, 0.002, 1), 1);
    const auto ctx = FingerprintContext::from_seed(2);
    for (auto _ : state) {
        BalancedSlp t(slp, ctx);
        benchmark::DoNotOptimize(t.height());
    }
    state.counters["rules"] = static_cast<double>(slp.num_rules());
}
BENCHMARK(BM_Balance)->Arg(1 << 14)->Arg(1 << 17)->Unit(benchmark::kMillisecond);

template <typename Oracle>
void run_queries(benchmark::State& state, const Oracle& t) {
    std::mt19937_64 rng(3);
    const std::uint64_t n = t.length();
    for (auto _ : state) {
        const Position a = 1 + rng() % n;
        const Position b = 1 + rng() % n;
        benchmark::DoNotOptimize(t.access(a));
        benchmark::DoNotOptimize(t.fingerprint(std::min(a, b), std::max(a, b)));
        benchmark::DoNotOptimize(lce(t, a, b, n));
    }
}

void BM_SlpQueries(benchmark::State& state) {
    const BalancedSlp t(build_slp_from_text(bench::genome(state.range(0) / 10, 10, 0.002, 4), 4),
                        FingerprintContext::from_seed(5));
    run_queries(state, t);
}
BENCHMARK(BM_SlpQueries)->Arg(1 << 14)->Arg(1 << 18);

void BM_LcgQueries(benchmark::State& state) {
    const LcgNavigator t(build_lcg(bench::genome(state.range(0) / 10, 10, 0.002, 6), 6),
                         FingerprintContext::from_seed(7));
    run_queries(state, t);
}
BENCHMARK(BM_LcgQueries)->Arg(1 << 14)->Arg(1 << 18);

}  // namespace
