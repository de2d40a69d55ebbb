#include "elp/generators.hpp"
#include "elp/search.hpp"

#include <benchmark/benchmark.h>

namespace {

void BM_NextSamePopcount(benchmark::State& state) {
    const std::size_t n = 24;
    for (auto _ : state) {
        std::uint64_t x = (std::uint64_t{1} << 12) - 1;
        std::size_t count = 0;
        while (auto next = elp::next_same_popcount(x, n)) {
            x = *next;
            ++count;
        }
        benchmark::DoNotOptimize(count);
    }
}
BENCHMARK(BM_NextSamePopcount);

void BM_Eligible(benchmark::State& state, elp::Algorithm algorithm, elp::Route route) {
    const elp::Program p = elp::eligible_program(static_cast<int>(state.range(0)));
    elp::InternalEngine engine;
    elp::SearchConfig cfg;
    cfg.algorithm = algorithm;
    cfg.route = route;
    for (auto _ : state) {
        elp::SearchResult r = elp::solve(p, cfg, engine);
        state.counters["solver_calls"] = static_cast<double>(r.stats.solver_calls);
        state.counters["peak_in_flight"] = static_cast<double>(r.stats.peak_in_flight_guesses);
    }
}
BENCHMARK_CAPTURE(BM_Eligible, level_translate, elp::Algorithm::level_single, elp::Route::translate)->DenseRange(1, 6);
BENCHMARK_CAPTURE(BM_Eligible, naive_direct, elp::Algorithm::naive, elp::Route::direct)->DenseRange(1, 4);

} // namespace

BENCHMARK_MAIN();
