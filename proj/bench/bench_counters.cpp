// Parallel point-count kernels against their serial references.

#include "rank_arrange/arrangement.hpp"
#include "rank_arrange/chambers.hpp"
#include "rank_arrange/finitefield.hpp"

#include <benchmark/benchmark.h>

using namespace rank_arrange;

namespace {

void BM_mid_parallel(benchmark::State& st)
{
    for (auto _ : st) benchmark::DoNotOptimize(count_mid_complement(static_cast<std::size_t>(st.range(0)), st.range(1)));
}
void BM_mid_serial(benchmark::State& st)
{
    for (auto _ : st)
        benchmark::DoNotOptimize(count_mid_complement_serial(static_cast<std::size_t>(st.range(0)), st.range(1)));
}

void BM_allsubset_parallel(benchmark::State& st)
{
    for (auto _ : st)
        benchmark::DoNotOptimize(count_allsubset_complement(static_cast<std::size_t>(st.range(0)), st.range(1)));
}
void BM_allsubset_serial(benchmark::State& st)
{
    for (auto _ : st)
        benchmark::DoNotOptimize(count_allsubset_complement_serial(static_cast<std::size_t>(st.range(0)), st.range(1)));
}

void BM_allsubset_braid_parallel(benchmark::State& st)
{
    for (auto _ : st)
        benchmark::DoNotOptimize(count_allsubset_braid_complement(static_cast<std::size_t>(st.range(0)), st.range(1)));
}
void BM_allsubset_braid_serial(benchmark::State& st)
{
    for (auto _ : st)
        benchmark::DoNotOptimize(
            count_allsubset_braid_complement_serial(static_cast<std::size_t>(st.range(0)), st.range(1)));
}

void BM_generic_parallel(benchmark::State& st)
{
    const Arrangement a = braid(static_cast<std::size_t>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(count_complement_generic(a, st.range(1)));
}
void BM_generic_serial(benchmark::State& st)
{
    const Arrangement a = braid(static_cast<std::size_t>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(count_complement_generic_serial(a, st.range(1)));
}

// Chamber enumeration, parallel over existing chambers at each insertion.
void BM_chambers_allsubset(benchmark::State& st)
{
    const Arrangement a = all_subset_restricted(static_cast<std::size_t>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(enumerate_chambers(a).size());
}

}  // namespace

BENCHMARK(BM_mid_parallel)->Args({6, 23})->Args({7, 29})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_mid_serial)->Args({6, 23})->Args({7, 29})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_allsubset_parallel)->Args({5, 31})->Args({6, 17})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_allsubset_serial)->Args({5, 31})->Args({6, 17})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_allsubset_braid_parallel)->Args({5, 31})->Args({6, 17})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_allsubset_braid_serial)->Args({5, 31})->Args({6, 17})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_generic_parallel)->Args({4, 31})->Args({5, 13})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_generic_serial)->Args({4, 31})->Args({5, 13})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_chambers_allsubset)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
