// Serial reference vs OpenMP for the counting sieve and the unramified prime scan.

#include "hasse/counting.hpp"
#include "hasse/galois.hpp"

#include <benchmark/benchmark.h>

using namespace hasse;

namespace {

void BM_sieve_serial(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(count_serial(static_cast<std::uint64_t>(st.range(0))));
}
void BM_sieve_parallel(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(count(static_cast<std::uint64_t>(st.range(0))));
}
BENCHMARK(BM_sieve_serial)->Arg(100'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sieve_parallel)->Arg(100'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

// p = 17 quartic: locally soluble everywhere, so the scan runs to the bound
DiagonalSurface scan_surface() {
    return DiagonalSurface::rational(4, {Rat(1), Rat(4), Rat(-289), Rat(-1156)});
}

void BM_scan_serial(benchmark::State& st) {
    auto S = scan_surface();
    auto bad = bad_primes(S);
    for (auto _ : st)
        benchmark::DoNotOptimize(scan_unramified_serial(S, static_cast<std::uint64_t>(st.range(0)), bad));
}
void BM_scan_parallel(benchmark::State& st) {
    auto S = scan_surface();
    auto bad = bad_primes(S);
    for (auto _ : st) benchmark::DoNotOptimize(scan_unramified(S, static_cast<std::uint64_t>(st.range(0)), bad));
}
BENCHMARK(BM_scan_serial)->Arg(2000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_scan_parallel)->Arg(2000)->Arg(10000)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
