// Serial reference kernels against their OpenMP counterparts on the same inputs.

#include <benchmark/benchmark.h>

#include <cmath>

#include "zi/kernels.hpp"
#include "zi/pretentious.hpp"

namespace {

using namespace zi;

const IdealTable& table() {
    static const IdealTable t(1'000'000);
    return t;
}

const std::vector<cplx>& mu_values() {
    static const auto v = table().evaluate(mobius());
    return v;
}

const PrimeTerms& terms() {
    static const auto t = distance_terms(log_range_query(random_multiplicative(42), 1, 1e5));
    return t;
}

const EulerTerms& euler() {
    static const auto t = euler_terms(mobius(), 100000, 1.0 + 1.0 / std::log(1e5));
    return t;
}

template <bool Parallel>
void BM_Evaluate(benchmark::State& state) {
    const MultFn f = random_multiplicative(7);
    for (auto _ : state) {
        auto v = Parallel ? table().evaluate(f) : table().evaluate_serial(f);
        benchmark::DoNotOptimize(v.data());
    }
}

template <bool Parallel>
void BM_TwistedSums(benchmark::State& state) {
    const auto& v = mu_values();
    const auto ids = table().ideals();
    for (auto _ : state) {
        auto r = Parallel ? parallel::twisted_sums(v, ids, 16) : serial::twisted_sums(v, ids, 16);
        benchmark::DoNotOptimize(r.data());
    }
}

template <bool Parallel>
void BM_SectorSum(benchmark::State& state) {
    const auto& v = mu_values();
    const auto ids = table().ideals();
    for (auto _ : state) {
        auto r = Parallel ? parallel::sector_sum(v, ids, 0.0, kHalfPi / 2) : serial::sector_sum(v, ids, 0.0, kHalfPi / 2);
        benchmark::DoNotOptimize(r);
    }
}

template <bool Parallel>
void BM_DistanceGrid(benchmark::State& state) {
    const double L = std::log(1e5);
    const auto n = static_cast<std::size_t>(2 * L / (0.05 / L));
    for (auto _ : state) {
        auto r = Parallel ? parallel::distance_grid(terms(), 1.0, -L, 0.05 / L, n)
                          : serial::distance_grid(terms(), 1.0, -L, 0.05 / L, n);
        benchmark::DoNotOptimize(r.data());
    }
}

template <bool Parallel>
void BM_EulerGrid(benchmark::State& state) {
    const double L = std::log(1e5);
    const double c0 = 1.0 + 1.0 / L;
    const auto n = static_cast<std::size_t>(2 * L / (0.05 / L));
    for (auto _ : state) {
        auto r = Parallel ? parallel::euler_grid(euler(), c0, -L, 0.05 / L, n) : serial::euler_grid(euler(), c0, -L, 0.05 / L, n);
        benchmark::DoNotOptimize(r.data());
    }
}

template <bool Parallel>
void BM_WedgeCount(benchmark::State& state) {
    for (auto _ : state) {
        auto r = Parallel ? parallel::wedge_count(kHalfPi / 2, 0.01, 0, 10'000'000)
                          : serial::wedge_count(kHalfPi / 2, 0.01, 0, 10'000'000);
        benchmark::DoNotOptimize(r);
    }
}

BENCHMARK(BM_Evaluate<false>)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Evaluate<true>)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TwistedSums<false>)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TwistedSums<true>)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SectorSum<false>)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SectorSum<true>)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DistanceGrid<false>)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DistanceGrid<true>)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EulerGrid<false>)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EulerGrid<true>)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WedgeCount<false>)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WedgeCount<true>)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
