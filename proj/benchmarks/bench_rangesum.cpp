#include <benchmark/benchmark.h>

#include "csmooth/generators.hpp"
#include "csmooth/rangesum.hpp"

using namespace csmooth;

namespace {

std::vector<IntervalQuery> make_queries(std::uint32_t n, std::size_t m, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<IntervalQuery> qs;
    qs.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        std::uint32_t lo = static_cast<std::uint32_t>(rng.in_range(1, n));
        std::uint32_t hi = static_cast<std::uint32_t>(rng.in_range(lo, n));
        qs.push_back({lo, hi});
    }
    return qs;
}

void BM_BuildTrace(benchmark::State& state) {
    const std::uint32_t n = static_cast<std::uint32_t>(state.range(0));
    auto qs = make_queries(n, n, 11);
    std::size_t additions = 0;
    for (auto _ : state) {
        AdditionTrace t = build_trace(n, qs);
        additions = t.addition_count();
        benchmark::DoNotOptimize(t);
    }
    state.counters["additions"] = static_cast<double>(additions);
    state.SetItemsProcessed(state.iterations() * qs.size());
}
BENCHMARK(BM_BuildTrace)->Range(1 << 12, 1 << 18);

void BM_NaiveTrace(benchmark::State& state) {
    const std::uint32_t n = static_cast<std::uint32_t>(state.range(0));
    auto qs = make_queries(n, n, 11);
    for (auto _ : state) {
        AdditionTrace t = naive_trace(n, qs);
        benchmark::DoNotOptimize(t);
    }
    state.SetItemsProcessed(state.iterations() * qs.size());
}
BENCHMARK(BM_NaiveTrace)->Range(1 << 12, 1 << 16);

void BM_EvaluateTrace(benchmark::State& state) {
    const std::uint32_t n = static_cast<std::uint32_t>(state.range(0));
    auto qs = make_queries(n, n, 5);
    AdditionTrace t = build_trace(n, qs);
    std::vector<long long> w(n, 1);
    for (auto _ : state) {
        auto out = evaluate_trace<long long>(t, w, [](long long a, long long b) { return a + b; });
        benchmark::DoNotOptimize(out);
    }
}
BENCHMARK(BM_EvaluateTrace)->Range(1 << 12, 1 << 16);

}  // namespace
