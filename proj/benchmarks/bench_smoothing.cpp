#include <benchmark/benchmark.h>

#include "csmooth/generators.hpp"
#include "csmooth/inference.hpp"
#include "csmooth/semiring.hpp"
#include "csmooth/smoothing.hpp"

using namespace csmooth;

namespace {

GeneratedInstance ladder_instance(std::size_t target_edges) {
    auto p = worstcase_ladder_point(target_edges);
    return gen_worstcase(p.n, p.m, 7);
}

void BM_SmoothNaive(benchmark::State& state) {
    auto inst = ladder_instance(static_cast<std::size_t>(state.range(0)));
    std::size_t added = 0;
    for (auto _ : state) {
        auto r = smooth_naive(inst.circuit, inst.vtree);
        added = r.stats.added_edges;
        benchmark::DoNotOptimize(r);
    }
    state.counters["added_edges"] = static_cast<double>(added);
}
BENCHMARK(BM_SmoothNaive)->Arg(10000)->Arg(40000)->Arg(160000);

void BM_SmoothRangeSum(benchmark::State& state) {
    auto inst = ladder_instance(static_cast<std::size_t>(state.range(0)));
    std::size_t added = 0;
    for (auto _ : state) {
        auto r = smooth_rangesum(inst.circuit, inst.vtree);
        added = r.stats.added_edges;
        benchmark::DoNotOptimize(r);
    }
    state.counters["added_edges"] = static_cast<double>(added);
}
BENCHMARK(BM_SmoothRangeSum)->Arg(10000)->Arg(40000)->Arg(160000)->Arg(640000);

void BM_SmoothStructured(benchmark::State& state) {
    auto inst = ladder_instance(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        auto r = smooth_structured(inst.circuit, inst.vtree);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_SmoothStructured)->Arg(10000)->Arg(40000)->Arg(160000);

void BM_AllMarginalsDirect(benchmark::State& state) {
    auto inst = ladder_instance(static_cast<std::size_t>(state.range(0)));
    LiteralWeights<ProbSemiring> w(inst.circuit.num_vars());
    Rng rng(3);
    for (VarId x = 1; x <= inst.circuit.num_vars(); ++x) {
        w.pos[x] = 0.1 + 0.9 * rng.unit();
        w.neg[x] = 0.1 + 0.9 * rng.unit();
    }
    std::size_t ops = 0;
    for (auto _ : state) {
        auto r = all_marginals_direct<ProbSemiring>(inst.circuit, inst.vtree, w);
        ops = r.op_count;
        benchmark::DoNotOptimize(r);
    }
    state.counters["ops"] = static_cast<double>(ops);
}
BENCHMARK(BM_AllMarginalsDirect)->Arg(40000)->Arg(160000)->Arg(640000);

void BM_AllMarginalsViaSmoothing(benchmark::State& state) {
    auto inst = ladder_instance(static_cast<std::size_t>(state.range(0)));
    LiteralWeights<ProbSemiring> w(inst.circuit.num_vars());
    Rng rng(3);
    for (VarId x = 1; x <= inst.circuit.num_vars(); ++x) {
        w.pos[x] = 0.1 + 0.9 * rng.unit();
        w.neg[x] = 0.1 + 0.9 * rng.unit();
    }
    for (auto _ : state) {
        auto r = all_marginals_via_smoothing<ProbSemiring>(inst.circuit, inst.vtree, w);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_AllMarginalsViaSmoothing)->Arg(40000)->Arg(160000);

}  // namespace
