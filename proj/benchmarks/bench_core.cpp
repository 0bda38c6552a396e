#include <benchmark/benchmark.h>

#include "hardscope/complexity.hpp"
#include "hardscope/distance.hpp"
#include "hardscope/ensemble.hpp"
#include "hardscope/hardness.hpp"
#include "hardscope/resample.hpp"
#include "hardscope/rng.hpp"

namespace hs = hardscope;

namespace {

// Two overlapping Gaussian blobs, 1:3 imbalance.
hs::Dataset blobs(hs::Index n, hs::Index m) {
    hs::Rng rng(7);
    hs::Matrix x(n, m);
    std::vector<hs::Label> y(n);
    for (hs::Index i = 0; i < n; ++i) {
        y[i] = i % 4 == 0 ? 1 : 0;
        for (hs::Index f = 0; f < m; ++f) x(i, f) = rng.normal(y[i] == 1 ? 1.0 : 0.0, 1.0);
    }
    return hs::Dataset(std::move(x), std::move(y));
}

void BM_DistanceMatrix(benchmark::State& state) {
    const auto data = blobs(state.range(0), 8);
    for (auto _ : state) benchmark::DoNotOptimize(hs::distance_matrix(data));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DistanceMatrix)->RangeMultiplier(2)->Range(128, 1024)->Complexity(benchmark::oNSquared);

void BM_InstanceMeasures(benchmark::State& state) {
    const auto data = blobs(state.range(0), 8);
    for (auto _ : state) benchmark::DoNotOptimize(hs::instance_measures(data));
}
BENCHMARK(BM_InstanceMeasures)->Arg(200)->Arg(500)->Unit(benchmark::kMillisecond);

void BM_ComplexityProfile(benchmark::State& state) {
    const auto data = blobs(state.range(0), 8);
    for (auto _ : state) benchmark::DoNotOptimize(hs::complexity_profile(data));
}
BENCHMARK(BM_ComplexityProfile)->Arg(200)->Arg(500)->Unit(benchmark::kMillisecond);

void BM_EstimateIH(benchmark::State& state) {
    const auto data = blobs(300, 6);
    const auto plan = hs::stratified_folds(data, 42, 1, 5);
    const auto pool = hs::default_pool(42);
    for (auto _ : state) benchmark::DoNotOptimize(hs::estimate_ih(data, pool, plan, {}, 1));
}
BENCHMARK(BM_EstimateIH)->Unit(benchmark::kMillisecond);

void BM_Smote(benchmark::State& state) {
    const auto data = blobs(state.range(0), 8);
    for (auto _ : state) benchmark::DoNotOptimize(hs::smote(data));
}
BENCHMARK(BM_Smote)->Arg(500)->Arg(2000);

void BM_HmsmoteBagging(benchmark::State& state) {
    const auto data = blobs(400, 6);
    hs::BaggingOptions o;
    o.n_estimators = 20;
    o.threads = 1;
    for (auto _ : state) benchmark::DoNotOptimize(hs::hmsmote_bagging_train(data, hs::InstanceMeasure::kDN, o));
}
BENCHMARK(BM_HmsmoteBagging)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
