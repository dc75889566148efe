#include <benchmark/benchmark.h>

#include "raschkit/diagnostics.hpp"
#include "raschkit/estimation.hpp"
#include "raschkit/simulate.hpp"

namespace {

using namespace raschkit;

ObservationSet three_facet_data(int examinees, int tasks) {
    ThreeFacetLayout layout;
    layout.examinees = examinees;
    layout.tasks = tasks;
    SimulationDesign d;
    d.generating = make_three_facet_generators(layout);
    d.scale = RatingScale::consecutive(1, 4);
    d.seed = 7;
    return generate_replication(d, 0);
}

void BM_Estimate3frsm(benchmark::State& state) {
    const auto obs = three_facet_data(static_cast<int>(state.range(0)), 4);
    const auto facets = default_facets(Model::ThreeFacet);
    for (auto _ : state) benchmark::DoNotOptimize(estimate_3frsm(obs, facets));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(obs.size()));
}
BENCHMARK(BM_Estimate3frsm)->Arg(29)->Arg(100)->Arg(300)->Unit(benchmark::kMillisecond);

void BM_EstimatePcm(benchmark::State& state) {
    PartialCreditLayout layout;
    layout.persons = static_cast<int>(state.range(0));
    layout.items = 20;
    layout.tau = {-0.8, 0.8};
    SimulationDesign d;
    d.generating = make_partial_credit_generators(layout);
    d.scale = RatingScale::consecutive(0, 2);
    d.seed = 3;
    const auto obs = generate_replication(d, 0);
    for (auto _ : state) benchmark::DoNotOptimize(estimate_pcm(obs));
}
BENCHMARK(BM_EstimatePcm)->Arg(75)->Arg(500)->Unit(benchmark::kMillisecond);

void BM_BiasInteractions(benchmark::State& state) {
    const auto obs = three_facet_data(29, 4);
    const auto main = estimate_3frsm(obs, default_facets(Model::ThreeFacet));
    for (auto _ : state) benchmark::DoNotOptimize(estimate_bias_interactions(obs, main));
}
BENCHMARK(BM_BiasInteractions)->Unit(benchmark::kMillisecond);

void BM_FitStatistics(benchmark::State& state) {
    const auto obs = three_facet_data(29, 4);
    const auto main = estimate_3frsm(obs, default_facets(Model::ThreeFacet));
    for (auto _ : state) benchmark::DoNotOptimize(fit_statistics(obs, main.params, FacetRole::Examinee));
}
BENCHMARK(BM_FitStatistics);

}  // namespace
