#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "bibcouple/percolation.hpp"

namespace {

using namespace bibcouple;

CoupledGraph random_graph(std::uint32_t n, double edge_prob) {
    std::mt19937_64 rng(13);
    CoupledGraph g;
    for (std::uint32_t i = 0; i < n; ++i) g.nodes.push_back(std::to_string(i));
    const auto cutoff = static_cast<std::uint64_t>(edge_prob * 1000.0);
    for (std::uint32_t u = 0; u < n; ++u)
        for (std::uint32_t v = u + 1; v < n; ++v)
            if (rng() % 1000 < cutoff)
                g.edges.push_back({u, v, static_cast<double>(1 + rng() % 10000) / 10000.0});
    return g;
}

void BM_ConnectivitySweep(benchmark::State& state) {
    const CoupledGraph g = random_graph(static_cast<std::uint32_t>(state.range(0)), 0.02);
    const std::vector<double> grid = default_threshold_grid(g);
    for (auto _ : state) {
        auto p = connectivity_profile(g, grid);
        benchmark::DoNotOptimize(p.components.back());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(g.edges.size()));
}

BENCHMARK(BM_ConnectivitySweep)->Arg(500)->Arg(2000)->Arg(8000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
