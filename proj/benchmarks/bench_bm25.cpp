#include <benchmark/benchmark.h>

#include <vector>

#include "bibcouple/synth.hpp"
#include "bibcouple/text.hpp"

namespace {

using namespace bibcouple;

std::vector<TokenProfile> make_profiles(std::size_t n_docs) {
    SynthConfig cfg;
    cfg.seed = 11;
    cfg.periods = {{"bench", 2000, 2009}};
    cfg.articles_per_period = {static_cast<std::uint32_t>(n_docs)};
    cfg.refs_per_article = {5};
    cfg.shared_pool_size = {100};
    cfg.shared_draw_fraction = {0.4};
    cfg.vocabulary_size = 5000;
    cfg.abstract_length = 120;
    std::vector<TokenProfile> profiles;
    for (const auto& r : generate_corpus(cfg))
        profiles.push_back(tokenize(r.title, r.abstract ? *r.abstract : "", r.id));
    return profiles;
}

void BM_TextCouplingAllPairs(benchmark::State& state) {
    const auto profiles = make_profiles(static_cast<std::size_t>(state.range(0)));
    const IdfTable idf = build_idf(profiles);
    for (auto _ : state) {
        auto g = build_text_coupling(profiles, idf, {"bench", 2000, 2009}, "s", 2.0, 0.75, 0);
        benchmark::DoNotOptimize(g.edges.size());
    }
    const auto n = static_cast<std::int64_t>(profiles.size());
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * n * (n - 1) / 2);
}

BENCHMARK(BM_TextCouplingAllPairs)->Arg(250)->Arg(1000)->Arg(2000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
