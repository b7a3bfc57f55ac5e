#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "bibcouple/resolve.hpp"

namespace {

using bibcouple::MatchRuleConfig;
using bibcouple::RawReference;

// Variant corpora: a pool of distinct works, each cited several times with
// small perturbations, mirroring what the disambiguator sees in practice.
std::vector<RawReference> make_refs(std::size_t n_works, std::size_t citations_per_work) {
    std::mt19937_64 rng(7);
    std::vector<RawReference> refs;
    refs.reserve(n_works * citations_per_work);
    for (std::size_t w = 0; w < n_works; ++w) {
        const std::string author = "Author" + std::to_string(w) + " X";
        const std::string title = "t" + std::to_string(w) + " collected papers volume " + std::to_string(w % 9);
        for (std::size_t c = 0; c < citations_per_work; ++c) {
            RawReference r;
            r.author_field = c % 3 == 0 ? author + "." : author;
            r.title_field = c % 4 == 0 ? title + " 2nd ed" : title;
            r.year = 1900 + static_cast<int>(w % 100);
            refs.push_back(std::move(r));
        }
    }
    std::shuffle(refs.begin(), refs.end(), rng);
    return refs;
}

void BM_ResolveReferences(benchmark::State& state) {
    const auto refs = make_refs(static_cast<std::size_t>(state.range(0)), 8);
    for (auto _ : state) {
        auto res = bibcouple::resolve_references(refs, MatchRuleConfig{}, 0);
        benchmark::DoNotOptimize(res.clusters.size());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(refs.size()));
}

BENCHMARK(BM_ResolveReferences)->Arg(500)->Arg(2000)->Arg(8000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
