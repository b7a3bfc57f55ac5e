#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "bibcouple/jaro_winkler.hpp"

namespace {

std::vector<std::pair<std::string, std::string>> make_pairs(std::size_t n, std::size_t len) {
    std::mt19937_64 rng(42);
    const std::string alphabet = "abcdefghijklmnopqrstuvwxyz ";
    std::vector<std::pair<std::string, std::string>> pairs(n);
    for (auto& [a, b] : pairs) {
        for (std::size_t i = 0; i < len; ++i) a.push_back(alphabet[rng() % alphabet.size()]);
        b = a;
        for (std::size_t i = 0; i < len / 4; ++i) b[rng() % len] = alphabet[rng() % alphabet.size()];
    }
    return pairs;
}

void BM_JaroWinkler(benchmark::State& state) {
    const auto pairs = make_pairs(1024, static_cast<std::size_t>(state.range(0)));
    std::size_t i = 0;
    for (auto _ : state) {
        const auto& [a, b] = pairs[i++ & 1023];
        benchmark::DoNotOptimize(bibcouple::jaro_winkler(a, b));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()));
}

BENCHMARK(BM_JaroWinkler)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
