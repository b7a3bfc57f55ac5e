#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bibcouple/resolve.hpp"

namespace bibcouple {

// Price index over (citing year, cited year) occurrences: the share with
// age in [0, window]. References cited "from the future" (negative age)
// are excluded from both sides of the ratio and tallied separately.
struct PriceIndexResult {
    std::optional<double> value;       // absent when no eligible reference exists
    std::uint64_t eligible = 0;        // denominators
    std::uint64_t within_window = 0;   // numerators
    std::uint64_t negative_age = 0;    // excluded
};

PriceIndexResult price_index(std::span<const std::pair<int, int>> citing_cited_years, int window_years = 10);

struct IndicatorRow {
    std::string specialism;
    std::string period;
    std::uint64_t article_count = 0;
    double mean_authors_per_article = 0.0;
    std::uint64_t unique_cited_sources = 0;  // distinct resolved clusters cited by the slice
    double mean_unique_refs_per_article = 0.0;
    PriceIndexResult price;
};

// Descriptive series for one (specialism, period) slice.
IndicatorRow descriptive_stats(const ResolvedCorpus& corpus, std::span<const std::size_t> slice,
                               const std::string& specialism, const std::string& period_label,
                               int price_window_years = 10);

// One CSV row per (specialism, period); price_index empty when undefined.
std::string indicators_csv(std::span<const IndicatorRow> rows);

}  // namespace bibcouple
