#include "bibcouple/indicators.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "bibcouple/graph.hpp"

namespace bibcouple {

PriceIndexResult price_index(std::span<const std::pair<int, int>> citing_cited_years, int window_years) {
    PriceIndexResult out;
    for (const auto& [citing, cited] : citing_cited_years) {
        const int age = citing - cited;
        if (age < 0) {
            ++out.negative_age;
            continue;
        }
        ++out.eligible;
        if (age <= window_years) ++out.within_window;
    }
    if (out.eligible > 0)
        out.value = static_cast<double>(out.within_window) / static_cast<double>(out.eligible);
    return out;
}

IndicatorRow descriptive_stats(const ResolvedCorpus& corpus, std::span<const std::size_t> slice,
                               const std::string& specialism, const std::string& period_label,
                               int price_window_years) {
    IndicatorRow row;
    row.specialism = specialism;
    row.period = period_label;
    row.article_count = slice.size();
    if (slice.empty()) return row;

    std::unordered_map<std::string, int> citing_year;
    citing_year.reserve(slice.size());
    for (std::size_t r : slice) citing_year.emplace(corpus.records[r].id, corpus.records[r].year);

    std::uint64_t author_total = 0;
    std::uint64_t unique_ref_total = 0;
    std::unordered_set<std::uint32_t> distinct_clusters;
    for (std::size_t r : slice) {
        author_total += corpus.records[r].authors.size();
        unique_ref_total += corpus.clusters_by_record[r].size();
        distinct_clusters.insert(corpus.clusters_by_record[r].begin(), corpus.clusters_by_record[r].end());
    }
    row.mean_authors_per_article = static_cast<double>(author_total) / static_cast<double>(slice.size());
    row.unique_cited_sources = distinct_clusters.size();
    row.mean_unique_refs_per_article = static_cast<double>(unique_ref_total) / static_cast<double>(slice.size());

    // Per reference occurrence: the citing record's year against the raw
    // cited year.
    std::vector<std::pair<int, int>> pairs;
    for (const auto& ref : corpus.refs) {
        auto it = citing_year.find(ref.source_record_id);
        if (it == citing_year.end()) continue;
        pairs.emplace_back(it->second, ref.year);
    }
    row.price = price_index(pairs, price_window_years);
    return row;
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
        if (c == '"') quoted += "\"\"";
        else quoted += c;
    }
    quoted += '"';
    return quoted;
}

}  // namespace

std::string indicators_csv(std::span<const IndicatorRow> rows) {
    std::string out =
        "specialism,period,article_count,mean_authors_per_article,unique_cited_sources,"
        "mean_unique_refs_per_article,price_index,negative_age_refs\n";
    for (const auto& r : rows) {
        out += csv_field(r.specialism);
        out += ',';
        out += csv_field(r.period);
        out += ',';
        out += std::to_string(r.article_count);
        out += ',';
        out += format_weight(r.mean_authors_per_article);
        out += ',';
        out += std::to_string(r.unique_cited_sources);
        out += ',';
        out += format_weight(r.mean_unique_refs_per_article);
        out += ',';
        out += r.price.value ? format_weight(*r.price.value) : std::string();
        out += ',';
        out += std::to_string(r.price.negative_age);
        out += '\n';
    }
    return out;
}

}  // namespace bibcouple
