#include "bibcouple/text.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "bibcouple/parallel.hpp"

namespace bibcouple {

namespace {

inline bool token_byte(unsigned char c) {
    return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c >= 0x80;
}

void add_tokens(std::string_view text, TokenProfile& p) {
    std::string token;
    auto flush = [&] {
        if (token.size() > 1) {
            ++p.token_counts[token];
            ++p.length;
        }
        token.clear();
    };
    for (unsigned char c : text) {
        if (token_byte(c)) {
            if (c >= 'A' && c <= 'Z') c = static_cast<unsigned char>(c - 'A' + 'a');
            token.push_back(static_cast<char>(c));
        } else {
            flush();
        }
    }
    flush();
}

// Saturating, length-normalized term-frequency factor for token frequency
// tf inside a document of the given length.
inline double tf_factor(std::uint32_t tf, double doc_len, double mean_len, double k1, double b) {
    const double n = static_cast<double>(tf);
    return n * (k1 + 1.0) / (n + k1 * (1.0 - b + b * doc_len / mean_len));
}

}  // namespace

TokenProfile tokenize(std::string_view title, std::string_view abstract, std::string doc_id) {
    TokenProfile p;
    p.doc_id = std::move(doc_id);
    add_tokens(title, p);
    add_tokens(abstract, p);
    return p;
}

IdfTable build_idf(std::span<const TokenProfile> profiles) {
    IdfTable t;
    t.doc_count = profiles.size();
    std::uint64_t total_length = 0;
    for (const auto& p : profiles) {
        total_length += p.length;
        for (const auto& [token, count] : p.token_counts) ++t.doc_frequency[token];
    }
    if (t.doc_count > 0) t.mean_length = static_cast<double>(total_length) / static_cast<double>(t.doc_count);
    const double n = static_cast<double>(t.doc_count);
    for (const auto& [token, df] : t.doc_frequency) {
        const double p_z = static_cast<double>(df);
        const double score = std::log((n - p_z + 0.5) / (p_z + 0.5));
        if (score > 0.0) t.idf.emplace(token, score);
    }
    return t;
}

double bm25_score(const TokenProfile& i, const TokenProfile& j, const IdfTable& idf, double k1, double b) {
    double total = 0.0;
    const double doc_len = static_cast<double>(j.length);
    for (const auto& [token, count_i] : i.token_counts) {
        (void)count_i;  // unique tokens of i; their frequency in i is irrelevant
        auto idf_it = idf.idf.find(token);
        if (idf_it == idf.idf.end()) continue;
        auto tf_it = j.token_counts.find(token);
        if (tf_it == j.token_counts.end()) continue;
        total += idf_it->second * tf_factor(tf_it->second, doc_len, idf.mean_length, k1, b);
    }
    return total;
}

double bm25_pair(const TokenProfile& i, const TokenProfile& j, const IdfTable& idf, double k1, double b) {
    return (bm25_score(i, j, idf, k1, b) + bm25_score(j, i, idf, k1, b)) / 2.0;
}

CoupledGraph build_text_coupling(std::span<const TokenProfile> profiles, const IdfTable& idf, PeriodSpec period,
                                 std::string specialism, double k1, double b, int threads) {
    CoupledGraph g;
    g.node_kind = NodeKind::article;
    g.weight_kind = WeightKind::bm25_text;
    g.period = std::move(period);
    g.specialism = std::move(specialism);
    g.nodes.reserve(profiles.size());
    for (const auto& p : profiles) g.nodes.push_back(p.doc_id);

    // Intern positively-weighted tokens; everything else cannot contribute.
    std::unordered_map<std::string_view, std::uint32_t> token_ids;
    std::vector<double> token_idf;
    token_ids.reserve(idf.idf.size());
    for (const auto& [token, score] : idf.idf) {
        token_ids.emplace(token, static_cast<std::uint32_t>(token_idf.size()));
        token_idf.push_back(score);
    }

    // Per document: sorted (token id, idf * tf-factor) pairs. The factor is
    // the full contribution of that token when this document is the "j"
    // side, so a pair weight is half the sum of both sides' contributions
    // over shared tokens.
    struct Term {
        std::uint32_t token;
        double contribution;
    };
    std::vector<std::vector<Term>> terms(profiles.size());
    parallel_for(profiles.size(), resolve_threads(threads), [&](std::size_t d) {
        const auto& p = profiles[d];
        const double doc_len = static_cast<double>(p.length);
        auto& row = terms[d];
        row.reserve(p.token_counts.size());
        for (const auto& [token, tf] : p.token_counts) {
            auto it = token_ids.find(token);
            if (it == token_ids.end()) continue;
            row.push_back({it->second, token_idf[it->second] * tf_factor(tf, doc_len, idf.mean_length, k1, b)});
        }
        std::sort(row.begin(), row.end(), [](const Term& a, const Term& b) { return a.token < b.token; });
    });

    // All pairs, parallel over the first endpoint; per-row edge vectors are
    // concatenated in row order so the result is thread-count independent.
    std::vector<std::vector<WeightedEdge>> row_edges(profiles.size());
    parallel_for(profiles.size(), resolve_threads(threads), [&](std::size_t u) {
        const auto& a = terms[u];
        if (a.empty()) return;
        for (std::size_t v = u + 1; v < profiles.size(); ++v) {
            const auto& bb = terms[v];
            double sum = 0.0;
            std::size_t i = 0, j = 0;
            while (i < a.size() && j < bb.size()) {
                if (a[i].token < bb[j].token) {
                    ++i;
                } else if (bb[j].token < a[i].token) {
                    ++j;
                } else {
                    sum += a[i].contribution + bb[j].contribution;
                    ++i;
                    ++j;
                }
            }
            if (sum > 0.0)
                row_edges[u].push_back({static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v), sum / 2.0});
        }
    });

    std::size_t total = 0;
    for (const auto& r : row_edges) total += r.size();
    g.edges.reserve(total);
    for (auto& r : row_edges) g.edges.insert(g.edges.end(), r.begin(), r.end());
    return g;
}

}  // namespace bibcouple
