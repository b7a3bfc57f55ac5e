#include "bibcouple/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

namespace bibcouple {

namespace {

std::size_t intersection_size(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
    std::size_t shared = 0, i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) {
            ++i;
        } else if (b[j] < a[i]) {
            ++j;
        } else {
            ++shared;
            ++i;
            ++j;
        }
    }
    return shared;
}

double cosine_from_counts(std::size_t shared, std::size_t size_a, std::size_t size_b) {
    if (size_a == 0 || size_b == 0) return 0.0;
    return static_cast<double>(shared) /
           std::sqrt(static_cast<double>(size_a) * static_cast<double>(size_b));
}

}  // namespace

double cosine_coupling_weight(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
    return cosine_from_counts(intersection_size(a, b), a.size(), b.size());
}

double cosine_coupling_weight(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    std::vector<std::string> sa(a), sb(b);
    std::sort(sa.begin(), sa.end());
    sa.erase(std::unique(sa.begin(), sa.end()), sa.end());
    std::sort(sb.begin(), sb.end());
    sb.erase(std::unique(sb.begin(), sb.end()), sb.end());
    std::size_t shared = 0, i = 0, j = 0;
    while (i < sa.size() && j < sb.size()) {
        if (sa[i] < sb[j]) {
            ++i;
        } else if (sb[j] < sa[i]) {
            ++j;
        } else {
            ++shared;
            ++i;
            ++j;
        }
    }
    return cosine_from_counts(shared, sa.size(), sb.size());
}

CoupledGraph build_overlap_graph(std::vector<std::string> node_ids,
                                 const std::vector<std::vector<std::uint32_t>>& ref_sets, NodeKind kind,
                                 PeriodSpec period, std::string specialism) {
    CoupledGraph g;
    g.node_kind = kind;
    g.weight_kind = WeightKind::cosine_overlap;
    g.period = std::move(period);
    g.specialism = std::move(specialism);
    g.nodes = std::move(node_ids);

    // Inverted index: reference -> nodes citing it.
    std::unordered_map<std::uint32_t, std::vector<std::uint32_t>> postings;
    for (std::uint32_t node = 0; node < ref_sets.size(); ++node)
        for (std::uint32_t ref : ref_sets[node]) postings[ref].push_back(node);

    std::unordered_map<std::uint64_t, std::uint32_t> shared_counts;
    for (const auto& [ref, nodes] : postings) {
        for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
            for (std::size_t j = i + 1; j < nodes.size(); ++j)
                ++shared_counts[(static_cast<std::uint64_t>(nodes[i]) << 32) | nodes[j]];
    }

    g.edges.reserve(shared_counts.size());
    for (const auto& [key, shared] : shared_counts) {
        WeightedEdge e;
        e.u = static_cast<std::uint32_t>(key >> 32);
        e.v = static_cast<std::uint32_t>(key & 0xFFFFFFFFu);
        e.weight = cosine_from_counts(shared, ref_sets[e.u].size(), ref_sets[e.v].size());
        g.edges.push_back(e);
    }
    std::sort(g.edges.begin(), g.edges.end(),
              [](const WeightedEdge& a, const WeightedEdge& b) { return a.u < b.u || (a.u == b.u && a.v < b.v); });
    return g;
}

CoupledGraph build_article_coupling(const ResolvedCorpus& corpus, std::span<const std::size_t> slice,
                                    const PeriodSpec& period, const std::string& specialism) {
    std::vector<std::string> ids;
    std::vector<std::vector<std::uint32_t>> sets;
    ids.reserve(slice.size());
    sets.reserve(slice.size());
    for (std::size_t r : slice) {
        ids.push_back(corpus.records[r].id);
        sets.push_back(corpus.clusters_by_record[r]);
    }
    return build_overlap_graph(std::move(ids), sets, NodeKind::article, period, specialism);
}

CoupledGraph build_author_coupling(const ResolvedCorpus& corpus, std::span<const std::size_t> slice,
                                   const PeriodSpec& period, const std::string& specialism) {
    // Union of resolved references per identity over the slice.
    std::map<std::uint32_t, std::vector<std::uint32_t>> by_identity;
    for (std::size_t r : slice) {
        for (std::uint32_t identity : corpus.identities_by_record[r]) {
            auto& refs = by_identity[identity];
            refs.insert(refs.end(), corpus.clusters_by_record[r].begin(), corpus.clusters_by_record[r].end());
        }
    }

    std::vector<std::string> ids;
    std::vector<std::vector<std::uint32_t>> sets;
    ids.reserve(by_identity.size());
    sets.reserve(by_identity.size());
    for (auto& [identity, refs] : by_identity) {
        std::sort(refs.begin(), refs.end());
        refs.erase(std::unique(refs.begin(), refs.end()), refs.end());
        ids.push_back(corpus.author_resolution.identities[identity].author_id);
        sets.push_back(std::move(refs));
    }

    // by_identity iterates in identity-index order; identities are already
    // sorted by author_id, so node order is deterministic and sorted.
    return build_overlap_graph(std::move(ids), sets, NodeKind::author, period, specialism);
}

}  // namespace bibcouple
