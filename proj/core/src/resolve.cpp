#include "bibcouple/resolve.hpp"

#include <algorithm>
#include <unordered_map>

#include <json.hpp>

#include "bibcouple/jaro_winkler.hpp"
#include "bibcouple/parallel.hpp"
#include "bibcouple/text_norm.hpp"
#include "bibcouple/union_find.hpp"

namespace bibcouple {

namespace {

std::string four_digit_year(int year) {
    std::string y = std::to_string(year);
    while (y.size() < 4) y.insert(y.begin(), '0');
    return y;
}

}  // namespace

NormalizedReference NormalizedReference::from(const RawReference& r) {
    NormalizedReference n;
    n.author = normalize_for_matching(r.author_field);
    n.title = normalize_for_matching(r.title_field);
    n.year = r.year;
    n.key = n.author + "|" + four_digit_year(r.year) + "|" + n.title;
    return n;
}

bool references_match(const NormalizedReference& a, const NormalizedReference& b, const MatchRuleConfig& cfg) {
    const auto n = static_cast<std::size_t>(cfg.prefix_chars);
    if (prefix_bytes(a.author, n) != prefix_bytes(b.author, n)) return false;
    if (prefix_bytes(a.title, n) != prefix_bytes(b.title, n)) return false;
    if (jaro_winkler(a.author, b.author) < cfg.author_jw_min) return false;
    const double title_jw = jaro_winkler(a.title, b.title);
    if (title_jw >= cfg.title_jw_min_with_year && a.year == b.year) return true;
    return title_jw >= cfg.title_jw_min_alone;
}

bool references_match(const RawReference& a, const RawReference& b, const MatchRuleConfig& cfg) {
    return references_match(NormalizedReference::from(a), NormalizedReference::from(b), cfg);
}

ReferenceResolution resolve_references(const std::vector<RawReference>& refs, const MatchRuleConfig& cfg,
                                       int threads) {
    ReferenceResolution out;
    out.input_count = refs.size();
    if (refs.empty()) return out;

    std::vector<NormalizedReference> norm(refs.size());
    parallel_for(refs.size(), resolve_threads(threads),
                 [&](std::size_t i) { norm[i] = NormalizedReference::from(refs[i]); });

    // Blocking on the exact prefixes required by the match rule. '\x1f'
    // cannot occur in normalized text, so the key is unambiguous.
    std::map<std::string, std::vector<std::uint32_t>> blocks;
    const auto n = static_cast<std::size_t>(cfg.prefix_chars);
    for (std::uint32_t i = 0; i < refs.size(); ++i) {
        std::string key = std::string(prefix_bytes(norm[i].author, n)) + '\x1f' +
                          std::string(prefix_bytes(norm[i].title, n));
        blocks[key].push_back(i);
    }

    std::vector<const std::vector<std::uint32_t>*> block_list;
    block_list.reserve(blocks.size());
    for (const auto& [key, members] : blocks) {
        out.block_sizes.emplace(key, static_cast<std::uint32_t>(members.size()));
        block_list.push_back(&members);
    }

    // Pair evaluation is parallel per block; merging happens afterwards so
    // the result cannot depend on scheduling.
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> block_edges(block_list.size());
    parallel_for(block_list.size(), resolve_threads(threads), [&](std::size_t b) {
        const auto& members = *block_list[b];
        for (std::size_t i = 0; i + 1 < members.size(); ++i) {
            for (std::size_t j = i + 1; j < members.size(); ++j) {
                if (references_match(norm[members[i]], norm[members[j]], cfg))
                    block_edges[b].emplace_back(members[i], members[j]);
            }
        }
    });

    DisjointSets sets(refs.size());
    for (const auto& edges : block_edges)
        for (const auto& [u, v] : edges) sets.unite(u, v);

    // Canonical representative per component: lexicographically smallest key.
    std::unordered_map<std::size_t, std::uint32_t> best_member;
    best_member.reserve(refs.size());
    for (std::uint32_t i = 0; i < refs.size(); ++i) {
        std::size_t root = sets.find(i);
        auto [it, inserted] = best_member.emplace(root, i);
        if (!inserted && norm[i].key < norm[it->second].key) it->second = i;
    }

    std::vector<std::uint32_t> rep_indices;
    rep_indices.reserve(best_member.size());
    for (const auto& [root, rep] : best_member) rep_indices.push_back(rep);
    // Distinct components can only share a key under degenerate thresholds;
    // the index tie-break keeps the ordering deterministic even then.
    std::sort(rep_indices.begin(), rep_indices.end(), [&](std::uint32_t a, std::uint32_t b) {
        return norm[a].key != norm[b].key ? norm[a].key < norm[b].key : a < b;
    });

    std::unordered_map<std::size_t, std::uint32_t> cluster_of_root;
    cluster_of_root.reserve(rep_indices.size());
    out.clusters.reserve(rep_indices.size());
    for (std::uint32_t c = 0; c < rep_indices.size(); ++c) {
        const auto rep = rep_indices[c];
        cluster_of_root.emplace(sets.find(rep), c);
        ResolvedReference rr;
        rr.cluster_id = norm[rep].key;
        rr.canonical_author = norm[rep].author;
        rr.canonical_year = norm[rep].year;
        rr.canonical_title = norm[rep].title;
        out.clusters.push_back(std::move(rr));
    }

    out.cluster_of.resize(refs.size());
    for (std::uint32_t i = 0; i < refs.size(); ++i) {
        std::uint32_t c = cluster_of_root.at(sets.find(i));
        out.cluster_of[i] = c;
        ++out.clusters[c].member_count;
    }
    return out;
}

std::vector<AuthorOccurrence> collect_author_occurrences(const std::vector<PublicationRecord>& records) {
    std::vector<AuthorOccurrence> out;
    for (std::uint32_t r = 0; r < records.size(); ++r) {
        for (const auto& name : records[r].authors)
            out.push_back({name, records[r].specialism, r});
    }
    return out;
}

AuthorResolution resolve_authors(const std::vector<AuthorOccurrence>& occurrences, const MatchRuleConfig& cfg,
                                 AuthorScope scope) {
    AuthorResolution out;
    if (occurrences.empty()) return out;

    struct NormName {
        std::string surname;
        std::string given;
        std::string scope_label;
        std::string key;
    };
    std::vector<NormName> norm(occurrences.size());
    for (std::size_t i = 0; i < occurrences.size(); ++i) {
        norm[i].surname = normalize_for_matching(occurrences[i].name.surname);
        norm[i].given = normalize_for_matching(occurrences[i].name.given);
        norm[i].scope_label = scope == AuthorScope::per_specialism ? occurrences[i].specialism : std::string();
        norm[i].key = norm[i].surname + "|" + norm[i].given;
    }

    std::map<std::string, std::vector<std::uint32_t>> scopes;
    for (std::uint32_t i = 0; i < occurrences.size(); ++i) scopes[norm[i].scope_label].push_back(i);

    DisjointSets sets(occurrences.size());
    for (const auto& [label, members] : scopes) {
        for (std::size_t i = 0; i + 1 < members.size(); ++i) {
            for (std::size_t j = i + 1; j < members.size(); ++j) {
                const auto& a = norm[members[i]];
                const auto& b = norm[members[j]];
                if (jaro_winkler(a.surname, b.surname) > cfg.author_surname_min &&
                    jaro_winkler(a.given, b.given) > cfg.author_given_min)
                    sets.unite(members[i], members[j]);
            }
        }
    }

    std::unordered_map<std::size_t, std::uint32_t> best_member;
    for (std::uint32_t i = 0; i < occurrences.size(); ++i) {
        std::size_t root = sets.find(i);
        auto [it, inserted] = best_member.emplace(root, i);
        if (!inserted && norm[i].key < norm[it->second].key) it->second = i;
    }

    std::vector<std::uint32_t> reps;
    reps.reserve(best_member.size());
    for (const auto& [root, rep] : best_member) reps.push_back(rep);
    auto full_id = [&](std::uint32_t i) {
        return norm[i].scope_label.empty() ? norm[i].key : norm[i].scope_label + "|" + norm[i].key;
    };
    std::sort(reps.begin(), reps.end(), [&](std::uint32_t a, std::uint32_t b) {
        const std::string ida = full_id(a), idb = full_id(b);
        return ida != idb ? ida < idb : a < b;
    });

    std::unordered_map<std::size_t, std::uint32_t> identity_of_root;
    out.identities.reserve(reps.size());
    for (std::uint32_t c = 0; c < reps.size(); ++c) {
        identity_of_root.emplace(sets.find(reps[c]), c);
        AuthorIdentity id;
        id.author_id = full_id(reps[c]);
        id.canonical_surname = norm[reps[c]].surname;
        id.canonical_given = norm[reps[c]].given;
        id.scope = norm[reps[c]].scope_label;
        out.identities.push_back(std::move(id));
    }

    out.identity_of.resize(occurrences.size());
    for (std::uint32_t i = 0; i < occurrences.size(); ++i) {
        std::uint32_t c = identity_of_root.at(sets.find(i));
        out.identity_of[i] = c;
        ++out.identities[c].member_count;
    }
    return out;
}

std::string resolution_report_json(const ReferenceResolution& res, const RefParseStats& stats,
                                   const AuthorResolution* authors) {
    nlohmann::ordered_json j;
    j["totals"] = {
        {"raw", stats.total},
        {"parsed", stats.parsed},
        {"resolved", res.clusters.size()},
        {"discarded", stats.discarded_anonymous + stats.discarded_yearless + stats.malformed},
        {"discarded_anonymous", stats.discarded_anonymous},
        {"discarded_yearless", stats.discarded_yearless},
        {"malformed", stats.malformed},
        {"multi_year_flagged", stats.multi_year_flagged},
    };
    nlohmann::ordered_json blocks = nlohmann::ordered_json::object();
    for (const auto& [key, size] : res.block_sizes) blocks[key] = size;
    j["block_sizes"] = std::move(blocks);
    std::map<std::uint32_t, std::uint64_t> histogram;
    for (const auto& c : res.clusters) ++histogram[c.member_count];
    nlohmann::ordered_json hist = nlohmann::ordered_json::object();
    for (const auto& [size, count] : histogram) hist[std::to_string(size)] = count;
    j["cluster_size_histogram"] = std::move(hist);
    if (authors) {
        j["authors"] = {
            {"occurrences", authors->identity_of.size()},
            {"identities", authors->identities.size()},
        };
    }
    return j.dump(2);
}

std::string reference_dictionary_json(const std::vector<std::string>& raw_strings,
                                      const std::vector<RawReference>& refs, const ReferenceResolution& res) {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    std::map<std::string, std::string> entries;
    for (std::size_t i = 0; i < refs.size() && i < raw_strings.size(); ++i)
        entries.emplace(raw_strings[i], res.clusters[res.cluster_of[i]].cluster_id);
    for (const auto& [raw, cluster] : entries) j[raw] = cluster;
    return j.dump(2);
}

ResolvedCorpus resolve_corpus(std::vector<PublicationRecord> records, const MatchRuleConfig& cfg,
                              AuthorScope scope, int threads) {
    ResolvedCorpus out;
    out.records = std::move(records);

    ParsedReferences parsed = parse_all_references(out.records);
    out.refs = std::move(parsed.refs);
    out.ref_stats = parsed.stats;
    out.ref_resolution = resolve_references(out.refs, cfg, threads);

    out.author_occurrences = collect_author_occurrences(out.records);
    out.author_resolution = resolve_authors(out.author_occurrences, cfg, scope);

    std::unordered_map<std::string, std::size_t> record_index;
    record_index.reserve(out.records.size());
    for (std::size_t i = 0; i < out.records.size(); ++i) record_index.emplace(out.records[i].id, i);

    out.clusters_by_record.assign(out.records.size(), {});
    for (std::size_t i = 0; i < out.refs.size(); ++i) {
        auto it = record_index.find(out.refs[i].source_record_id);
        if (it != record_index.end()) out.clusters_by_record[it->second].push_back(out.ref_resolution.cluster_of[i]);
    }
    for (auto& v : out.clusters_by_record) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }

    out.identities_by_record.assign(out.records.size(), {});
    for (std::size_t i = 0; i < out.author_occurrences.size(); ++i)
        out.identities_by_record[out.author_occurrences[i].record_index].push_back(
            out.author_resolution.identity_of[i]);
    for (auto& v : out.identities_by_record) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }
    return out;
}

}  // namespace bibcouple
