#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bibcouple/ingest.hpp"
#include "bibcouple/types.hpp"

namespace bibcouple {

struct MatchRuleConfig {
    double author_jw_min = 0.9;          // reference author fields, >=
    double title_jw_min_with_year = 0.85;  // titles when years match exactly, >=
    double title_jw_min_alone = 0.95;    // titles regardless of year, >=
    int prefix_chars = 3;                // exact-prefix requirement on author and title
    double author_surname_min = 0.95;    // author disambiguation, strictly >
    double author_given_min = 0.9;       // author disambiguation, strictly >
};

// A reference with its match fields in canonical (normalized) form.
struct NormalizedReference {
    std::string author;
    int year = 0;
    std::string title;
    std::string key;  // author|year|title

    static NormalizedReference from(const RawReference& r);
};

// True iff the two references denote the same work under the rule set:
// exact lower-cased prefixes on author and title, author similarity at
// least author_jw_min, and either (titles >= title_jw_min_with_year and
// equal years) or titles >= title_jw_min_alone. Inputs must already be
// normalized. Symmetric.
bool references_match(const NormalizedReference& a, const NormalizedReference& b, const MatchRuleConfig& cfg);
bool references_match(const RawReference& a, const RawReference& b, const MatchRuleConfig& cfg);

struct ResolvedReference {
    std::string cluster_id;  // lexicographically smallest member key
    std::string canonical_author;
    int canonical_year = 0;
    std::string canonical_title;
    std::uint32_t member_count = 0;
};

struct ReferenceResolution {
    std::vector<std::uint32_t> cluster_of;      // input index -> cluster index
    std::vector<ResolvedReference> clusters;    // sorted by cluster_id
    std::map<std::string, std::uint32_t> block_sizes;
    std::uint64_t input_count = 0;
};

// Clusters references as the connected components of the pairwise match
// relation. Candidate pairs are generated by blocking on the exact
// author+title prefixes required by the match rule, which is lossless.
// Deterministic regardless of input order and thread count.
ReferenceResolution resolve_references(const std::vector<RawReference>& refs, const MatchRuleConfig& cfg,
                                       int threads = 1);

// ---- authors ---------------------------------------------------------------

enum class AuthorScope { per_specialism, global };

struct AuthorIdentity {
    std::string author_id;
    std::string canonical_surname;  // normalized
    std::string canonical_given;    // normalized
    std::string scope;              // specialism label, or "" under global scope
    std::uint32_t member_count = 0;
};

struct AuthorOccurrence {
    AuthorName name;
    std::string specialism;
    std::uint32_t record_index = 0;  // into the corpus the occurrence came from
};

struct AuthorResolution {
    std::vector<std::uint32_t> identity_of;  // occurrence index -> identity index
    std::vector<AuthorIdentity> identities;  // sorted by author_id
};

// One occurrence per (record, author) pair, in record order.
std::vector<AuthorOccurrence> collect_author_occurrences(const std::vector<PublicationRecord>& records);

// Clusters author name occurrences within each scope: a pair merges iff
// surname similarity is strictly above author_surname_min and given-name
// similarity strictly above author_given_min (names compared lower-cased
// and punctuation-stripped).
AuthorResolution resolve_authors(const std::vector<AuthorOccurrence>& occurrences, const MatchRuleConfig& cfg,
                                 AuthorScope scope = AuthorScope::per_specialism);

// ---- reports ---------------------------------------------------------------

// Resolution report: totals, per-block sizes, cluster-size histogram.
std::string resolution_report_json(const ReferenceResolution& res, const RefParseStats& stats,
                                   const AuthorResolution* authors = nullptr);

// Dictionary mapping each distinct raw reference string to its cluster id.
std::string reference_dictionary_json(const std::vector<std::string>& raw_strings,
                                      const std::vector<RawReference>& refs, const ReferenceResolution& res);

// ---- everything the pipeline derives once per corpus ------------------------

struct ResolvedCorpus {
    std::vector<PublicationRecord> records;
    std::vector<RawReference> refs;
    RefParseStats ref_stats;
    ReferenceResolution ref_resolution;
    std::vector<AuthorOccurrence> author_occurrences;
    AuthorResolution author_resolution;
    std::vector<std::vector<std::uint32_t>> clusters_by_record;    // sorted unique cluster indices
    std::vector<std::vector<std::uint32_t>> identities_by_record;  // sorted unique identity indices
};

ResolvedCorpus resolve_corpus(std::vector<PublicationRecord> records, const MatchRuleConfig& cfg,
                              AuthorScope scope = AuthorScope::per_specialism, int threads = 1);

}  // namespace bibcouple
