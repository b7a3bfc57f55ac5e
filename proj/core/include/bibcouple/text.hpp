#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "bibcouple/graph.hpp"
#include "bibcouple/types.hpp"

namespace bibcouple {

// Token counts of one document (title + abstract). Tokens are lower-cased,
// split at every non-alphanumeric byte (bytes >= 0x80 count as letters so
// UTF-8 sequences survive), single-byte tokens dropped.
struct TokenProfile {
    std::string doc_id;
    std::map<std::string, std::uint32_t> token_counts;
    std::uint64_t length = 0;  // total kept tokens, with multiplicity

    bool empty() const { return length == 0; }
};

TokenProfile tokenize(std::string_view title, std::string_view abstract, std::string doc_id = "");

// Global IDF table: idf[z] = ln((N - p_z + 0.5) / (p_z + 0.5)), kept only
// when strictly positive. mean_length is the average token count over all
// profiled documents and is shared across every dataset.
struct IdfTable {
    std::uint64_t doc_count = 0;
    std::map<std::string, std::uint32_t> doc_frequency;  // every token
    std::map<std::string, double> idf;                   // positive scores only
    double mean_length = 0.0;
};

IdfTable build_idf(std::span<const TokenProfile> profiles);

// Directed BM25 score s(i, j): sum over unique tokens of i with the term
// frequency taken from j.
double bm25_score(const TokenProfile& i, const TokenProfile& j, const IdfTable& idf, double k1 = 2.0,
                  double b = 0.75);

// Symmetric edge weight (s(i,j) + s(j,i)) / 2.
double bm25_pair(const TokenProfile& i, const TokenProfile& j, const IdfTable& idf, double k1 = 2.0,
                 double b = 0.75);

// Evaluates every document pair and keeps edges with positive weight.
// Profiles must be non-empty; documents without usable text are expected
// to have been excluded upstream. Deterministic for any thread count.
CoupledGraph build_text_coupling(std::span<const TokenProfile> profiles, const IdfTable& idf, PeriodSpec period,
                                 std::string specialism, double k1 = 2.0, double b = 0.75, int threads = 1);

}  // namespace bibcouple
