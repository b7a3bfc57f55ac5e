#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bibcouple/graph.hpp"
#include "bibcouple/resolve.hpp"
#include "bibcouple/types.hpp"

namespace bibcouple {

// Cosine reference overlap: |a n b| / sqrt(|a| * |b|) over unique
// references. Zero when either set is empty. Inputs sorted and unique.
double cosine_coupling_weight(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b);

// Convenience overload over sets of opaque reference ids.
double cosine_coupling_weight(const std::vector<std::string>& a, const std::vector<std::string>& b);

// Builds the weighted overlap graph for any node kind: one node per entry
// of node_ids, an edge per pair with at least one shared reference. Uses an
// inverted index over references, so only pairs that can have an edge are
// touched. ref_sets entries must be sorted and unique.
CoupledGraph build_overlap_graph(std::vector<std::string> node_ids,
                                 const std::vector<std::vector<std::uint32_t>>& ref_sets, NodeKind kind,
                                 PeriodSpec period, std::string specialism);

// Article bibliographic coupling over one corpus slice. Every article in
// the slice becomes a node (isolates included).
CoupledGraph build_article_coupling(const ResolvedCorpus& corpus, std::span<const std::size_t> slice,
                                    const PeriodSpec& period, const std::string& specialism);

// Author bibliographic coupling: one node per author identity with at
// least one article in the slice; an author's reference set is the union
// of resolved references over their slice articles. Nodes sorted by id.
CoupledGraph build_author_coupling(const ResolvedCorpus& corpus, std::span<const std::size_t> slice,
                                   const PeriodSpec& period, const std::string& specialism);

}  // namespace bibcouple
