#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bibcouple/types.hpp"

namespace bibcouple {

enum class NodeKind { article, author };
enum class WeightKind { cosine_overlap, bm25_text };

const char* node_kind_name(NodeKind k);
const char* weight_kind_name(WeightKind k);

struct WeightedEdge {
    std::uint32_t u = 0;  // u < v
    std::uint32_t v = 0;
    double weight = 0.0;  // strictly positive; zero-weight pairs are absent
};

// Weighted undirected graph over articles or authors. Nodes carry their
// external ids; edges are stored once per unordered pair, sorted by (u,v).
struct CoupledGraph {
    NodeKind node_kind = NodeKind::article;
    WeightKind weight_kind = WeightKind::cosine_overlap;
    std::vector<std::string> nodes;
    std::vector<WeightedEdge> edges;
    PeriodSpec period;
    std::string specialism;

    std::size_t node_count() const { return nodes.size(); }
    std::size_t edge_count() const { return edges.size(); }
    double max_weight() const;

    // Throws if an edge is out of range, self-looped, duplicated, unsorted
    // or non-positive.
    void validate() const;
};

// Edge list: one "u<TAB>v<TAB>weight" row per edge, weights with 9
// significant digits, sorted by (u, v).
std::string graph_edges_tsv(const CoupledGraph& g);

// Node manifest: "index<TAB>node-id" rows.
std::string graph_nodes_tsv(const CoupledGraph& g);

// Summary with provenance: node/edge counts and weight min/max/mean.
std::string graph_summary_json(const CoupledGraph& g);

// Rebuilds a graph from the two TSV exports.
CoupledGraph graph_from_tsv(const std::string& edges_tsv, const std::string& nodes_tsv, WeightKind kind);

std::string format_weight(double w);  // 9 significant digits

}  // namespace bibcouple
