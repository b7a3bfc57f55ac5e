#include "bibcouple/graph.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "bibcouple/errors.hpp"

namespace bibcouple {

const char* node_kind_name(NodeKind k) { return k == NodeKind::article ? "article" : "author"; }

const char* weight_kind_name(WeightKind k) {
    return k == WeightKind::cosine_overlap ? "cosine-overlap" : "bm25-text";
}

double CoupledGraph::max_weight() const {
    double m = 0.0;
    for (const auto& e : edges) m = std::max(m, e.weight);
    return m;
}

void CoupledGraph::validate() const {
    const auto n = static_cast<std::uint32_t>(nodes.size());
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const auto& e = edges[i];
        if (e.u >= n || e.v >= n) throw StageError(Stage::network, "edge endpoint out of range");
        if (e.u == e.v) throw StageError(Stage::network, "self-loop");
        if (e.u > e.v) throw StageError(Stage::network, "edge not stored with u < v");
        if (!(e.weight > 0.0)) throw StageError(Stage::network, "non-positive edge weight");
        if (i > 0) {
            const auto& p = edges[i - 1];
            if (p.u > e.u || (p.u == e.u && p.v >= e.v))
                throw StageError(Stage::network, "edges not sorted or duplicated");
        }
    }
}

std::string format_weight(double w) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", w);
    return buf;
}

std::string graph_edges_tsv(const CoupledGraph& g) {
    std::string out;
    for (const auto& e : g.edges) {
        out += std::to_string(e.u);
        out += '\t';
        out += std::to_string(e.v);
        out += '\t';
        out += format_weight(e.weight);
        out += '\n';
    }
    return out;
}

std::string graph_nodes_tsv(const CoupledGraph& g) {
    std::string out;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        out += std::to_string(i);
        out += '\t';
        out += g.nodes[i];
        out += '\n';
    }
    return out;
}

std::string graph_summary_json(const CoupledGraph& g) {
    double wmin = 0.0, wmax = 0.0, mean = 0.0;
    if (!g.edges.empty()) {
        wmin = g.edges.front().weight;
        wmax = wmin;
        double sum = 0.0;
        for (const auto& e : g.edges) {
            wmin = std::min(wmin, e.weight);
            wmax = std::max(wmax, e.weight);
            sum += e.weight;
        }
        mean = sum / static_cast<double>(g.edges.size());
    }
    nlohmann::ordered_json j;
    j["node_kind"] = node_kind_name(g.node_kind);
    j["weight_kind"] = weight_kind_name(g.weight_kind);
    j["specialism"] = g.specialism;
    j["period"] = g.period.label;
    j["nodes"] = g.nodes.size();
    j["edges"] = g.edges.size();
    j["weight_min"] = wmin;
    j["weight_max"] = wmax;
    j["weight_mean"] = mean;
    return j.dump(2);
}

CoupledGraph graph_from_tsv(const std::string& edges_tsv, const std::string& nodes_tsv, WeightKind kind) {
    CoupledGraph g;
    g.weight_kind = kind;
    {
        std::istringstream in(nodes_tsv);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            auto tab = line.find('\t');
            if (tab == std::string::npos) throw StageError(Stage::network, "bad node manifest row: " + line);
            g.nodes.push_back(line.substr(tab + 1));
        }
    }
    {
        std::istringstream in(edges_tsv);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            WeightedEdge e;
            char* end = nullptr;
            e.u = static_cast<std::uint32_t>(std::strtoul(line.c_str(), &end, 10));
            if (!end || *end != '\t') throw StageError(Stage::network, "bad edge row: " + line);
            e.v = static_cast<std::uint32_t>(std::strtoul(end + 1, &end, 10));
            if (!end || *end != '\t') throw StageError(Stage::network, "bad edge row: " + line);
            e.weight = std::strtod(end + 1, nullptr);
            g.edges.push_back(e);
        }
    }
    g.validate();
    return g;
}

}  // namespace bibcouple
