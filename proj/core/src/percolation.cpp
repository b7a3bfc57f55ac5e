#include "bibcouple/percolation.hpp"

#include <algorithm>
#include <cmath>

#include "bibcouple/errors.hpp"
#include "bibcouple/union_find.hpp"

namespace bibcouple {

namespace {

void check_thresholds(std::span<const double> thresholds) {
    if (thresholds.empty()) throw config_error("threshold grid is empty");
    for (std::size_t i = 1; i < thresholds.size(); ++i)
        if (!(thresholds[i] > thresholds[i - 1]))
            throw config_error("threshold grid must be strictly ascending");
}

}  // namespace

ConnectivityProfile connectivity_profile(const CoupledGraph& graph, std::span<const double> thresholds) {
    check_thresholds(thresholds);
    const std::uint64_t n = graph.nodes.size();
    if (n == 0) throw StageError(Stage::percolation, "graph has no nodes");

    // Edges sorted by weight descending; the sweep walks thresholds from
    // the top down, adding the edges that survive each threshold.
    std::vector<const WeightedEdge*> by_weight;
    by_weight.reserve(graph.edges.size());
    for (const auto& e : graph.edges) by_weight.push_back(&e);
    std::sort(by_weight.begin(), by_weight.end(),
              [](const WeightedEdge* a, const WeightedEdge* b) { return a->weight > b->weight; });

    ConnectivityProfile out;
    out.node_count = n;
    const std::size_t k = thresholds.size();
    out.thresholds.assign(thresholds.begin(), thresholds.end());
    out.components.resize(k);
    out.c_values.resize(k);
    out.giant_fractions.resize(k);
    out.edges_retained.resize(k);

    DisjointSets sets(n);
    std::size_t next_edge = 0;
    for (std::size_t idx = k; idx-- > 0;) {
        const double t = thresholds[idx];
        while (next_edge < by_weight.size() && by_weight[next_edge]->weight >= t) {
            sets.unite(by_weight[next_edge]->u, by_weight[next_edge]->v);
            ++next_edge;
        }
        out.components[idx] = sets.component_count();
        out.c_values[idx] = static_cast<double>(sets.component_count()) / static_cast<double>(n);
        out.giant_fractions[idx] = static_cast<double>(sets.largest_component()) / static_cast<double>(n);
        out.edges_retained[idx] = next_edge;
    }
    return out;
}

ComponentSummary components_at(const CoupledGraph& graph, double threshold) {
    ComponentSummary out;
    out.threshold = threshold;
    const std::size_t n = graph.nodes.size();
    if (n == 0) return out;

    DisjointSets sets(n);
    for (const auto& e : graph.edges)
        if (e.weight >= threshold) sets.unite(e.u, e.v);

    std::vector<std::uint64_t> sizes;
    std::vector<char> seen(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t root = sets.find(i);
        if (!seen[root]) {
            seen[root] = 1;
            sizes.push_back(sets.size_of(root));
        }
    }
    std::sort(sizes.begin(), sizes.end(), std::greater<>());
    out.component_sizes = std::move(sizes);
    for (auto s : out.component_sizes)
        if (s == 1) ++out.isolate_count;
    return out;
}

double interpolated_quantile(std::span<const double> sorted_values, double q) {
    if (sorted_values.empty()) return 0.0;
    if (sorted_values.size() == 1) return sorted_values[0];
    const double pos = q * static_cast<double>(sorted_values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = static_cast<std::size_t>(std::ceil(pos));
    if (lo == hi || sorted_values[lo] == sorted_values[hi]) return sorted_values[lo];
    const double frac = pos - static_cast<double>(lo);
    return sorted_values[lo] * (1.0 - frac) + sorted_values[hi] * frac;
}

std::vector<double> default_threshold_grid(const CoupledGraph& graph) {
    if (graph.edges.empty()) return {0.0};
    std::vector<double> grid;
    grid.reserve(101);
    if (graph.weight_kind == WeightKind::cosine_overlap) {
        for (int i = 0; i <= 100; ++i) grid.push_back(static_cast<double>(i) / 100.0);
        return grid;
    }
    std::vector<double> weights;
    weights.reserve(graph.edges.size());
    for (const auto& e : graph.edges) weights.push_back(e.weight);
    std::sort(weights.begin(), weights.end());
    for (int i = 0; i <= 100; ++i)
        grid.push_back(interpolated_quantile(weights, static_cast<double>(i) / 100.0));
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

std::string profile_csv(const ConnectivityProfile& p) {
    std::string out = "threshold,components,c,giant_fraction,nodes,edges_retained\n";
    for (std::size_t i = 0; i < p.size(); ++i) {
        out += format_weight(p.thresholds[i]);
        out += ',';
        out += std::to_string(p.components[i]);
        out += ',';
        out += format_weight(p.c_values[i]);
        out += ',';
        out += format_weight(p.giant_fractions[i]);
        out += ',';
        out += std::to_string(p.node_count);
        out += ',';
        out += std::to_string(p.edges_retained[i]);
        out += '\n';
    }
    return out;
}

AggregatedCurves aggregate_profiles(std::span<const ConnectivityProfile> profiles) {
    AggregatedCurves out;
    if (profiles.empty()) return out;
    out.thresholds = profiles[0].thresholds;
    out.series_count = profiles.size();
    for (const auto& p : profiles)
        if (p.thresholds != out.thresholds)
            throw config_error("profiles aggregated over mismatched threshold grids");

    const std::size_t k = out.thresholds.size();
    out.mean_c.resize(k);
    out.median_c.resize(k);
    std::vector<double> column(profiles.size());
    for (std::size_t i = 0; i < k; ++i) {
        double sum = 0.0;
        for (std::size_t s = 0; s < profiles.size(); ++s) {
            column[s] = profiles[s].c_values[i];
            sum += column[s];
        }
        out.mean_c[i] = sum / static_cast<double>(profiles.size());
        std::sort(column.begin(), column.end());
        const std::size_t m = column.size();
        out.median_c[i] = m % 2 == 1 ? column[m / 2] : (column[m / 2 - 1] + column[m / 2]) / 2.0;
    }
    return out;
}

}  // namespace bibcouple
