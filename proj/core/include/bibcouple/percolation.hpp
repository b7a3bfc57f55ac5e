#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bibcouple/graph.hpp"

namespace bibcouple {

// Connectivity decay of a weighted graph under rising edge-weight
// thresholds: at threshold t only edges with weight >= t remain (ties
// survive), the node set is kept whole, and c(t) = components / nodes.
struct ConnectivityProfile {
    std::vector<double> thresholds;        // ascending
    std::vector<std::uint64_t> components;  // C^t, non-decreasing
    std::vector<double> c_values;          // C^t / N
    std::vector<double> giant_fractions;   // largest component / N, non-increasing
    std::vector<std::uint64_t> edges_retained;
    std::uint64_t node_count = 0;

    std::size_t size() const { return thresholds.size(); }
};

// Component sizes at one threshold.
struct ComponentSummary {
    double threshold = 0.0;
    std::vector<std::uint64_t> component_sizes;  // descending; sums to N
    std::uint64_t isolate_count = 0;             // singleton components
};

// Computes the whole sweep with one edge sort plus incremental union-find:
// edges are added from the largest threshold downward, so each threshold
// costs only the edges that newly enter. Thresholds must be strictly
// ascending; an empty or node-less graph and unsorted grids are errors.
ConnectivityProfile connectivity_profile(const CoupledGraph& graph, std::span<const double> thresholds);

ComponentSummary components_at(const CoupledGraph& graph, double threshold);

// Grid the sweep runs on when none is supplied: the fixed 0.00..1.00 grid
// in steps of 0.01 for cosine graphs; the 101 empirical percentiles
// (linear interpolation) of the positive edge weights for bm25 graphs,
// deduplicated. An edgeless graph degenerates to {0}.
std::vector<double> default_threshold_grid(const CoupledGraph& graph);

// Percentile with linear interpolation between order statistics
// (q in [0,1]); values must be sorted ascending.
double interpolated_quantile(std::span<const double> sorted_values, double q);

// CSV export: threshold, components, c, giant_fraction, nodes, edges_retained.
std::string profile_csv(const ConnectivityProfile& p);

// Pointwise mean and median of several profiles computed on an identical
// grid (mismatched grids are a configuration error).
struct AggregatedCurves {
    std::vector<double> thresholds;
    std::vector<double> mean_c;
    std::vector<double> median_c;
    std::size_t series_count = 0;
};

AggregatedCurves aggregate_profiles(std::span<const ConnectivityProfile> profiles);

}  // namespace bibcouple
