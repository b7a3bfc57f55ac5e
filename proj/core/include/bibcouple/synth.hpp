#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bibcouple/types.hpp"

namespace bibcouple {

// Synthetic corpus with controllable reference sharing per period: every
// article draws a fixed fraction of its references from a per-period
// shared pool and the rest from a private pool, so the expected reference
// overlap between articles (and with it the coupling-network connectivity)
// is a direct function of the configuration.
struct SynthConfig {
    std::uint64_t seed = 1;
    std::string specialism = "synthetic";
    std::string journal = "synthetic-journal";
    std::vector<PeriodSpec> periods;
    std::vector<std::uint32_t> articles_per_period;   // one per period
    std::vector<std::uint32_t> refs_per_article;      // one per period
    std::vector<std::uint32_t> shared_pool_size;      // one per period
    std::vector<double> shared_draw_fraction;         // one per period, in [0,1]
    double coauthor_probability = 0.0;
    std::uint32_t vocabulary_size = 1000;
    std::uint32_t abstract_length = 100;

    void validate() const;  // throws config errors
};

// Parses a config from JSON. Per-period fields accept either a scalar
// (broadcast to every period) or an array with one entry per period.
SynthConfig synth_config_from_json(const std::string& json_text);

// Deterministic given the seed: two calls with an identical config produce
// identical records, and emit_records() of them identical bytes.
std::vector<PublicationRecord> generate_corpus(const SynthConfig& config);

// The fragmentation scenario used by the trend tests: four decade periods,
// 300 articles each, reference lists growing 20 -> 50 while the shared
// draw fraction falls 0.8 -> 0.2.
SynthConfig fragmentation_config(std::uint64_t seed);

}  // namespace bibcouple
