#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bibcouple/ingest.hpp"
#include "bibcouple/resolve.hpp"

namespace bibcouple {

enum class NetworkChoice { article_cosine, author_cosine, text_bm25 };

NetworkChoice network_choice_from_string(const std::string& s);
const char* network_choice_name(NetworkChoice c);

struct PipelineConfig {
    std::string input_path;
    RecordFormat format = RecordFormat::jsonl;
    std::vector<PeriodSpec> periods;                  // defaults to the citation set
    MatchRuleConfig match;
    std::vector<NetworkChoice> networks;              // defaults to all three
    std::optional<std::vector<double>> grid_override;
    std::string out_dir;
    int threads = 0;                                  // 0 = hardware
    AuthorScope author_scope = AuthorScope::per_specialism;
    bool text_keep_isolates = false;  // keep abstract-less articles as isolates
    int price_window_years = 10;
};

struct PipelineResult {
    std::vector<std::string> files_written;  // relative to out_dir
    std::string manifest_hash;
};

// Runs ingest -> resolution -> slicing -> networks -> percolation ->
// indicators and writes every stage export plus a manifest under out_dir.
// Identical inputs and config give a byte-identical bundle for any thread
// count. On failure all files written by this run are removed and a
// StageError with the failing stage escapes.
PipelineResult run_pipeline(const PipelineConfig& config);

// FNV-1a 64-bit, hex encoded; used for config and file checksums.
std::string fnv1a64_hex(std::string_view bytes);

// Filename-safe form of a specialism or period label.
std::string sanitize_label(const std::string& label);

}  // namespace bibcouple
