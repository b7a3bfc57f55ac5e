#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "bibcouple/types.hpp"

namespace bibcouple {

enum class RecordFormat { jsonl, tabular };

RecordFormat record_format_from_string(const std::string& s);

struct RowError {
    std::uint64_t line = 0;
    std::string message;
};

struct ParseOptions {
    RecordFormat format = RecordFormat::jsonl;
    int min_year = 1400;
    int max_year = 2100;
};

struct ParsedCorpus {
    std::vector<PublicationRecord> records;
    std::vector<RowError> row_errors;  // malformed rows, reported not dropped silently
};

// Parses the whole stream. Malformed rows become row_errors; a duplicate
// record id or an unreadable stream is fatal (StageError, ingest stage).
ParsedCorpus parse_records(std::istream& in, const ParseOptions& opts);
ParsedCorpus parse_records_file(const std::string& path, const ParseOptions& opts);

// Canonical JSONL emission. parse(emit(parse(x))) == parse(x) and emit is
// byte-stable, which gives the round-trip property for well-formed input.
std::string emit_records(const std::vector<PublicationRecord>& records);

// ---- cited-reference strings ----------------------------------------------

enum class RefParseOutcome {
    parsed,
    discarded_anonymous,  // empty or "anonymous" author field
    discarded_yearless,   // no publication year token
    malformed,            // empty/whitespace-only string
};

struct ParsedReference {
    RefParseOutcome outcome = RefParseOutcome::malformed;
    RawReference ref;         // valid only when outcome == parsed
    bool multi_year = false;  // year token was a range; first year was taken
};

// Splits one raw reference string into author / year / remainder, trims
// trailing volume/page/number/issue tokens from the remainder, and discards
// anonymous or year-less references.
ParsedReference parse_reference_string(std::string_view raw, int min_year = 1400, int max_year = 2100);

struct RefParseStats {
    std::uint64_t total = 0;
    std::uint64_t parsed = 0;
    std::uint64_t discarded_anonymous = 0;
    std::uint64_t discarded_yearless = 0;
    std::uint64_t malformed = 0;
    std::uint64_t multi_year_flagged = 0;  // subset of parsed

    bool accounted() const { return parsed + discarded_anonymous + discarded_yearless + malformed == total; }
};

struct ParsedReferences {
    std::vector<RawReference> refs;
    RefParseStats stats;
};

// Parses every raw reference of every record, tagging each with its source
// record id. Order follows record order, then reference order within a record.
ParsedReferences parse_all_references(const std::vector<PublicationRecord>& records,
                                      int min_year = 1400, int max_year = 2100);

// ---- analysis periods ------------------------------------------------------

struct CorpusSlices {
    std::vector<PeriodSpec> periods;               // in configuration order
    std::vector<std::vector<std::size_t>> slices;  // record indices per period
    std::uint64_t outside = 0;                     // records covered by no period
};

// Assigns each record to the period containing its year. Overlapping
// periods are a fatal configuration error.
CorpusSlices slice_periods(const std::vector<PublicationRecord>& records,
                           const std::vector<PeriodSpec>& periods);

// The two period sets used throughout: six citation periods (up to 1969,
// then decades, ending 2010-2016) and three text periods (1999-2004,
// 2005-2010, 2011-2016).
std::vector<PeriodSpec> citation_default_periods();
std::vector<PeriodSpec> text_default_periods();

// Loads a period set from a JSON array of {label, start, end}.
std::vector<PeriodSpec> periods_from_json(const std::string& json_text);
std::string periods_to_json(const std::vector<PeriodSpec>& periods);

}  // namespace bibcouple
