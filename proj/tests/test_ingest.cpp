#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "bibcouple/errors.hpp"
#include "bibcouple/ingest.hpp"
#include "bibcouple/text_norm.hpp"

using namespace bibcouple;

namespace {

ParsedCorpus parse_text(const std::string& text, RecordFormat format = RecordFormat::jsonl) {
    std::istringstream in(text);
    ParseOptions opts;
    opts.format = format;
    return parse_records(in, opts);
}

const char* kRow =
    R"({"id":"r1","journal":"Past&Present","specialism":"social history","year":1975,"title":"A Title","abstract":"Some text.","authors":[{"surname":"Smith","given":"J"}],"refs":["Smith J, 1960, Old Work"]})";

}  // namespace

TEST_CASE("valid JSONL row round trips") {
    ParsedCorpus corpus = parse_text(std::string(kRow) + "\n");
    REQUIRE(corpus.records.size() == 1);
    CHECK(corpus.row_errors.empty());
    const auto& r = corpus.records[0];
    CHECK(r.id == "r1");
    CHECK(r.year == 1975);
    CHECK(r.specialism == "social history");
    CHECK(r.abstract.has_value());
    REQUIRE(r.authors.size() == 1);
    CHECK(r.authors[0].surname == "Smith");
    REQUIRE(r.raw_references.size() == 1);

    // emit(parse(x)) is stable: parsing the emission and emitting again is a
    // byte-identical fixed point.
    const std::string emitted = emit_records(corpus.records);
    ParsedCorpus again = parse_text(emitted);
    CHECK(again.records == corpus.records);
    CHECK(emit_records(again.records) == emitted);
}

TEST_CASE("row lacking year is a row error, remaining rows still parse") {
    const std::string text =
        R"({"id":"a","year":1990,"authors":[{"surname":"X"}]})"
        "\n"
        R"({"id":"b","authors":[{"surname":"Y"}]})"
        "\n"
        R"({"id":"c","year":2001,"authors":[{"surname":"Z"}]})"
        "\n";
    ParsedCorpus corpus = parse_text(text);
    REQUIRE(corpus.records.size() == 2);
    CHECK(corpus.records[0].id == "a");
    CHECK(corpus.records[1].id == "c");
    REQUIRE(corpus.row_errors.size() == 1);
    CHECK(corpus.row_errors[0].line == 2);
}

TEST_CASE("duplicate record id is fatal") {
    const std::string text =
        R"({"id":"dup","year":1990,"authors":[{"surname":"X"}]})"
        "\n"
        R"({"id":"dup","year":1991,"authors":[{"surname":"Y"}]})"
        "\n";
    CHECK_THROWS_AS(parse_text(text), StageError);
}

TEST_CASE("year outside sane range and invalid utf8 are row errors") {
    std::string bad_utf8 = R"({"id":"u","year":1990,"authors":[{"surname":")";
    bad_utf8 += static_cast<char>(0xC3);  // truncated sequence
    bad_utf8 += R"("}]})";
    const std::string text =
        R"({"id":"y","year":1215,"authors":[{"surname":"X"}]})"
        "\n" +
        bad_utf8 +
        "\n"
        R"({"id":"ok","year":1990,"authors":[{"surname":"Z"}]})"
        "\n";
    std::istringstream in(text);
    ParseOptions opts;
    opts.min_year = 1400;
    ParsedCorpus corpus = parse_records(in, opts);
    REQUIRE(corpus.records.size() == 1);  // only "ok" survives
    CHECK(corpus.records[0].id == "ok");
    CHECK(corpus.row_errors.size() == 2);  // 1215 below the sane range; truncated UTF-8
}

TEST_CASE("tabular format parses the same fields") {
    const std::string text =
        "id\tjournal\tspecialism\tyear\ttitle\tabstract\tauthors\trefs\n"
        "t1\tIsis\thistory of science\t1988\tOn Things\t\tSmith, J; Doe, Jane\tSmith J, 1960, Old Work|Doe J, 1970, Other Work\n";
    ParsedCorpus corpus = parse_text(text, RecordFormat::tabular);
    REQUIRE(corpus.records.size() == 1);
    const auto& r = corpus.records[0];
    CHECK(r.year == 1988);
    CHECK_FALSE(r.abstract.has_value());
    REQUIRE(r.authors.size() == 2);
    CHECK(r.authors[1].given == "Jane");
    REQUIRE(r.raw_references.size() == 2);
    CHECK(r.raw_references[1] == "Doe J, 1970, Other Work");
}

TEST_CASE("reference string split and trimming") {
    ParsedReference p = parse_reference_string("Smith J, 1990, Hist J, V33, P123");
    REQUIRE(p.outcome == RefParseOutcome::parsed);
    CHECK(p.ref.author_field == "Smith J");
    CHECK(p.ref.year == 1990);
    CHECK(p.ref.title_field == "Hist J");
    CHECK_FALSE(p.multi_year);

    // trailing volume/page/number/issue tokens in any case, bare digit runs too
    p = parse_reference_string("Doe A, 1955, Some Title, v12, ISS4, 330");
    REQUIRE(p.outcome == RefParseOutcome::parsed);
    CHECK(p.ref.title_field == "Some Title");

    // interior tokens survive; only trailing ones are trimmed
    p = parse_reference_string("Doe A, 1955, Some Title, V2, Revised Edition");
    REQUIRE(p.outcome == RefParseOutcome::parsed);
    CHECK(p.ref.title_field == "Some Title, V2, Revised Edition");
}

TEST_CASE("anonymous and yearless references are discarded") {
    CHECK(parse_reference_string("[Anonymous], 1990, Some Title").outcome == RefParseOutcome::discarded_anonymous);
    CHECK(parse_reference_string("ANONYMOUS, 1990, Some Title").outcome == RefParseOutcome::discarded_anonymous);
    CHECK(parse_reference_string(", 1990, Some Title").outcome == RefParseOutcome::discarded_anonymous);
    CHECK(parse_reference_string("Smith J, Some Title").outcome == RefParseOutcome::discarded_yearless);
    CHECK(parse_reference_string("Smith J, 12, Some Title").outcome == RefParseOutcome::discarded_yearless);
    CHECK(parse_reference_string("Smith J, 3050, Some Title").outcome == RefParseOutcome::discarded_yearless);
    CHECK(parse_reference_string("   ").outcome == RefParseOutcome::malformed);
}

TEST_CASE("multi-year references take the first year and are flagged") {
    ParsedReference p = parse_reference_string("Smith J, 1990-1992, Some Title");
    REQUIRE(p.outcome == RefParseOutcome::parsed);
    CHECK(p.ref.year == 1990);
    CHECK(p.multi_year);
}

TEST_CASE("discard accounting adds up on arbitrary inputs") {
    std::mt19937_64 rng(4711);
    const std::vector<std::string> pieces = {
        "Smith J", "[Anonymous]", "", "1990", "1990-1991", "Title Words", "V33", "P12", "  ", "Doe B", "201",
    };
    std::vector<PublicationRecord> records;
    PublicationRecord r;
    r.id = "fuzz";
    r.year = 2000;
    r.authors.push_back({"X", ""});
    for (int i = 0; i < 2000; ++i) {
        std::string ref;
        const auto n = 1 + rng() % 4;
        for (std::size_t k = 0; k < n; ++k) {
            if (k > 0) ref += ", ";
            ref += pieces[rng() % pieces.size()];
        }
        r.raw_references.push_back(ref);
    }
    records.push_back(r);
    ParsedReferences parsed = parse_all_references(records);
    CHECK(parsed.stats.total == 2000);
    CHECK(parsed.stats.accounted());
    CHECK(parsed.refs.size() == parsed.stats.parsed);
}

TEST_CASE("period slicing partitions covered records") {
    std::vector<PublicationRecord> records;
    for (int year : {1969, 1970, 1975, 2016, 2020}) {
        PublicationRecord r;
        r.id = "y" + std::to_string(year) + "-" + std::to_string(records.size());
        r.year = year;
        r.authors.push_back({"A", ""});
        records.push_back(r);
    }
    CorpusSlices slices = slice_periods(records, citation_default_periods());
    CHECK(slices.periods.size() == 6);
    CHECK(slices.slices[0].size() == 1);  // 1969 goes to the first period
    CHECK(slices.slices[1].size() == 2);  // 1970 and 1975
    CHECK(slices.slices[5].size() == 1);  // 2016
    CHECK(slices.outside == 1);           // 2020 is covered by no period

    std::size_t covered = 0;
    for (const auto& s : slices.slices) covered += s.size();
    CHECK(covered + slices.outside == records.size());
}

TEST_CASE("overlapping periods are a fatal configuration error") {
    std::vector<PublicationRecord> records;
    std::vector<PeriodSpec> periods = {{"a", 1970, 1980}, {"b", 1980, 1990}};
    CHECK_THROWS_AS(slice_periods(records, periods), StageError);
}

TEST_CASE("default period sets match the configured analysis windows") {
    auto text = text_default_periods();
    REQUIRE(text.size() == 3);
    CHECK(text[0].label == "1999-2004");
    CHECK(text[2].end_year == 2016);

    // JSON round trip
    auto parsed = periods_from_json(periods_to_json(text));
    CHECK(parsed == text);
}

TEST_CASE("title normalization for matching") {
    CHECK(normalize_for_matching("The Decline, of FEUDALISM!") == "the decline of feudalism");
    CHECK(normalize_for_matching("  a--b  ") == "a b");
    CHECK(normalize_for_matching("caf\xC3\xA9 society") == "caf\xC3\xA9 society");  // diacritics kept
    CHECK(normalize_for_matching(normalize_for_matching("X,,Y")) == normalize_for_matching("X,,Y"));
}
