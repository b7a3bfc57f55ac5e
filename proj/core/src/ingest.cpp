#include "bibcouple/ingest.hpp"

#include <fstream>
#include <istream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "bibcouple/errors.hpp"
#include "bibcouple/text_norm.hpp"

namespace bibcouple {

namespace {

using nlohmann::ordered_json;

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            parts.push_back(s.substr(start));
            break;
        }
        parts.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
    return parts;
}

// "V33", "P120", "N4", "ISS2" or a bare digit run, case-insensitive.
bool is_volume_page_token(std::string_view seg) {
    if (seg.empty()) return false;
    if (all_digits(seg)) return true;
    auto lower = to_lower_ascii(seg);
    std::string_view v(lower);
    for (std::string_view tag : {std::string_view("iss"), std::string_view("v"), std::string_view("p"),
                                 std::string_view("n")}) {
        if (v.size() > tag.size() && v.substr(0, tag.size()) == tag && all_digits(v.substr(tag.size())))
            return true;
    }
    return false;
}

bool is_anonymous_author(std::string_view author) {
    std::string stripped;
    stripped.reserve(author.size());
    for (char c : author) {
        if (c == '[' || c == ']' || c == '(' || c == ')') continue;
        stripped.push_back(c);
    }
    auto t = trim(stripped);
    if (t.empty()) return true;
    return to_lower_ascii(t) == "anonymous";
}

// A year segment is a 4-digit number, optionally followed by "-<4 digits>"
// (a multi-year range; the first year is used).
struct YearMatch {
    bool found = false;
    int year = 0;
    bool multi = false;
};

YearMatch match_year_segment(std::string_view seg, int min_year, int max_year) {
    YearMatch out;
    if (seg.size() < 4) return out;
    std::string_view head = seg.substr(0, 4);
    if (!all_digits(head)) return out;
    int y = (head[0] - '0') * 1000 + (head[1] - '0') * 100 + (head[2] - '0') * 10 + (head[3] - '0');
    if (y < min_year || y > max_year) return out;
    std::string_view rest = trim(seg.substr(4));
    if (rest.empty()) {
        out.found = true;
        out.year = y;
        return out;
    }
    if (rest.front() == '-') {
        std::string_view second = trim(rest.substr(1));
        if (all_digits(second) && second.size() == 4) {
            out.found = true;
            out.year = y;
            out.multi = true;
            return out;
        }
    }
    return out;
}

struct RowOutcome {
    bool ok = false;
    PublicationRecord record;
    std::string error;
};

RowOutcome parse_jsonl_row(const std::string& line_text, const ParseOptions& opts) {
    RowOutcome out;
    ordered_json j = ordered_json::parse(line_text, nullptr, false);
    if (j.is_discarded()) {
        out.error = "invalid JSON";
        return out;
    }
    if (!j.is_object()) {
        out.error = "row is not a JSON object";
        return out;
    }
    PublicationRecord r;
    if (!j.contains("id") || !j["id"].is_string() || j["id"].get<std::string>().empty()) {
        out.error = "missing record id";
        return out;
    }
    r.id = j["id"].get<std::string>();
    if (!j.contains("year") || !j["year"].is_number_integer()) {
        out.error = "missing year";
        return out;
    }
    r.year = j["year"].get<int>();
    if (r.year < opts.min_year || r.year > opts.max_year) {
        out.error = "year " + std::to_string(r.year) + " outside sane range [" + std::to_string(opts.min_year) +
                    "," + std::to_string(opts.max_year) + "]";
        return out;
    }
    if (j.contains("journal") && j["journal"].is_string()) r.journal = j["journal"].get<std::string>();
    if (j.contains("specialism") && j["specialism"].is_string()) r.specialism = j["specialism"].get<std::string>();
    if (j.contains("title") && j["title"].is_string()) r.title = j["title"].get<std::string>();
    if (j.contains("abstract") && j["abstract"].is_string()) r.abstract = j["abstract"].get<std::string>();
    if (!j.contains("authors") || !j["authors"].is_array() || j["authors"].empty()) {
        out.error = "missing authors";
        return out;
    }
    for (const auto& a : j["authors"]) {
        if (!a.is_object() || !a.contains("surname") || !a["surname"].is_string()) {
            out.error = "author entry lacks surname";
            return out;
        }
        AuthorName name;
        name.surname = a["surname"].get<std::string>();
        if (a.contains("given") && a["given"].is_string()) name.given = a["given"].get<std::string>();
        if (trim(name.surname).empty()) {
            out.error = "author surname empty";
            return out;
        }
        r.authors.push_back(std::move(name));
    }
    if (j.contains("refs")) {
        if (!j["refs"].is_array()) {
            out.error = "refs is not an array";
            return out;
        }
        for (const auto& s : j["refs"]) {
            if (!s.is_string()) {
                out.error = "refs entry is not a string";
                return out;
            }
            r.raw_references.push_back(s.get<std::string>());
        }
    }
    out.ok = true;
    out.record = std::move(r);
    return out;
}

constexpr const char* kTabularHeader = "id\tjournal\tspecialism\tyear\ttitle\tabstract\tauthors\trefs";

RowOutcome parse_tabular_row(const std::string& line_text, const ParseOptions& opts) {
    RowOutcome out;
    auto cols = split(line_text, '\t');
    if (cols.size() != 8) {
        out.error = "expected 8 tab-separated columns, got " + std::to_string(cols.size());
        return out;
    }
    PublicationRecord r;
    r.id = std::string(trim(cols[0]));
    if (r.id.empty()) {
        out.error = "missing record id";
        return out;
    }
    r.journal = std::string(trim(cols[1]));
    r.specialism = std::string(trim(cols[2]));
    auto year_text = trim(cols[3]);
    if (!all_digits(year_text)) {
        out.error = "missing year";
        return out;
    }
    r.year = std::stoi(std::string(year_text));
    if (r.year < opts.min_year || r.year > opts.max_year) {
        out.error = "year " + std::to_string(r.year) + " outside sane range";
        return out;
    }
    r.title = std::string(trim(cols[4]));
    auto abstract = trim(cols[5]);
    if (!abstract.empty()) r.abstract = std::string(abstract);
    auto authors_text = trim(cols[6]);
    if (authors_text.empty()) {
        out.error = "missing authors";
        return out;
    }
    for (auto part : split(authors_text, ';')) {
        part = trim(part);
        if (part.empty()) continue;
        AuthorName a;
        std::size_t comma = part.find(',');
        if (comma == std::string_view::npos) {
            a.surname = std::string(trim(part));
        } else {
            a.surname = std::string(trim(part.substr(0, comma)));
            a.given = std::string(trim(part.substr(comma + 1)));
        }
        if (a.surname.empty()) {
            out.error = "author surname empty";
            return out;
        }
        r.authors.push_back(std::move(a));
    }
    if (r.authors.empty()) {
        out.error = "missing authors";
        return out;
    }
    auto refs_text = trim(cols[7]);
    if (!refs_text.empty()) {
        for (auto part : split(refs_text, '|')) {
            part = trim(part);
            if (!part.empty()) r.raw_references.emplace_back(part);
        }
    }
    out.ok = true;
    out.record = std::move(r);
    return out;
}

}  // namespace

RecordFormat record_format_from_string(const std::string& s) {
    if (s == "jsonl") return RecordFormat::jsonl;
    if (s == "tabular") return RecordFormat::tabular;
    throw config_error("unknown record format '" + s + "' (expected jsonl or tabular)");
}

ParsedCorpus parse_records(std::istream& in, const ParseOptions& opts) {
    if (!in) throw ingest_error("input stream is not readable");
    ParsedCorpus out;
    std::unordered_set<std::string> seen_ids;
    std::string line;
    std::uint64_t line_no = 0;
    bool header_checked = opts.format != RecordFormat::tabular;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        if (!header_checked) {
            header_checked = true;
            if (line != kTabularHeader)
                throw ingest_error("tabular input must start with the header line '" +
                                   std::string(kTabularHeader) + "'");
            continue;
        }
        if (!is_valid_utf8(line)) {
            out.row_errors.push_back({line_no, "invalid UTF-8"});
            continue;
        }
        RowOutcome row = opts.format == RecordFormat::jsonl ? parse_jsonl_row(line, opts)
                                                            : parse_tabular_row(line, opts);
        if (!row.ok) {
            out.row_errors.push_back({line_no, row.error});
            continue;
        }
        if (!seen_ids.insert(row.record.id).second)
            throw ingest_error("duplicate record id '" + row.record.id + "' at line " + std::to_string(line_no));
        out.records.push_back(std::move(row.record));
    }
    if (in.bad()) throw ingest_error("read failure");
    return out;
}

ParsedCorpus parse_records_file(const std::string& path, const ParseOptions& opts) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ingest_error("cannot open input file '" + path + "'");
    return parse_records(in, opts);
}

std::string emit_records(const std::vector<PublicationRecord>& records) {
    std::string out;
    for (const auto& r : records) {
        ordered_json j;
        j["id"] = r.id;
        j["journal"] = r.journal;
        j["specialism"] = r.specialism;
        j["year"] = r.year;
        j["title"] = r.title;
        if (r.abstract) j["abstract"] = *r.abstract;
        ordered_json authors = ordered_json::array();
        for (const auto& a : r.authors) authors.push_back({{"surname", a.surname}, {"given", a.given}});
        j["authors"] = std::move(authors);
        j["refs"] = r.raw_references;
        out += j.dump();
        out += '\n';
    }
    return out;
}

ParsedReference parse_reference_string(std::string_view raw, int min_year, int max_year) {
    ParsedReference out;
    auto whole = trim(raw);
    if (whole.empty()) {
        out.outcome = RefParseOutcome::malformed;
        return out;
    }

    auto segments = split(whole, ',');
    std::string_view author = trim(segments[0]);
    if (is_anonymous_author(author)) {
        out.outcome = RefParseOutcome::discarded_anonymous;
        return out;
    }

    std::size_t year_index = 0;
    YearMatch year;
    for (std::size_t i = 1; i < segments.size(); ++i) {
        year = match_year_segment(trim(segments[i]), min_year, max_year);
        if (year.found) {
            year_index = i;
            break;
        }
    }
    if (!year.found) {
        out.outcome = RefParseOutcome::discarded_yearless;
        return out;
    }

    // Remainder minus trailing page/volume/number/issue tokens.
    std::vector<std::string_view> rest;
    for (std::size_t i = year_index + 1; i < segments.size(); ++i) rest.push_back(trim(segments[i]));
    while (!rest.empty() && is_volume_page_token(rest.back())) rest.pop_back();
    std::string title;
    for (std::size_t i = 0; i < rest.size(); ++i) {
        if (i > 0) title += ", ";
        title += std::string(rest[i]);
    }

    out.outcome = RefParseOutcome::parsed;
    out.multi_year = year.multi;
    out.ref.author_field = std::string(author);
    out.ref.year = year.year;
    out.ref.title_field = std::move(title);
    return out;
}

ParsedReferences parse_all_references(const std::vector<PublicationRecord>& records, int min_year, int max_year) {
    ParsedReferences out;
    for (const auto& r : records) {
        for (const auto& raw : r.raw_references) {
            ++out.stats.total;
            ParsedReference p = parse_reference_string(raw, min_year, max_year);
            switch (p.outcome) {
                case RefParseOutcome::parsed:
                    ++out.stats.parsed;
                    if (p.multi_year) ++out.stats.multi_year_flagged;
                    p.ref.source_record_id = r.id;
                    out.refs.push_back(std::move(p.ref));
                    break;
                case RefParseOutcome::discarded_anonymous:
                    ++out.stats.discarded_anonymous;
                    break;
                case RefParseOutcome::discarded_yearless:
                    ++out.stats.discarded_yearless;
                    break;
                case RefParseOutcome::malformed:
                    ++out.stats.malformed;
                    break;
            }
        }
    }
    return out;
}

CorpusSlices slice_periods(const std::vector<PublicationRecord>& records, const std::vector<PeriodSpec>& periods) {
    for (const auto& p : periods) {
        if (p.start_year > p.end_year)
            throw config_error("period '" + p.label + "' has start after end");
    }
    for (std::size_t i = 0; i < periods.size(); ++i) {
        for (std::size_t j = i + 1; j < periods.size(); ++j) {
            const auto& a = periods[i];
            const auto& b = periods[j];
            if (a.start_year <= b.end_year && b.start_year <= a.end_year)
                throw config_error("periods '" + a.label + "' and '" + b.label + "' overlap");
        }
    }
    CorpusSlices out;
    out.periods = periods;
    out.slices.assign(periods.size(), {});
    for (std::size_t r = 0; r < records.size(); ++r) {
        bool assigned = false;
        for (std::size_t p = 0; p < periods.size(); ++p) {
            if (periods[p].contains(records[r].year)) {
                out.slices[p].push_back(r);
                assigned = true;
                break;
            }
        }
        if (!assigned) ++out.outside;
    }
    return out;
}

std::vector<PeriodSpec> citation_default_periods() {
    return {
        {"until-1969", 1400, 1969}, {"1970-1979", 1970, 1979}, {"1980-1989", 1980, 1989},
        {"1990-1999", 1990, 1999},  {"2000-2009", 2000, 2009}, {"2010-2016", 2010, 2016},
    };
}

std::vector<PeriodSpec> text_default_periods() {
    return {
        {"1999-2004", 1999, 2004},
        {"2005-2010", 2005, 2010},
        {"2011-2016", 2011, 2016},
    };
}

std::vector<PeriodSpec> periods_from_json(const std::string& json_text) {
    ordered_json j = ordered_json::parse(json_text, nullptr, false);
    if (j.is_discarded() || !j.is_array()) throw config_error("period file must hold a JSON array");
    std::vector<PeriodSpec> out;
    for (const auto& e : j) {
        if (!e.is_object() || !e.contains("label") || !e.contains("start") || !e.contains("end"))
            throw config_error("period entries need label, start and end");
        PeriodSpec p;
        p.label = e["label"].get<std::string>();
        p.start_year = e["start"].get<int>();
        p.end_year = e["end"].get<int>();
        out.push_back(std::move(p));
    }
    if (out.empty()) throw config_error("period file holds no periods");
    return out;
}

std::string periods_to_json(const std::vector<PeriodSpec>& periods) {
    ordered_json j = ordered_json::array();
    for (const auto& p : periods) j.push_back({{"label", p.label}, {"start", p.start_year}, {"end", p.end_year}});
    return j.dump(2);
}

}  // namespace bibcouple
