#pragma once

#include <optional>
#include <string>
#include <vector>

namespace bibcouple {

struct AuthorName {
    std::string surname;
    std::string given;  // may be empty

    bool operator==(const AuthorName&) const = default;
};

// One citing article as it arrives from the input file. References are kept
// as raw strings here; parsing them is a separate step with its own
// discard accounting.
struct PublicationRecord {
    std::string id;
    std::string journal;
    std::string specialism;
    int year = 0;
    std::string title;
    std::optional<std::string> abstract;
    std::vector<AuthorName> authors;
    std::vector<std::string> raw_references;

    bool operator==(const PublicationRecord&) const = default;
};

// A cited-reference string after the author / year / remainder split.
struct RawReference {
    std::string source_record_id;
    std::string author_field;
    int year = 0;
    std::string title_field;  // remainder, trimmed of volume/page/issue tokens

    bool operator==(const RawReference&) const = default;
};

struct PeriodSpec {
    std::string label;
    int start_year = 0;  // inclusive
    int end_year = 0;    // inclusive

    bool contains(int year) const { return year >= start_year && year <= end_year; }
    bool operator==(const PeriodSpec&) const = default;
};

}  // namespace bibcouple
