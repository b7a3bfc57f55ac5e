#pragma once

#include <string>
#include <string_view>

namespace bibcouple {

// ASCII lower-casing; bytes outside A-Z pass through untouched, so UTF-8
// multi-byte sequences (diacritics) are preserved as-is.
std::string to_lower_ascii(std::string_view s);

// Canonical form used for all string matching: lower-cased, ASCII
// punctuation collapsed to single spaces, whitespace runs collapsed,
// leading/trailing whitespace removed. Bytes >= 0x80 are kept verbatim.
// Idempotent.
std::string normalize_for_matching(std::string_view s);

// Strict UTF-8 validity check (rejects overlongs, surrogates, > U+10FFFF).
bool is_valid_utf8(std::string_view s);

// Up to the first n bytes of s.
std::string_view prefix_bytes(std::string_view s, std::size_t n);

std::string_view trim(std::string_view s);

}  // namespace bibcouple
