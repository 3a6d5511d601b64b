#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace stemsim {

std::string trim(std::string_view s);

/// Collapses runs of whitespace (space, tab, newline, CR) to a single space
/// and trims the ends.
std::string collapse_whitespace(std::string_view s);

/// ASCII lowercase; bytes outside [A-Z] pass through untouched.
std::string to_lower(std::string_view s);

/// Lowercases and replaces common accented Latin letters by their base ASCII
/// letter (UTF-8 input). Unknown multi-byte sequences are kept verbatim.
std::string fold_diacritics(std::string_view s);

/// Lowercase word tokens split on non-alphanumeric bytes; empty tokens dropped.
std::vector<std::string> tokenize_words(std::string_view text);

/// "surname, first-initial" key used for shared-author checks: lowercased,
/// diacritics folded. Accepts "Surname, Forename" and "Forename Surname".
std::string normalize_author(std::string_view author);

/// First author's normalized surname, or empty when the list is empty.
std::string first_author_surname(const std::vector<std::string>& authors);

/// Title key for reference consolidation: lowercase, diacritics folded,
/// whitespace collapsed. Punctuation is kept (the edit-distance threshold
/// absorbs trailing periods and similar noise).
std::string normalize_title(std::string_view title);

/// Levenshtein distance if it is <= limit, otherwise limit + 1 (banded DP).
std::size_t levenshtein_bounded(std::string_view a, std::string_view b, std::size_t limit);

/// FNV-1a over the raw bytes. The fingerprint format pins this function
/// bit-exactly; test vectors live under tests/fixtures.
std::uint64_t fnv1a64(std::string_view bytes);

/// True for "YYYY-MM-DD" with plausible month/day fields.
bool is_iso_date(std::string_view s);

} // namespace stemsim
