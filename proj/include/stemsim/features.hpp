#pragma once

#include "stemsim/document.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace stemsim {

/// Corpus-wide identity of a cited work, assigned by reference consolidation.
using GlobalReferenceId = std::int64_t;

/// Occurrence counts per identifier symbol. No zero-count entries;
/// total equals the length of the source identifier sequence.
struct IdentifierHistogram {
    std::map<std::string, std::size_t> counts;
    std::size_t total = 0;
};

IdentifierHistogram build_histogram(const std::vector<std::string>& identifiers);

/// Retained word-3-gram hashes (sorted, deduplicated). A gram is retained
/// iff the low 4 bits of its FNV-1a hash are zero, which realizes the
/// 1/16 average retention rate deterministically.
struct FingerprintSet {
    std::vector<std::uint64_t> hashes;

    bool contains(std::uint64_t h) const;
};

inline constexpr std::size_t kFingerprintGramWords = 3;
inline constexpr std::uint64_t kFingerprintRetentionMask = 0xF;

/// Hash of one normalized gram (words joined by a single space).
std::uint64_t fingerprint_hash(std::string_view gram);

FingerprintSet fingerprint_text(std::string_view text);

struct ConsolidationConfig {
    std::size_t max_edits = 2;         // consolidation.max_edits
    double max_edit_fraction = 0.1;    // consolidation.max_edit_fraction
};

/// Result of corpus-wide reference consolidation. Two entries share an id
/// iff their normalized first-author surnames match exactly and their
/// normalized titles are within the configured edit distance (transitively
/// closed). Entries with empty titles never merge.
struct ConsolidationResult {
    /// ids[d][r] is the GlobalReferenceId of docs[d].references[r].
    std::vector<std::vector<GlobalReferenceId>> ids;
    std::int64_t cluster_count = 0;
    /// cited_docs[d]: sorted corpus indices whose (title, first author)
    /// matches one of doc d's reference entries.
    std::vector<std::vector<std::size_t>> cited_docs;

    bool cites(std::size_t doc_idx, std::size_t target_idx) const;
};

ConsolidationResult consolidate_references(const std::vector<Document>& docs,
                                           const ConsolidationConfig& config = {});

/// Maps each resolved in-text citation to its reference's GlobalReferenceId,
/// in document order; unresolved citations are dropped.
std::vector<GlobalReferenceId> resolve_citations(const Document& doc,
                                                 const std::vector<GlobalReferenceId>& ref_ids);

} // namespace stemsim
