#pragma once

#include "stemsim/corpus.hpp"
#include "stemsim/index.hpp"

#include <string>
#include <vector>

namespace stemsim {

enum class Channel : std::size_t { math = 0, citation = 1, text = 2, union_all = 3 };

inline constexpr std::size_t kChannelCount = 4;

std::string_view channel_name(Channel c);

/// Per-channel ranked top-k candidates for one query document, plus their
/// union. The query document itself is excluded everywhere.
struct CandidateSet {
    std::vector<std::string> math;
    std::vector<std::string> citation;
    std::vector<std::string> text;
    std::vector<std::string> union_ids;  // sorted unique

    const std::vector<std::string>& channel(Channel c) const;
    bool in_channel(Channel c, std::string_view doc_id) const;
};

/// Set union of the three channel lists (sorted unique).
std::vector<std::string> union_candidates(const CandidateSet& candidates);

/// Builds the three channel queries for the document at doc_idx and runs
/// them against the index:
///  - math: distinct identifier symbols, boost = occurrence count in the query
///  - citation: distinct cited GlobalReferenceIds, boost 1
///  - text: fingerprint hashes, boost 1
/// A channel without features returns an empty list.
CandidateSet retrieve_candidates(const CorpusFeatures& features, const SearchIndex& index,
                                 std::size_t doc_idx, std::size_t k = 100);

/// The math/citation/text query term lists used by retrieve_candidates.
std::array<std::vector<QueryTerm>, 3> channel_queries(const CorpusFeatures& features,
                                                      std::size_t doc_idx);

} // namespace stemsim
