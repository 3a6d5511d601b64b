#pragma once

#include "stemsim/features.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace stemsim {

enum class IndexField : std::size_t { identifier = 0, citation = 1, fingerprint = 2 };

inline constexpr std::size_t kIndexFieldCount = 3;

std::string_view index_field_name(IndexField field);

struct QueryTerm {
    std::string term;
    double boost = 1.0;
};

struct ScoredDoc {
    std::string doc_id;
    double score = 0.0;
};

struct PostingEntry {
    std::string doc_id;
    std::uint32_t term_frequency = 0;
};

/// Inverted index over the three retrieval fields with the classic Lucene
/// practical scoring function:
///
///   score(q,d) = coord(q,d) * queryNorm(q)
///              * sum over matched t of tf(t,d) * idf(t)^2 * boost(t) * norm(d)
///
/// tf = sqrt(term frequency), idf = 1 + ln(doc_count / (doc_freq + 1)),
/// norm(d) = 1/sqrt(field token count of d), coord = matched / query terms,
/// queryNorm = 1/sqrt(sum over all query terms of (idf * boost)^2).
///
/// Build phase is single-writer; afterwards the index is an immutable
/// snapshot safe for concurrent queries.
class SearchIndex {
public:
    /// Indexes one document: identifier terms keep their sequence
    /// multiplicity, citation terms are decimal GlobalReferenceIds with
    /// their multiplicity, fingerprint terms are hex-encoded hashes with
    /// frequency 1. Throws Error if doc_id is already indexed.
    void add_document(const std::string& doc_id,
                      const std::vector<std::string>& identifier_sequence,
                      const std::vector<GlobalReferenceId>& citation_sequence,
                      const FingerprintSet& fingerprints);

    std::size_t doc_count() const { return doc_ids_.size(); }
    const std::vector<std::string>& doc_ids() const { return doc_ids_; }

    double score(std::span<const QueryTerm> query, IndexField field,
                 std::string_view doc_id) const;

    /// Top k by descending score (ties: ascending doc_id); only documents
    /// matching at least one query term are returned.
    std::vector<ScoredDoc> query_top_k(std::span<const QueryTerm> query, IndexField field,
                                       std::size_t k) const;

    /// Posting list of a term, sorted by doc_id; empty when the term is
    /// unknown.
    std::vector<PostingEntry> posting_list(IndexField field, std::string_view term) const;

    std::uint64_t field_token_count(IndexField field, std::string_view doc_id) const;

    /// Directory layout: manifest.json plus one binary postings file per
    /// field (little-endian, length-prefixed records with a JSON header).
    void save(const std::filesystem::path& dir) const;
    static SearchIndex load(const std::filesystem::path& dir);

    static std::string citation_term(GlobalReferenceId id);
    static std::string fingerprint_term(std::uint64_t hash);

private:
    struct Posting {
        std::uint32_t doc = 0;
        std::uint32_t term_frequency = 0;
    };

    struct Field {
        std::map<std::string, std::vector<Posting>, std::less<>> postings;
        std::vector<std::uint64_t> doc_lengths;
        std::uint64_t total_tokens = 0;
    };

    void add_terms(Field& field, std::uint32_t doc,
                   const std::vector<std::pair<std::string, std::uint32_t>>& term_counts);

    const Field& field(IndexField f) const { return fields_[static_cast<std::size_t>(f)]; }

    std::vector<std::string> doc_ids_;
    std::map<std::string, std::uint32_t, std::less<>> doc_ordinals_;
    std::array<Field, kIndexFieldCount> fields_;
};

} // namespace stemsim
