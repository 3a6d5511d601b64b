#pragma once

#include "stemsim/document.hpp"
#include "stemsim/features.hpp"
#include "stemsim/measures.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace stemsim {

/// Immutable document collection with id lookup and directory persistence
/// (corpus.json manifest + docs.jsonl, one canonical JSON document per line).
class Corpus {
public:
    Corpus() = default;
    explicit Corpus(std::vector<Document> docs);

    std::size_t size() const { return docs_.size(); }
    bool empty() const { return docs_.empty(); }
    const std::vector<Document>& docs() const { return docs_; }
    const Document& at(std::size_t idx) const { return docs_.at(idx); }
    std::optional<std::size_t> find(std::string_view doc_id) const;

    void save(const std::filesystem::path& dir) const;
    static Corpus load(const std::filesystem::path& dir);

private:
    std::vector<Document> docs_;
    std::vector<std::pair<std::string, std::size_t>> id_index_;  // sorted by id
};

/// Analysis-ready features of one document. Identifier symbols are mapped
/// through the corpus symbol table to dense ints for the sequence kernels.
struct DocumentFeatures {
    std::string doc_id;
    std::vector<std::int32_t> identifier_ids;  // document order
    std::vector<std::pair<std::int32_t, std::uint32_t>> identifier_counts;  // sorted by id
    std::size_t identifier_total = 0;
    std::vector<GlobalReferenceId> citation_sequence;  // document order
    std::vector<GlobalReferenceId> reference_ids;      // sorted unique
    FingerprintSet fingerprints;
    GramIndex grams;
    std::vector<std::string> author_keys;  // sorted normalized
    std::optional<std::string> date;

    std::size_t distinct_identifier_count() const { return identifier_counts.size(); }
};

/// Corpus-wide feature extraction: identifier symbol table, reference
/// consolidation, citation resolution, fingerprints and n-gram caches.
/// Built single-threaded per corpus snapshot, then safe for concurrent reads.
class CorpusFeatures {
public:
    CorpusFeatures(const Corpus& corpus, const ConsolidationConfig& config = {},
                   std::size_t threads = 1);

    std::size_t size() const { return features_.size(); }
    const DocumentFeatures& of(std::size_t idx) const { return features_.at(idx); }
    const Corpus& corpus() const { return *corpus_; }

    const std::string& symbol(std::int32_t id) const { return symbols_.at(id); }
    std::size_t symbol_count() const { return symbols_.size(); }

    bool share_author(std::size_t a, std::size_t b) const;
    /// True when one of a's reference entries matches document b's title and
    /// first author (the consolidation matching rule).
    bool cites(std::size_t a, std::size_t b) const { return consolidation_.cites(a, b); }
    const ConsolidationResult& consolidation() const { return consolidation_; }

private:
    const Corpus* corpus_ = nullptr;
    std::vector<DocumentFeatures> features_;
    std::vector<std::string> symbols_;
    ConsolidationResult consolidation_;
};

/// Count of identifier symbols occurring in both documents.
std::size_t shared_distinct_identifiers(const DocumentFeatures& a, const DocumentFeatures& b);

} // namespace stemsim
