#include "stemsim/retrieval.hpp"

#include <algorithm>

namespace stemsim {

std::string_view channel_name(Channel c) {
    switch (c) {
        case Channel::math: return "math";
        case Channel::citation: return "citation";
        case Channel::text: return "text";
        case Channel::union_all: return "union";
    }
    return "?";
}

const std::vector<std::string>& CandidateSet::channel(Channel c) const {
    switch (c) {
        case Channel::math: return math;
        case Channel::citation: return citation;
        case Channel::text: return text;
        case Channel::union_all: return union_ids;
    }
    return union_ids;
}

bool CandidateSet::in_channel(Channel c, std::string_view doc_id) const {
    if (c == Channel::union_all) {
        return std::binary_search(union_ids.begin(), union_ids.end(), doc_id);
    }
    const std::vector<std::string>& list = channel(c);
    return std::find(list.begin(), list.end(), doc_id) != list.end();
}

std::vector<std::string> union_candidates(const CandidateSet& candidates) {
    std::vector<std::string> all;
    all.reserve(candidates.math.size() + candidates.citation.size() + candidates.text.size());
    all.insert(all.end(), candidates.math.begin(), candidates.math.end());
    all.insert(all.end(), candidates.citation.begin(), candidates.citation.end());
    all.insert(all.end(), candidates.text.begin(), candidates.text.end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    return all;
}

std::array<std::vector<QueryTerm>, 3> channel_queries(const CorpusFeatures& features,
                                                      std::size_t doc_idx) {
    const DocumentFeatures& doc = features.of(doc_idx);
    std::array<std::vector<QueryTerm>, 3> queries;

    std::vector<QueryTerm>& math = queries[0];
    math.reserve(doc.identifier_counts.size());
    for (const auto& [symbol_id, count] : doc.identifier_counts) {
        math.push_back({features.symbol(symbol_id), static_cast<double>(count)});
    }

    std::vector<QueryTerm>& citation = queries[1];
    std::vector<GlobalReferenceId> cited(doc.citation_sequence);
    std::sort(cited.begin(), cited.end());
    cited.erase(std::unique(cited.begin(), cited.end()), cited.end());
    citation.reserve(cited.size());
    for (const GlobalReferenceId id : cited) {
        citation.push_back({SearchIndex::citation_term(id), 1.0});
    }

    std::vector<QueryTerm>& text = queries[2];
    text.reserve(doc.fingerprints.hashes.size());
    for (const std::uint64_t hash : doc.fingerprints.hashes) {
        text.push_back({SearchIndex::fingerprint_term(hash), 1.0});
    }
    return queries;
}

CandidateSet retrieve_candidates(const CorpusFeatures& features, const SearchIndex& index,
                                 std::size_t doc_idx, std::size_t k) {
    const std::string& query_id = features.of(doc_idx).doc_id;
    const std::array<std::vector<QueryTerm>, 3> queries = channel_queries(features, doc_idx);

    CandidateSet candidates;
    const std::array<IndexField, 3> field_of = {IndexField::identifier, IndexField::citation,
                                                IndexField::fingerprint};
    std::array<std::vector<std::string>*, 3> out = {&candidates.math, &candidates.citation,
                                                    &candidates.text};
    for (std::size_t c = 0; c < 3; ++c) {
        if (queries[c].empty()) {
            continue;
        }
        // k+1 so the list stays full after dropping the query document
        const std::vector<ScoredDoc> scored = index.query_top_k(queries[c], field_of[c], k + 1);
        out[c]->reserve(std::min(scored.size(), k));
        for (const ScoredDoc& doc : scored) {
            if (doc.doc_id == query_id) {
                continue;
            }
            if (out[c]->size() == k) {
                break;
            }
            out[c]->push_back(doc.doc_id);
        }
    }
    candidates.union_ids = union_candidates(candidates);
    return candidates;
}

} // namespace stemsim
