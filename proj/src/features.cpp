#include "stemsim/features.hpp"

#include "stemsim/text.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

namespace stemsim {

namespace {

// Union-find over reference occurrences.
class DisjointSet {
public:
    explicit DisjointSet(std::size_t n) : parent_(n) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) {
            parent_[std::max(a, b)] = std::min(a, b);
        }
    }

private:
    std::vector<std::size_t> parent_;
};

std::size_t edit_limit(const ConsolidationConfig& config, std::size_t len_a, std::size_t len_b) {
    const std::size_t min_len = std::min(len_a, len_b);
    const auto fraction =
        static_cast<std::size_t>(std::ceil(config.max_edit_fraction * static_cast<double>(min_len)));
    return std::max(config.max_edits, fraction);
}

bool titles_match(const ConsolidationConfig& config, const std::string& a, const std::string& b) {
    const std::size_t limit = edit_limit(config, a.size(), b.size());
    if (a.size() > b.size() ? a.size() - b.size() > limit : b.size() - a.size() > limit) {
        return false;
    }
    return levenshtein_bounded(a, b, limit) <= limit;
}

} // namespace

IdentifierHistogram build_histogram(const std::vector<std::string>& identifiers) {
    IdentifierHistogram histogram;
    for (const std::string& symbol : identifiers) {
        ++histogram.counts[symbol];
    }
    histogram.total = identifiers.size();
    return histogram;
}

bool FingerprintSet::contains(std::uint64_t h) const {
    return std::binary_search(hashes.begin(), hashes.end(), h);
}

std::uint64_t fingerprint_hash(std::string_view gram) {
    return fnv1a64(gram);
}

FingerprintSet fingerprint_text(std::string_view text) {
    const std::vector<std::string> tokens = tokenize_words(text);
    FingerprintSet set;
    if (tokens.size() < kFingerprintGramWords) {
        return set;
    }
    std::string gram;
    for (std::size_t i = 0; i + kFingerprintGramWords <= tokens.size(); ++i) {
        gram.clear();
        for (std::size_t k = 0; k < kFingerprintGramWords; ++k) {
            if (k > 0) {
                gram.push_back(' ');
            }
            gram += tokens[i + k];
        }
        const std::uint64_t h = fingerprint_hash(gram);
        if ((h & kFingerprintRetentionMask) == 0) {
            set.hashes.push_back(h);
        }
    }
    std::sort(set.hashes.begin(), set.hashes.end());
    set.hashes.erase(std::unique(set.hashes.begin(), set.hashes.end()), set.hashes.end());
    return set;
}

bool ConsolidationResult::cites(std::size_t doc_idx, std::size_t target_idx) const {
    if (doc_idx >= cited_docs.size()) {
        return false;
    }
    const std::vector<std::size_t>& cited = cited_docs[doc_idx];
    return std::binary_search(cited.begin(), cited.end(), target_idx);
}

ConsolidationResult consolidate_references(const std::vector<Document>& docs,
                                           const ConsolidationConfig& config) {
    struct Occurrence {
        std::size_t doc_idx;
        std::size_t ref_idx;
        std::string surname;
        std::string title;
    };
    std::vector<Occurrence> occurrences;
    for (std::size_t d = 0; d < docs.size(); ++d) {
        const std::vector<ReferenceEntry>& refs = docs[d].references;
        for (std::size_t r = 0; r < refs.size(); ++r) {
            occurrences.push_back(
                {d, r, first_author_surname(refs[r].authors), normalize_title(refs[r].title)});
        }
    }

    DisjointSet clusters(occurrences.size());

    // Block by exact surname; within a block compare distinct titles only.
    std::unordered_map<std::string, std::vector<std::size_t>> blocks;
    for (std::size_t i = 0; i < occurrences.size(); ++i) {
        if (occurrences[i].title.empty()) {
            continue;  // empty titles never merge
        }
        blocks[occurrences[i].surname].push_back(i);
    }
    for (auto& [surname, members] : blocks) {
        // representative occurrence per distinct title string
        std::unordered_map<std::string, std::size_t> distinct;
        std::vector<std::size_t> representatives;
        for (std::size_t occ : members) {
            const auto [it, inserted] = distinct.emplace(occurrences[occ].title, occ);
            if (inserted) {
                representatives.push_back(occ);
            } else {
                clusters.unite(it->second, occ);
            }
        }
        for (std::size_t i = 1; i < representatives.size(); ++i) {
            for (std::size_t j = 0; j < i; ++j) {
                const std::string& a = occurrences[representatives[i]].title;
                const std::string& b = occurrences[representatives[j]].title;
                if (titles_match(config, a, b)) {
                    clusters.unite(representatives[i], representatives[j]);
                }
            }
        }
    }

    // Number clusters in first-occurrence order for stable ids.
    ConsolidationResult result;
    result.ids.resize(docs.size());
    std::unordered_map<std::size_t, GlobalReferenceId> root_to_id;
    for (std::size_t i = 0; i < occurrences.size(); ++i) {
        const std::size_t root = clusters.find(i);
        const auto [it, inserted] =
            root_to_id.emplace(root, static_cast<GlobalReferenceId>(root_to_id.size()));
        result.ids[occurrences[i].doc_idx].push_back(it->second);
    }
    result.cluster_count = static_cast<std::int64_t>(root_to_id.size());

    // Link reference entries to corpus documents via the same matching rule.
    std::unordered_map<std::string, std::vector<std::size_t>> docs_by_surname;
    std::vector<std::string> doc_titles(docs.size());
    for (std::size_t d = 0; d < docs.size(); ++d) {
        doc_titles[d] = normalize_title(docs[d].title);
        if (doc_titles[d].empty()) {
            continue;
        }
        const std::string surname = first_author_surname(docs[d].authors);
        docs_by_surname[surname].push_back(d);
    }
    result.cited_docs.resize(docs.size());
    std::unordered_map<std::string, std::vector<std::size_t>> link_cache;
    for (const Occurrence& occ : occurrences) {
        if (occ.title.empty()) {
            continue;
        }
        const std::string cache_key = occ.surname + '\x1f' + occ.title;
        auto cached = link_cache.find(cache_key);
        if (cached == link_cache.end()) {
            std::vector<std::size_t> matches;
            if (const auto block = docs_by_surname.find(occ.surname);
                block != docs_by_surname.end()) {
                for (std::size_t d : block->second) {
                    if (titles_match(config, occ.title, doc_titles[d])) {
                        matches.push_back(d);
                    }
                }
            }
            cached = link_cache.emplace(cache_key, std::move(matches)).first;
        }
        for (std::size_t d : cached->second) {
            result.cited_docs[occ.doc_idx].push_back(d);
        }
    }
    for (std::vector<std::size_t>& cited : result.cited_docs) {
        std::sort(cited.begin(), cited.end());
        cited.erase(std::unique(cited.begin(), cited.end()), cited.end());
    }
    return result;
}

std::vector<GlobalReferenceId> resolve_citations(const Document& doc,
                                                 const std::vector<GlobalReferenceId>& ref_ids) {
    std::vector<GlobalReferenceId> sequence;
    sequence.reserve(doc.citations.size());
    for (const CitationInstance& citation : doc.citations) {
        if (citation.ref_index && *citation.ref_index < ref_ids.size()) {
            sequence.push_back(ref_ids[*citation.ref_index]);
        }
    }
    return sequence;
}

} // namespace stemsim
