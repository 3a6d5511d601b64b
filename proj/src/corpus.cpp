#include "stemsim/corpus.hpp"

#include "stemsim/errors.hpp"
#include "stemsim/text.hpp"
#include "stemsim/util.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace stemsim {

namespace {

using nlohmann::ordered_json;

constexpr int kCorpusFormatVersion = 1;

} // namespace

Corpus::Corpus(std::vector<Document> docs) : docs_(std::move(docs)) {
    const std::vector<Violation> violations = validate_corpus(docs_);
    if (!violations.empty()) {
        throw Error("invalid corpus: " + violations.front().rule);
    }
    id_index_.reserve(docs_.size());
    for (std::size_t i = 0; i < docs_.size(); ++i) {
        id_index_.emplace_back(docs_[i].doc_id, i);
    }
    std::sort(id_index_.begin(), id_index_.end());
}

std::optional<std::size_t> Corpus::find(std::string_view doc_id) const {
    const auto it = std::lower_bound(
        id_index_.begin(), id_index_.end(), doc_id,
        [](const auto& entry, std::string_view id) { return entry.first < id; });
    if (it == id_index_.end() || it->first != doc_id) {
        return std::nullopt;
    }
    return it->second;
}

void Corpus::save(const std::filesystem::path& dir) const {
    std::filesystem::create_directories(dir);

    std::size_t identifier_total = 0;
    std::size_t citation_total = 0;
    std::size_t reference_total = 0;
    std::size_t fingerprint_total = 0;
    {
        std::ofstream out(dir / "docs.jsonl", std::ios::binary);
        if (!out) {
            throw IoError("cannot write " + (dir / "docs.jsonl").string());
        }
        for (const Document& doc : docs_) {
            out << serialize_json(doc) << '\n';
            identifier_total += doc.identifiers.size();
            citation_total += doc.citations.size();
            reference_total += doc.references.size();
            fingerprint_total += fingerprint_text(doc.text).hashes.size();
        }
    }

    ordered_json manifest;
    manifest["format"] = "stemsim-corpus";
    manifest["version"] = kCorpusFormatVersion;
    manifest["doc_count"] = docs_.size();
    manifest["features"] = {
        {"identifiers", identifier_total},
        {"citations", citation_total},
        {"references", reference_total},
        {"fingerprints", fingerprint_total},
    };
    std::ofstream manifest_out(dir / "corpus.json", std::ios::binary);
    if (!manifest_out) {
        throw IoError("cannot write " + (dir / "corpus.json").string());
    }
    manifest_out << manifest.dump(2) << '\n';
}

Corpus Corpus::load(const std::filesystem::path& dir) {
    const std::filesystem::path manifest_path = dir / "corpus.json";
    std::ifstream manifest_in(manifest_path, std::ios::binary);
    if (!manifest_in) {
        throw IoError("cannot read " + manifest_path.string());
    }
    const nlohmann::json manifest =
        nlohmann::json::parse(manifest_in, nullptr, false);
    if (manifest.is_discarded() || manifest.value("format", "") != "stemsim-corpus") {
        throw ParseError("not a corpus manifest: " + manifest_path.string());
    }
    if (manifest.value("version", 0) != kCorpusFormatVersion) {
        throw ParseError("unsupported corpus version in " + manifest_path.string());
    }

    std::ifstream docs_in(dir / "docs.jsonl", std::ios::binary);
    if (!docs_in) {
        throw IoError("cannot read " + (dir / "docs.jsonl").string());
    }
    std::vector<Document> docs;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(docs_in, line)) {
        ++line_no;
        if (trim(line).empty()) {
            continue;
        }
        try {
            docs.push_back(parse_json(line));
        } catch (const Error& e) {
            throw ParseError("docs.jsonl line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    const std::size_t expected = manifest.value("doc_count", docs.size());
    if (expected != docs.size()) {
        throw ParseError("corpus manifest lists " + std::to_string(expected) +
                         " documents but docs.jsonl holds " + std::to_string(docs.size()));
    }
    return Corpus(std::move(docs));
}

CorpusFeatures::CorpusFeatures(const Corpus& corpus, const ConsolidationConfig& config,
                               std::size_t threads)
    : corpus_(&corpus) {
    const std::vector<Document>& docs = corpus.docs();
    consolidation_ = consolidate_references(docs, config);

    // Identifier symbol table in first-occurrence order.
    std::unordered_map<std::string, std::int32_t> symbol_ids;
    features_.resize(docs.size());
    for (std::size_t d = 0; d < docs.size(); ++d) {
        DocumentFeatures& f = features_[d];
        const Document& doc = docs[d];
        f.doc_id = doc.doc_id;
        f.identifier_ids.reserve(doc.identifiers.size());
        for (const std::string& symbol : doc.identifiers) {
            const auto [it, inserted] =
                symbol_ids.emplace(symbol, static_cast<std::int32_t>(symbols_.size()));
            if (inserted) {
                symbols_.push_back(symbol);
            }
            f.identifier_ids.push_back(it->second);
        }
        f.identifier_total = f.identifier_ids.size();
    }

    parallel_for(docs.size(), threads, [&](std::size_t d) {
        DocumentFeatures& f = features_[d];
        const Document& doc = docs[d];

        std::vector<std::int32_t> sorted_ids = f.identifier_ids;
        std::sort(sorted_ids.begin(), sorted_ids.end());
        for (std::size_t i = 0; i < sorted_ids.size();) {
            std::size_t j = i;
            while (j < sorted_ids.size() && sorted_ids[j] == sorted_ids[i]) {
                ++j;
            }
            f.identifier_counts.emplace_back(sorted_ids[i], static_cast<std::uint32_t>(j - i));
            i = j;
        }

        f.citation_sequence = resolve_citations(doc, consolidation_.ids[d]);
        f.reference_ids = consolidation_.ids[d];
        std::sort(f.reference_ids.begin(), f.reference_ids.end());
        f.reference_ids.erase(std::unique(f.reference_ids.begin(), f.reference_ids.end()),
                              f.reference_ids.end());

        f.fingerprints = fingerprint_text(doc.text);
        f.grams = build_gram_index(doc.text);

        f.author_keys.reserve(doc.authors.size());
        for (const std::string& author : doc.authors) {
            const std::string key = normalize_author(author);
            if (!key.empty()) {
                f.author_keys.push_back(key);
            }
        }
        std::sort(f.author_keys.begin(), f.author_keys.end());
        f.author_keys.erase(std::unique(f.author_keys.begin(), f.author_keys.end()),
                            f.author_keys.end());
        f.date = doc.date;
    });
}

bool CorpusFeatures::share_author(std::size_t a, std::size_t b) const {
    const std::vector<std::string>& keys_a = features_.at(a).author_keys;
    const std::vector<std::string>& keys_b = features_.at(b).author_keys;
    std::size_t ia = 0;
    std::size_t ib = 0;
    while (ia < keys_a.size() && ib < keys_b.size()) {
        const int cmp = keys_a[ia].compare(keys_b[ib]);
        if (cmp == 0) {
            return true;
        }
        (cmp < 0 ? ia : ib) += 1;
    }
    return false;
}

std::size_t shared_distinct_identifiers(const DocumentFeatures& a, const DocumentFeatures& b) {
    std::size_t shared = 0;
    std::size_t ia = 0;
    std::size_t ib = 0;
    while (ia < a.identifier_counts.size() && ib < b.identifier_counts.size()) {
        const std::int32_t ka = a.identifier_counts[ia].first;
        const std::int32_t kb = b.identifier_counts[ib].first;
        if (ka == kb) {
            ++shared;
            ++ia;
            ++ib;
        } else if (ka < kb) {
            ++ia;
        } else {
            ++ib;
        }
    }
    return shared;
}

} // namespace stemsim
