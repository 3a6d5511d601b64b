// Shared builders for corpus-level tests.
#pragma once

#include "stemsim/corpus.hpp"
#include "stemsim/index.hpp"
#include "stemsim/synthetic.hpp"

#include <filesystem>
#include <random>
#include <string>
#include <vector>

namespace helpers {

struct TempDir {
    std::filesystem::path path;

    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("stemsim-test-" + std::to_string(std::random_device{}()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
};

inline stemsim::Document make_doc(std::string id, std::vector<std::string> identifiers = {},
                                  std::vector<std::string> authors = {},
                                  std::string text = {}) {
    stemsim::Document doc;
    doc.doc_id = std::move(id);
    doc.identifiers = std::move(identifiers);
    doc.authors = std::move(authors);
    doc.text = std::move(text);
    return doc;
}

// Adds n references to distinct works and n resolved citations (one per
// reference, in order), using `tag` to keep works distinct across docs.
// Titles use mutually distant words so consolidation never merges them.
inline void give_citations(stemsim::Document& doc, const std::string& tag, std::size_t n) {
    static const char* const kWords[] = {
        "alpha", "bravo",    "charlie", "delta",  "echo",   "foxtrot", "golf",
        "hotel", "india",    "juliett", "kilo",   "mike",   "november", "oscar",
        "papa",  "quebec",   "romeo",   "sierra", "tango",  "uniform"};
    for (std::size_t i = 0; i < n; ++i) {
        stemsim::ReferenceEntry entry;
        entry.title = "work " + tag + " " + kWords[i % 20] + std::to_string(i / 20) +
                      " on several topics";
        entry.authors = {"author" + tag + std::to_string(i) + ", a"};
        entry.raw = entry.authors[0] + ". " + entry.title + ".";
        doc.references.push_back(entry);
        doc.citations.push_back({i, i});
    }
}

// features points into corpus; members initialize in order and the object
// must never be moved (returns rely on copy elision).
struct TestWorld {
    stemsim::Corpus corpus;
    stemsim::CorpusFeatures features;
    stemsim::SearchIndex index;

    explicit TestWorld(std::vector<stemsim::Document> docs,
                       const stemsim::ConsolidationConfig& config = {})
        : corpus(std::move(docs)), features(corpus, config) {
        for (std::size_t d = 0; d < features.size(); ++d) {
            index.add_document(features.of(d).doc_id, corpus.at(d).identifiers,
                               features.of(d).citation_sequence, features.of(d).fingerprints);
        }
    }
    TestWorld(const TestWorld&) = delete;
    TestWorld& operator=(const TestWorld&) = delete;
};

inline TestWorld synthetic_world(const stemsim::GeneratorConfig& config,
                                 stemsim::SyntheticCorpus* out_corpus = nullptr) {
    stemsim::SyntheticCorpus generated = stemsim::generate_synthetic(config);
    if (out_corpus != nullptr) {
        *out_corpus = generated;
    }
    return TestWorld(std::move(generated.documents));
}

} // namespace helpers
