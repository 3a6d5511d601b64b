#pragma once

#include "stemsim/document.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace stemsim {

/// A planted test case: a generated document copies the given fractions of a
/// background document's identifier sequence, citation sequence, and text.
struct PlantSpec {
    std::string case_id;
    double identifier_fraction = 0.5;
    double citation_fraction = 0.4;
    double text_fraction = 0.3;
};

/// A planted pair that the exploratory filters must drop: either the pair
/// shares an author, or the older document cites the newer one.
struct DecoySpec {
    enum class Kind { shared_author, older_cites_newer };

    Kind kind = Kind::shared_author;
    std::string case_id;
    double identifier_fraction = 0.6;
    double citation_fraction = 0.4;
    double text_fraction = 0.3;
};

/// Distribution parameters default to the reference corpus averages
/// (21 references, 30 citations, ~1513 identifiers, ~70 distinct identifiers
/// per document, ~256 retained fingerprints). Tests typically shrink them.
struct GeneratorConfig {
    std::size_t n_docs = 100;
    std::uint64_t seed = 42;
    std::size_t identifiers_per_doc = 1513;
    std::size_t distinct_identifiers_per_doc = 70;
    std::size_t references_per_doc = 21;
    std::size_t citations_per_doc = 30;
    std::size_t words_per_doc = 4100;
    std::size_t identifier_universe = 200;
    std::size_t author_pool = 0;  // 0: derived from n_docs
    std::size_t work_pool = 0;    // 0: derived from n_docs
    std::size_t vocabulary = 4000;
    double unresolved_citation_rate = 0.05;
    std::vector<PlantSpec> plants;
    std::vector<DecoySpec> decoys;
};

struct SyntheticCase {
    std::string case_id;
    std::string query_doc;   // the planted (later) document
    std::string source_doc;  // the document it copies from
};

struct SyntheticCorpus {
    std::vector<Document> documents;       // background docs, then plants, then decoys
    std::vector<SyntheticCase> cases;      // one per PlantSpec
    std::vector<SyntheticCase> decoy_pairs;  // one per DecoySpec
};

/// Deterministic for a fixed config (single RNG stream, fixed draw order).
/// Throws Error on an invalid plant/decoy spec (fractions outside [0,1]) or
/// n_docs < 2.
SyntheticCorpus generate_synthetic(const GeneratorConfig& config);

} // namespace stemsim
