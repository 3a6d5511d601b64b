#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace stemsim {

/// One in-text citation marker. `ref_index` points into
/// Document::references; nullopt means the marker could not be linked.
struct CitationInstance {
    std::size_t position = 0;
    std::optional<std::size_t> ref_index;

    bool operator==(const CitationInstance&) const = default;
};

/// One bibliography entry. `title`/`authors` stay empty when the entry could
/// not be split into fields; that is flagged by validate(), not fatal.
struct ReferenceEntry {
    std::string raw;
    std::string title;
    std::vector<std::string> authors;
    std::optional<std::string> venue;

    bool operator==(const ReferenceEntry&) const = default;
};

/// Parsed document: metadata, plain text, and the three feature channels
/// (mathematical identifiers, in-text citations, bibliographic references).
/// Immutable by convention once constructed; safe to share across threads.
struct Document {
    std::string doc_id;
    std::string title;
    std::vector<std::string> authors;  // normalized "surname, first-initial"
    std::optional<std::string> date;   // ISO-8601 (YYYY-MM-DD)
    std::string text;                  // markup-free plain text
    std::vector<std::string> identifiers;  // document order, duplicates kept
    std::vector<CitationInstance> citations;
    std::vector<ReferenceEntry> references;

    bool operator==(const Document&) const = default;
};

struct Violation {
    std::string field;
    std::string rule;
};

struct TeiParseResult {
    Document document;
    std::vector<std::string> warnings;  // e.g. skipped unknown elements
};

/// Parses the TEI/MathML-subset XML format (see README for the element set).
/// Identifiers come from <ci> elements inside <formula>, citations from
/// <ref type="bibr">, references from <listBibl>; plain text is the content
/// of <p> elements with formulae and citation markers removed.
/// Throws ParseError on malformed XML, SchemaError on a missing document id.
TeiParseResult parse_tei_verbose(std::string_view xml_bytes);
Document parse_tei(std::string_view xml_bytes);

/// Parses the native JSON document format. Throws SchemaError naming the
/// offending field on schema violations, ParseError on malformed JSON.
Document parse_json(std::string_view bytes);

/// Canonical JSON serialization; parse_json(serialize_json(d)) == d.
std::string serialize_json(const Document& doc);

/// Per-document invariant check; an empty result means the Document is valid.
std::vector<Violation> validate(const Document& doc);

/// Corpus-level checks (currently: doc_id uniqueness).
std::vector<Violation> validate_corpus(const std::vector<Document>& docs);

} // namespace stemsim
