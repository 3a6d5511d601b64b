#include "stemsim/document.hpp"

#include "stemsim/errors.hpp"
#include "stemsim/text.hpp"
#include "stemsim/xml.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <set>
#include <unordered_map>

namespace stemsim {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

// Elements of the TEI subset this parser interprets. Anything else is
// recorded as a warning and treated as transparent markup.
const std::set<std::string, std::less<>> kKnownElements = {
    "TEI", "teiHeader", "fileDesc", "titleStmt", "sourceDesc", "text", "body",
    "back", "div", "p", "title", "author", "surname", "forename", "date",
    "formula", "ref", "listBibl", "biblStruct", "meeting", "journal",
};

struct TeiBuilder {
    Document doc;
    std::vector<std::string> pending_targets;  // citation targets, doc order
    std::unordered_map<std::string, std::size_t> bibl_ids;
    std::set<std::string> warned_elements;
    std::vector<std::string> warnings;

    void warn_unknown(const std::string& name) {
        if (warned_elements.insert(name).second) {
            warnings.push_back("skipped unknown element '" + name + "'");
        }
    }

    std::string author_from_node(const xml::Node& node) {
        std::string surname;
        std::string forename;
        collect_name_parts(node, surname, forename);
        if (surname.empty()) {
            return normalize_author(collapse_whitespace(node.all_text()));
        }
        std::string full = surname;
        if (!forename.empty()) {
            full += ", " + forename;
        }
        return normalize_author(full);
    }

    void collect_name_parts(const xml::Node& node, std::string& surname, std::string& forename) {
        for (const xml::Node& child : node.children) {
            if (child.is_element("surname")) {
                surname = collapse_whitespace(child.all_text());
            } else if (child.is_element("forename")) {
                if (forename.empty()) {
                    forename = collapse_whitespace(child.all_text());
                }
            } else if (child.kind == xml::Node::Kind::element) {
                collect_name_parts(child, surname, forename);
            }
        }
    }

    void parse_header(const xml::Node& header) {
        if (const xml::Node* file_desc = header.child("fileDesc")) {
            if (const xml::Node* title_stmt = file_desc->child("titleStmt")) {
                if (const xml::Node* title = title_stmt->child("title")) {
                    doc.title = collapse_whitespace(title->all_text());
                }
            }
            collect_metadata(*file_desc);
        }
    }

    void collect_metadata(const xml::Node& node) {
        for (const xml::Node& child : node.children) {
            if (child.is_element("author")) {
                const std::string author = author_from_node(child);
                if (!author.empty()) {
                    doc.authors.push_back(author);
                }
            } else if (child.is_element("date")) {
                const std::string value = collapse_whitespace(child.all_text());
                if (is_iso_date(value)) {
                    doc.date = value;
                } else if (!value.empty()) {
                    warnings.push_back("ignored non-ISO date '" + value + "'");
                }
            } else if (child.is_element("title")) {
                // handled via titleStmt
            } else if (child.kind == xml::Node::Kind::element) {
                collect_metadata(child);
            }
        }
    }

    void extract_identifiers(const xml::Node& formula) {
        for (const xml::Node& child : formula.children) {
            if (child.is_element("ci")) {
                const std::string symbol = trim(child.all_text());
                if (!symbol.empty()) {
                    doc.identifiers.push_back(symbol);
                }
            } else if (child.kind == xml::Node::Kind::element) {
                extract_identifiers(child);
            }
        }
    }

    void parse_bibliography(const xml::Node& list_bibl) {
        for (const xml::Node& entry : list_bibl.children) {
            if (!entry.is_element("biblStruct")) {
                continue;
            }
            ReferenceEntry ref;
            ref.raw = collapse_whitespace(entry.all_text());
            if (const xml::Node* title = entry.child("title")) {
                ref.title = collapse_whitespace(title->all_text());
            }
            for (const xml::Node& child : entry.children) {
                if (child.is_element("author")) {
                    const std::string author = author_from_node(child);
                    if (!author.empty()) {
                        ref.authors.push_back(author);
                    }
                } else if (child.is_element("meeting") || child.is_element("journal")) {
                    const std::string venue = collapse_whitespace(child.all_text());
                    if (!venue.empty() && !ref.venue) {
                        ref.venue = venue;
                    }
                }
            }
            if (const std::string* id = entry.attribute("xml:id")) {
                bibl_ids.emplace(*id, doc.references.size());
            }
            doc.references.push_back(std::move(ref));
        }
    }

    void add_citation(const xml::Node& ref) {
        const std::string* target = ref.attribute("target");
        std::string key;
        if (target != nullptr && target->size() > 1 && (*target)[0] == '#') {
            key = target->substr(1);
        }
        pending_targets.push_back(key);
    }

    // Walks the body. Text nodes contribute to the plain text only inside
    // <p>; formulae and citation markers never do.
    void walk_body(const xml::Node& node, bool in_paragraph) {
        for (const xml::Node& child : node.children) {
            if (child.kind == xml::Node::Kind::text) {
                if (in_paragraph) {
                    doc.text += child.value;
                }
                continue;
            }
            if (child.is_element("formula")) {
                extract_identifiers(child);
                if (in_paragraph) {
                    doc.text += ' ';
                }
                continue;
            }
            if (child.is_element("ref")) {
                const std::string* type = child.attribute("type");
                if (type != nullptr && *type == "bibr") {
                    add_citation(child);
                    continue;
                }
                walk_body(child, in_paragraph);
                continue;
            }
            if (child.is_element("listBibl")) {
                parse_bibliography(child);
                continue;
            }
            if (child.is_element("p")) {
                walk_body(child, true);
                doc.text += '\n';
                continue;
            }
            if (!kKnownElements.contains(child.name)) {
                warn_unknown(child.name);
            }
            walk_body(child, in_paragraph);
        }
    }

    void resolve_citations() {
        doc.citations.reserve(pending_targets.size());
        for (std::size_t i = 0; i < pending_targets.size(); ++i) {
            CitationInstance instance;
            instance.position = i;
            const std::string& key = pending_targets[i];
            if (!key.empty()) {
                const auto it = bibl_ids.find(key);
                if (it != bibl_ids.end()) {
                    instance.ref_index = it->second;
                }
            }
            doc.citations.push_back(instance);
        }
    }
};

json parse_json_root(std::string_view bytes) {
    json root = json::parse(bytes, nullptr, false);
    if (root.is_discarded()) {
        throw ParseError("malformed JSON document");
    }
    return root;
}

const json& require_field(const json& obj, const char* key, json::value_t type,
                          const char* type_name) {
    const auto it = obj.find(key);
    if (it == obj.end()) {
        throw SchemaError(key, "missing required field");
    }
    if (it->type() != type) {
        throw SchemaError(key, std::string("expected ") + type_name);
    }
    return *it;
}

std::vector<std::string> string_array(const json& arr, const char* field) {
    std::vector<std::string> out;
    out.reserve(arr.size());
    for (const json& item : arr) {
        if (!item.is_string()) {
            throw SchemaError(field, "expected an array of strings");
        }
        out.push_back(item.get<std::string>());
    }
    return out;
}

} // namespace

TeiParseResult parse_tei_verbose(std::string_view xml_bytes) {
    const xml::Node root = xml::parse(xml_bytes);
    if (!root.is_element("TEI")) {
        throw SchemaError("TEI", "root element must be 'TEI', found '" + root.name + "'");
    }
    TeiBuilder builder;
    const std::string* id = root.attribute("xml:id");
    if (id == nullptr || trim(*id).empty()) {
        throw SchemaError("xml:id", "missing document id on TEI root");
    }
    builder.doc.doc_id = trim(*id);

    if (const xml::Node* header = root.child("teiHeader")) {
        builder.parse_header(*header);
    }
    if (const xml::Node* text = root.child("text")) {
        // listBibl may live in <body> or <back>; both are under <text>.
        builder.walk_body(*text, false);
    }
    builder.resolve_citations();
    builder.doc.text = trim(builder.doc.text);

    TeiParseResult result;
    result.document = std::move(builder.doc);
    result.warnings = std::move(builder.warnings);
    return result;
}

Document parse_tei(std::string_view xml_bytes) {
    return parse_tei_verbose(xml_bytes).document;
}

Document parse_json(std::string_view bytes) {
    const json root = parse_json_root(bytes);
    if (!root.is_object()) {
        throw SchemaError("document", "expected a JSON object");
    }
    Document doc;
    doc.doc_id = require_field(root, "doc_id", json::value_t::string, "a string").get<std::string>();
    doc.title = require_field(root, "title", json::value_t::string, "a string").get<std::string>();
    doc.authors = string_array(
        require_field(root, "authors", json::value_t::array, "an array"), "authors");
    doc.text = require_field(root, "text", json::value_t::string, "a string").get<std::string>();
    doc.identifiers = string_array(
        require_field(root, "identifiers", json::value_t::array, "an array"), "identifiers");

    if (const auto it = root.find("date"); it != root.end() && !it->is_null()) {
        if (!it->is_string()) {
            throw SchemaError("date", "expected a string or null");
        }
        doc.date = it->get<std::string>();
    }

    const json& citations =
        require_field(root, "citations", json::value_t::array, "an array");
    for (const json& item : citations) {
        if (!item.is_object()) {
            throw SchemaError("citations", "expected an array of objects");
        }
        CitationInstance instance;
        const auto pos = item.find("position");
        if (pos == item.end() || !pos->is_number_unsigned()) {
            throw SchemaError("citations.position", "expected a non-negative integer");
        }
        instance.position = pos->get<std::size_t>();
        if (const auto ref = item.find("ref_index"); ref != item.end() && !ref->is_null()) {
            if (!ref->is_number_unsigned()) {
                throw SchemaError("citations.ref_index", "expected a non-negative integer or null");
            }
            instance.ref_index = ref->get<std::size_t>();
        }
        doc.citations.push_back(instance);
    }

    const json& references =
        require_field(root, "references", json::value_t::array, "an array");
    for (const json& item : references) {
        if (!item.is_object()) {
            throw SchemaError("references", "expected an array of objects");
        }
        ReferenceEntry ref;
        const auto raw = item.find("raw");
        if (raw == item.end() || !raw->is_string()) {
            throw SchemaError("references.raw", "expected a string");
        }
        ref.raw = raw->get<std::string>();
        if (const auto title = item.find("title"); title != item.end() && !title->is_null()) {
            if (!title->is_string()) {
                throw SchemaError("references.title", "expected a string");
            }
            ref.title = title->get<std::string>();
        }
        if (const auto authors = item.find("authors"); authors != item.end() && !authors->is_null()) {
            if (!authors->is_array()) {
                throw SchemaError("references.authors", "expected an array of strings");
            }
            ref.authors = string_array(*authors, "references.authors");
        }
        if (const auto venue = item.find("venue"); venue != item.end() && !venue->is_null()) {
            if (!venue->is_string()) {
                throw SchemaError("references.venue", "expected a string or null");
            }
            ref.venue = venue->get<std::string>();
        }
        doc.references.push_back(std::move(ref));
    }
    return doc;
}

std::string serialize_json(const Document& doc) {
    ordered_json out;
    out["doc_id"] = doc.doc_id;
    out["title"] = doc.title;
    out["authors"] = doc.authors;
    if (doc.date) {
        out["date"] = *doc.date;
    }
    out["text"] = doc.text;
    out["identifiers"] = doc.identifiers;
    out["citations"] = ordered_json::array();
    for (const CitationInstance& c : doc.citations) {
        ordered_json item;
        item["position"] = c.position;
        if (c.ref_index) {
            item["ref_index"] = *c.ref_index;
        } else {
            item["ref_index"] = nullptr;
        }
        out["citations"].push_back(std::move(item));
    }
    out["references"] = ordered_json::array();
    for (const ReferenceEntry& r : doc.references) {
        ordered_json item;
        item["raw"] = r.raw;
        item["title"] = r.title;
        item["authors"] = r.authors;
        if (r.venue) {
            item["venue"] = *r.venue;
        } else {
            item["venue"] = nullptr;
        }
        out["references"].push_back(std::move(item));
    }
    return out.dump();
}

std::vector<Violation> validate(const Document& doc) {
    std::vector<Violation> violations;
    if (trim(doc.doc_id).empty()) {
        violations.push_back({"doc_id", "must be non-empty"});
    }
    if (doc.date && !is_iso_date(*doc.date)) {
        violations.push_back({"date", "must be an ISO-8601 date (YYYY-MM-DD)"});
    }
    for (std::size_t i = 0; i < doc.identifiers.size(); ++i) {
        const std::string& symbol = doc.identifiers[i];
        if (symbol.empty()) {
            violations.push_back({"identifiers[" + std::to_string(i) + "]", "must be non-empty"});
        } else if (symbol != trim(symbol)) {
            violations.push_back(
                {"identifiers[" + std::to_string(i) + "]", "must be whitespace-trimmed"});
        }
    }
    for (std::size_t i = 0; i < doc.citations.size(); ++i) {
        const CitationInstance& c = doc.citations[i];
        if (c.position != i) {
            violations.push_back({"citations[" + std::to_string(i) + "].position",
                                  "positions must be 0..n-1 strictly increasing"});
        }
        if (c.ref_index && *c.ref_index >= doc.references.size()) {
            violations.push_back({"citations[" + std::to_string(i) + "].ref_index",
                                  "must index into references (have " +
                                      std::to_string(doc.references.size()) + " entries)"});
        }
    }
    for (std::size_t i = 0; i < doc.references.size(); ++i) {
        if (doc.references[i].raw.empty()) {
            violations.push_back(
                {"references[" + std::to_string(i) + "].raw", "must be non-empty"});
        }
    }
    return violations;
}

std::vector<Violation> validate_corpus(const std::vector<Document>& docs) {
    std::vector<Violation> violations;
    std::unordered_map<std::string, std::size_t> seen;
    for (const Document& doc : docs) {
        const auto [it, inserted] = seen.emplace(doc.doc_id, 1);
        if (!inserted && it->second++ == 1) {
            violations.push_back({"doc_id", "duplicate doc_id '" + doc.doc_id + "'"});
        }
    }
    return violations;
}

} // namespace stemsim
