#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace stemsim::xml {

/// Element or text node of a parsed document. Children keep document order;
/// mixed content is preserved as interleaved element and text nodes.
struct Node {
    enum class Kind { element, text };

    Kind kind = Kind::element;
    std::string name;   // element nodes
    std::string value;  // text nodes (entity-decoded)
    std::vector<std::pair<std::string, std::string>> attributes;
    std::vector<Node> children;
    std::size_t line = 0;
    std::size_t column = 0;

    bool is_element(std::string_view element_name) const {
        return kind == Kind::element && name == element_name;
    }

    /// nullptr when the attribute is absent.
    const std::string* attribute(std::string_view attr_name) const;

    /// First child element with the given name, nullptr if none.
    const Node* child(std::string_view element_name) const;

    /// Concatenated text of this subtree, in document order.
    std::string all_text() const;
};

/// Parses a standalone XML document and returns its root element.
/// Non-validating; handles elements, attributes, character data, CDATA,
/// comments, processing instructions, a DOCTYPE preamble, the five
/// predefined entities and numeric character references.
/// Throws ParseError (with 1-based line/column) on malformed input.
Node parse(std::string_view input);

/// Escapes &, <, >, " and ' for use in generated markup.
std::string escape(std::string_view text);

} // namespace stemsim::xml
