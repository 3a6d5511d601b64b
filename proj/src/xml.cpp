#include "stemsim/xml.hpp"

#include "stemsim/errors.hpp"

#include <cctype>

namespace stemsim::xml {

namespace {

bool is_name_start(unsigned char c) {
    return std::isalpha(c) || c == '_' || c == ':' || c >= 0x80;
}

bool is_name_char(unsigned char c) {
    return is_name_start(c) || std::isdigit(c) || c == '-' || c == '.';
}

bool is_ws(unsigned char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r';
}

class Parser {
public:
    explicit Parser(std::string_view input) : input_(input) {}

    Node parse_document() {
        skip_prolog();
        if (eof() || peek() != '<') {
            fail("expected root element");
        }
        Node root = parse_element();
        skip_misc();
        if (!eof()) {
            fail("content after root element");
        }
        return root;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, line_, column_);
    }

    bool eof() const { return pos_ >= input_.size(); }

    char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < input_.size() ? input_[pos_ + ahead] : '\0';
    }

    char advance() {
        const char c = input_[pos_++];
        if (c == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        return c;
    }

    bool consume(std::string_view literal) {
        if (input_.substr(pos_).starts_with(literal)) {
            for (std::size_t i = 0; i < literal.size(); ++i) {
                advance();
            }
            return true;
        }
        return false;
    }

    void expect(std::string_view literal, const char* what) {
        if (!consume(literal)) {
            fail(std::string("expected ") + what);
        }
    }

    void skip_ws() {
        while (!eof() && is_ws(static_cast<unsigned char>(peek()))) {
            advance();
        }
    }

    void skip_comment() {
        // positioned after "<!--"
        while (!eof()) {
            if (consume("-->")) {
                return;
            }
            advance();
        }
        fail("unterminated comment");
    }

    void skip_pi() {
        while (!eof()) {
            if (consume("?>")) {
                return;
            }
            advance();
        }
        fail("unterminated processing instruction");
    }

    void skip_doctype() {
        // positioned after "<!DOCTYPE"; internal subsets nest in brackets
        int bracket_depth = 0;
        while (!eof()) {
            const char c = advance();
            if (c == '[') {
                ++bracket_depth;
            } else if (c == ']') {
                --bracket_depth;
            } else if (c == '>' && bracket_depth <= 0) {
                return;
            }
        }
        fail("unterminated DOCTYPE");
    }

    void skip_misc() {
        while (true) {
            skip_ws();
            if (consume("<!--")) {
                skip_comment();
            } else if (consume("<?")) {
                skip_pi();
            } else {
                return;
            }
        }
    }

    void skip_prolog() {
        skip_misc();
        if (consume("<!DOCTYPE")) {
            skip_doctype();
        }
        skip_misc();
    }

    std::string parse_name() {
        if (eof() || !is_name_start(static_cast<unsigned char>(peek()))) {
            fail("expected name");
        }
        std::string name;
        while (!eof() && is_name_char(static_cast<unsigned char>(peek()))) {
            name.push_back(advance());
        }
        return name;
    }

    void append_utf8(std::string& out, uint32_t cp) {
        if (cp < 0x80) {
            out.push_back(static_cast<char>(cp));
        } else if (cp < 0x800) {
            out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        } else if (cp < 0x10000) {
            out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        } else {
            out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        }
    }

    void parse_entity(std::string& out) {
        // positioned after '&'
        std::string entity;
        while (!eof() && peek() != ';' && entity.size() <= 10) {
            entity.push_back(advance());
        }
        if (eof() || peek() != ';') {
            fail("unterminated entity reference");
        }
        advance();
        if (entity == "lt") {
            out.push_back('<');
        } else if (entity == "gt") {
            out.push_back('>');
        } else if (entity == "amp") {
            out.push_back('&');
        } else if (entity == "apos") {
            out.push_back('\'');
        } else if (entity == "quot") {
            out.push_back('"');
        } else if (!entity.empty() && entity[0] == '#') {
            uint32_t cp = 0;
            bool ok = entity.size() > 1;
            if (entity.size() > 2 && (entity[1] == 'x' || entity[1] == 'X')) {
                for (std::size_t i = 2; i < entity.size(); ++i) {
                    const char c = entity[i];
                    if (!std::isxdigit(static_cast<unsigned char>(c))) {
                        ok = false;
                        break;
                    }
                    cp = cp * 16 + (std::isdigit(static_cast<unsigned char>(c))
                                        ? c - '0'
                                        : std::tolower(c) - 'a' + 10);
                }
            } else {
                for (std::size_t i = 1; i < entity.size(); ++i) {
                    if (!std::isdigit(static_cast<unsigned char>(entity[i]))) {
                        ok = false;
                        break;
                    }
                    cp = cp * 10 + (entity[i] - '0');
                }
            }
            if (!ok || cp == 0 || cp > 0x10FFFF) {
                fail("bad character reference '&" + entity + ";'");
            }
            append_utf8(out, cp);
        } else {
            fail("unknown entity '&" + entity + ";'");
        }
    }

    std::string parse_attribute_value() {
        if (eof() || (peek() != '"' && peek() != '\'')) {
            fail("expected quoted attribute value");
        }
        const char quote = advance();
        std::string value;
        while (!eof() && peek() != quote) {
            if (peek() == '<') {
                fail("'<' in attribute value");
            }
            if (peek() == '&') {
                advance();
                parse_entity(value);
            } else {
                value.push_back(advance());
            }
        }
        if (eof()) {
            fail("unterminated attribute value");
        }
        advance();
        return value;
    }

    Node parse_element() {
        const std::size_t start_line = line_;
        const std::size_t start_column = column_;
        expect("<", "'<'");
        Node node;
        node.kind = Node::Kind::element;
        node.line = start_line;
        node.column = start_column;
        node.name = parse_name();

        while (true) {
            skip_ws();
            if (eof()) {
                fail("unterminated start tag for '" + node.name + "'");
            }
            if (consume("/>")) {
                return node;
            }
            if (consume(">")) {
                break;
            }
            std::string attr_name = parse_name();
            skip_ws();
            expect("=", "'=' after attribute name");
            skip_ws();
            std::string attr_value = parse_attribute_value();
            for (const auto& [existing, _] : node.attributes) {
                if (existing == attr_name) {
                    fail("duplicate attribute '" + attr_name + "'");
                }
            }
            node.attributes.emplace_back(std::move(attr_name), std::move(attr_value));
        }

        parse_content(node);
        return node;
    }

    void parse_content(Node& node) {
        std::string text;
        const auto flush_text = [&]() {
            if (!text.empty()) {
                Node text_node;
                text_node.kind = Node::Kind::text;
                text_node.value = std::move(text);
                node.children.push_back(std::move(text_node));
                text.clear();
            }
        };

        while (true) {
            if (eof()) {
                fail("unexpected end of input inside element '" + node.name + "'");
            }
            if (peek() == '<') {
                if (consume("<!--")) {
                    skip_comment();
                    continue;
                }
                if (consume("<![CDATA[")) {
                    while (!eof() && !input_.substr(pos_).starts_with("]]>")) {
                        text.push_back(advance());
                    }
                    expect("]]>", "']]>'");
                    continue;
                }
                if (consume("<?")) {
                    skip_pi();
                    continue;
                }
                if (peek(1) == '/') {
                    flush_text();
                    expect("</", "'</'");
                    const std::string closing = parse_name();
                    if (closing != node.name) {
                        fail("mismatched end tag '</" + closing + ">' for '<" + node.name + ">'");
                    }
                    skip_ws();
                    expect(">", "'>'");
                    return;
                }
                flush_text();
                node.children.push_back(parse_element());
                continue;
            }
            if (peek() == '&') {
                advance();
                parse_entity(text);
                continue;
            }
            text.push_back(advance());
        }
    }

    std::string_view input_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
};

void collect_text(const Node& node, std::string& out) {
    if (node.kind == Node::Kind::text) {
        out += node.value;
        return;
    }
    for (const Node& child : node.children) {
        collect_text(child, out);
    }
}

} // namespace

const std::string* Node::attribute(std::string_view attr_name) const {
    for (const auto& [name_, value_] : attributes) {
        if (name_ == attr_name) {
            return &value_;
        }
    }
    return nullptr;
}

const Node* Node::child(std::string_view element_name) const {
    for (const Node& c : children) {
        if (c.is_element(element_name)) {
            return &c;
        }
    }
    return nullptr;
}

std::string Node::all_text() const {
    std::string out;
    collect_text(*this, out);
    return out;
}

Node parse(std::string_view input) {
    return Parser(input).parse_document();
}

std::string escape(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

} // namespace stemsim::xml
