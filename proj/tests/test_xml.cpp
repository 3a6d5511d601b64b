#include "stemsim/xml.hpp"

#include "stemsim/errors.hpp"

#include <doctest.h>

using namespace stemsim;

TEST_CASE("parses elements, attributes, and mixed content in order") {
    const xml::Node root = xml::parse(
        "<root a=\"1\" b='two'>hello <child>inner</child> tail</root>");
    CHECK(root.name == "root");
    REQUIRE(root.attribute("a") != nullptr);
    CHECK(*root.attribute("a") == "1");
    CHECK(*root.attribute("b") == "two");
    CHECK(root.attribute("missing") == nullptr);
    REQUIRE(root.children.size() == 3);
    CHECK(root.children[0].kind == xml::Node::Kind::text);
    CHECK(root.children[0].value == "hello ");
    CHECK(root.children[1].is_element("child"));
    CHECK(root.children[2].value == " tail");
    CHECK(root.all_text() == "hello inner tail");
}

TEST_CASE("self-closing elements and nesting") {
    const xml::Node root = xml::parse("<a><b/><c><d x='1'/></c></a>");
    REQUIRE(root.children.size() == 2);
    CHECK(root.children[0].is_element("b"));
    CHECK(root.children[0].children.empty());
    CHECK(root.children[1].child("d") != nullptr);
}

TEST_CASE("declaration, comments, doctype, PI, and CDATA are handled") {
    const xml::Node root = xml::parse(
        "<?xml version=\"1.0\"?>\n"
        "<!DOCTYPE doc [<!ENTITY junk \"x\">]>\n"
        "<!-- comment -->\n"
        "<doc><!-- inner --><![CDATA[a <raw> & b]]><?pi data?></doc>");
    CHECK(root.name == "doc");
    CHECK(root.all_text() == "a <raw> & b");
}

TEST_CASE("entities decode in text and attributes") {
    const xml::Node root = xml::parse("<d t=\"&lt;&amp;&gt;\">&quot;&apos;&#65;&#x42;</d>");
    CHECK(*root.attribute("t") == "<&>");
    CHECK(root.all_text() == "\"'AB");
}

TEST_CASE("malformed documents raise ParseError with position") {
    CHECK_THROWS_AS(xml::parse("<a><b></a>"), ParseError);
    CHECK_THROWS_AS(xml::parse("<a>unclosed"), ParseError);
    CHECK_THROWS_AS(xml::parse("<a attr></a>"), ParseError);
    CHECK_THROWS_AS(xml::parse("<a>&unknown;</a>"), ParseError);
    CHECK_THROWS_AS(xml::parse("no root"), ParseError);
    CHECK_THROWS_AS(xml::parse("<a></a><b></b>"), ParseError);

    try {
        xml::parse("<a>\n  <b></c>\n</a>");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() > 1);
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("duplicate attributes are rejected") {
    CHECK_THROWS_AS(xml::parse("<a x='1' x='2'/>"), ParseError);
}

TEST_CASE("escape round-trips through the parser") {
    const std::string nasty = "a<b&c>\"d'e";
    const xml::Node root = xml::parse("<r t=\"" + xml::escape(nasty) + "\">" +
                                      xml::escape(nasty) + "</r>");
    CHECK(*root.attribute("t") == nasty);
    CHECK(root.all_text() == nasty);
}
