#include "stemsim/cli.hpp"

#include "helpers.hpp"
#include "stemsim/document.hpp"

#include <doctest.h>

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>

using namespace stemsim;
using nlohmann::json;

namespace {

struct CliResult {
    int code = 0;
    std::string out;
    std::string err;
};

CliResult run(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    CliResult result;
    result.code = run_cli(args, out, err);
    result.out = out.str();
    result.err = err.str();
    return result;
}

// Minimal structural validation against the shipped JSON Schema subset
// (type / required / properties / items).
bool matches_schema(const json& value, const json& schema);

bool matches_type(const json& value, const std::string& type) {
    if (type == "object") {
        return value.is_object();
    }
    if (type == "array") {
        return value.is_array();
    }
    if (type == "string") {
        return value.is_string();
    }
    if (type == "number") {
        return value.is_number();
    }
    if (type == "integer") {
        return value.is_number_integer() || value.is_number_unsigned();
    }
    if (type == "boolean") {
        return value.is_boolean();
    }
    if (type == "null") {
        return value.is_null();
    }
    return false;
}

bool matches_schema(const json& value, const json& schema) {
    if (schema.contains("type")) {
        const json& type = schema.at("type");
        if (type.is_string()) {
            if (!matches_type(value, type.get<std::string>())) {
                return false;
            }
        } else {  // list of alternatives
            bool any = false;
            for (const json& t : type) {
                any = any || matches_type(value, t.get<std::string>());
            }
            if (!any) {
                return false;
            }
        }
    }
    if (schema.contains("required")) {
        for (const json& key : schema.at("required")) {
            if (!value.contains(key.get<std::string>())) {
                return false;
            }
        }
    }
    if (schema.contains("properties") && value.is_object()) {
        for (const auto& [key, sub] : schema.at("properties").items()) {
            if (value.contains(key) && !matches_schema(value.at(key), sub)) {
                return false;
            }
        }
    }
    if (schema.contains("items") && value.is_array()) {
        for (const json& item : value) {
            if (!matches_schema(item, schema.at("items"))) {
                return false;
            }
        }
    }
    return true;
}

json load_schema(const std::string& name) {
    std::ifstream in(std::string(STEMSIM_SCHEMAS_DIR) + "/" + name);
    REQUIRE(in.good());
    return json::parse(in);
}

} // namespace

TEST_CASE("usage errors exit with code 2") {
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"query"}).code == 2);  // missing required options
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("end-to-end: generate, ingest, index, query, compare, report, evaluate") {
    helpers::TempDir dir;
    const std::string gen_dir = (dir.path / "gen").string();
    const std::string corpus_dir = (dir.path / "corpus").string();
    const std::string index_dir = (dir.path / "index").string();

    const CliResult generated = run({"generate", "--out", gen_dir, "--n", "40", "--seed", "3",
                                     "--identifiers", "120", "--distinct-identifiers", "40",
                                     "--identifier-universe", "120",
                                     "--words", "150", "--references", "6", "--citations", "9",
                                     "--plants", "2"});
    REQUIRE(generated.code == 0);
    CHECK(generated.out.find("42 documents") != std::string::npos);

    const CliResult ingested =
        run({"ingest", gen_dir + "/docs", "--out", corpus_dir});
    REQUIRE(ingested.code == 0);
    CHECK(ingested.out.find("ingested 42 documents") != std::string::npos);
    CHECK(ingested.out.find("identifiers") != std::string::npos);

    const CliResult indexed = run({"index", "--corpus", corpus_dir, "--out", index_dir});
    REQUIRE(indexed.code == 0);

    // query: planted case source should appear for the plant query
    std::ifstream cases_in(dir.path / "gen" / "cases.json");
    const json cases = json::parse(cases_in);
    const std::string plant = cases.at(0).at("query_doc");
    const std::string source = cases.at(0).at("source_doc");

    const CliResult queried = run({"--json", "query", "--corpus", corpus_dir, "--index",
                                   index_dir, "--doc", plant});
    REQUIRE(queried.code == 0);
    const json candidates = json::parse(queried.out);
    CHECK(matches_schema(candidates, load_schema("candidates.schema.json")));
    bool found = false;
    for (const json& id : candidates.at("union")) {
        found = found || id.get<std::string>() == source;
    }
    CHECK(found);

    const CliResult unknown = run({"query", "--corpus", corpus_dir, "--index", index_dir,
                                   "--doc", "nope"});
    CHECK(unknown.code == 2);
    CHECK(unknown.err.find("unknown document") != std::string::npos);

    // compare plant vs source: GIT must be applicable and high
    const CliResult compared = run({"--json", "compare", "--corpus", corpus_dir, "--a", plant,
                                    "--b", source});
    REQUIRE(compared.code == 0);
    const json report = json::parse(compared.out);
    CHECK(matches_schema(report, load_schema("report.schema.json")));
    CHECK(report.at("scores").at("GIT").at("value").get<double>() > 0.3);

    // compare identical doc with itself: all applicable measures 1.0
    const CliResult self = run({"--json", "compare", "--corpus", corpus_dir, "--a", source,
                                "--b", source});
    const json self_report = json::parse(self.out);
    for (const auto& [name, entry] : self_report.at("scores").items()) {
        if (!entry.at("value").is_null()) {
            CHECK(entry.at("value").get<double>() == doctest::Approx(1.0));
        }
    }

    // report: html carries the significance marker
    const CliResult html = run({"report", "--corpus", corpus_dir, "--index", index_dir, "--doc",
                                plant, "--format", "html"});
    REQUIRE(html.code == 0);
    CHECK(html.out.find("significant") != std::string::npos);
    const CliResult bad_format = run({"report", "--corpus", corpus_dir, "--index", index_dir,
                                      "--doc", plant, "--format", "yaml"});
    CHECK(bad_format.code == 2);

    // evaluate the generated manifest
    const CliResult evaluated =
        run({"--json", "evaluate", "--corpus", corpus_dir, "--index", index_dir, "--cases",
             (dir.path / "gen" / "cases.json").string()});
    REQUIRE(evaluated.code == 0);
    const json evaluation = json::parse(evaluated.out);
    CHECK(matches_schema(evaluation, load_schema("evaluation.schema.json")));
    CHECK(evaluation.at("recall").at("union").get<double>() == doctest::Approx(1.0));
    CHECK(evaluation.at("mrr").at("GIT").get<double>() > 0.5);

    // calibrate on the same corpus
    const CliResult calibrated = run({"--json", "calibrate", "--corpus", corpus_dir, "--n",
                                      "50", "--seed", "5"});
    REQUIRE(calibrated.code == 0);
    const json distributions = json::parse(calibrated.out);
    CHECK(matches_schema(distributions, load_schema("distributions.schema.json")));
    REQUIRE(distributions.at("distributions").size() == 7);
    CHECK(distributions.at("distributions").at(0).at("sample_size").get<int>() == 50);

    // explore emits schema-valid suspects
    const CliResult explored = run({"--json", "explore", "--corpus", corpus_dir, "--index",
                                    index_dir, "--limit", "5"});
    REQUIRE(explored.code == 0);
    const json suspects = json::parse(explored.out);
    CHECK(matches_schema(suspects, load_schema("suspects.schema.json")));
}

TEST_CASE("ingest: partial failure keeps going, all-fail is fatal") {
    helpers::TempDir dir;
    const auto write = [&](const std::string& name, const std::string& content) {
        std::ofstream out(dir.path / name);
        out << content;
    };
    write("good.json",
          R"({"doc_id":"g1","title":"","authors":[],"text":"","identifiers":[],)"
          R"("citations":[],"references":[]})");
    write("bad.json", "{truncated");
    write("good2.json",
          R"({"doc_id":"g2","title":"","authors":[],"text":"","identifiers":[],)"
          R"("citations":[],"references":[]})");

    const std::string corpus_dir = (dir.path / "corpus").string();
    const CliResult partial = run({"ingest", (dir.path / "good.json").string(),
                                   (dir.path / "bad.json").string(),
                                   (dir.path / "good2.json").string(), "--out", corpus_dir});
    CHECK(partial.code == 1);
    CHECK(partial.out.find("ingested 2 documents") != std::string::npos);
    CHECK(partial.err.find("bad.json") != std::string::npos);

    const CliResult all_fail =
        run({"ingest", (dir.path / "bad.json").string(), "--out", corpus_dir});
    CHECK(all_fail.code == 2);
}

TEST_CASE("ingest parses TEI files too") {
    helpers::TempDir dir;
    {
        std::ofstream out(dir.path / "doc.xml");
        out << "<TEI xml:id=\"t1\"><text><body><p>words here "
               "<formula><math><ci>x</ci></math></formula></p></body></text></TEI>";
    }
    const std::string corpus_dir = (dir.path / "corpus").string();
    const CliResult result = run({"ingest", (dir.path / "doc.xml").string(), "--out",
                                  corpus_dir});
    REQUIRE(result.code == 0);
    const Corpus corpus = Corpus::load(corpus_dir);
    REQUIRE(corpus.size() == 1);
    CHECK(corpus.at(0).doc_id == "t1");
    CHECK(corpus.at(0).identifiers == std::vector<std::string>{"x"});
}

TEST_CASE("config file reaches the pipeline through the CLI") {
    helpers::TempDir dir;
    {
        std::ofstream out(dir.path / "config.txt");
        out << "gates.min_references = 9\n";
    }
    const auto write_doc = [&](const std::string& id) {
        std::ofstream out(dir.path / (id + ".json"));
        Document doc;
        doc.doc_id = id;
        for (int i = 0; i < 25; ++i) {
            doc.identifiers.push_back("s" + std::to_string(i));
        }
        for (std::size_t i = 0; i < 4; ++i) {
            static const char* const kWords[] = {"alpha", "bravo", "charlie", "delta"};
            doc.references.push_back({"raw r" + std::to_string(i),
                                      std::string("a treatise on ") + kWords[i],
                                      {"author, a"}, std::nullopt});
            doc.citations.push_back({i, i});
        }
        out << serialize_json(doc);
    };
    write_doc("a");
    write_doc("b");
    const std::string corpus_dir = (dir.path / "corpus").string();
    REQUIRE(run({"ingest", (dir.path / "a.json").string(), (dir.path / "b.json").string(),
                 "--out", corpus_dir})
                .code == 0);

    // default gate (3 references) -> BC applicable
    const CliResult loose = run({"--json", "compare", "--corpus", corpus_dir, "--a", "a", "--b",
                                 "b"});
    CHECK_FALSE(json::parse(loose.out).at("scores").at("BC").at("value").is_null());

    // tightened gate (9 references) -> BC not applicable
    const CliResult tight = run({"--json", "--config", (dir.path / "config.txt").string(),
                                 "compare", "--corpus", corpus_dir, "--a", "a", "--b", "b"});
    CHECK(json::parse(tight.out).at("scores").at("BC").at("value").is_null());
}
