#include "stemsim/cli.hpp"

#include "stemsim/calibration.hpp"
#include "stemsim/config.hpp"
#include "stemsim/corpus.hpp"
#include "stemsim/errors.hpp"
#include "stemsim/index.hpp"
#include "stemsim/pipeline.hpp"
#include "stemsim/serialize.hpp"
#include "stemsim/synthetic.hpp"
#include "stemsim/text.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

namespace stemsim {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitPartial = 1;
constexpr int kExitUsage = 2;

struct GlobalOptions {
    std::string config_path;
    std::size_t threads = 0;  // 0: use config / hardware
    bool json_output = false;
    bool verbose = false;
};

RunConfig load_run_config(const GlobalOptions& global) {
    RunConfig config = global.config_path.empty()
                           ? RunConfig::load(std::nullopt)
                           : RunConfig::load(fs::path(global.config_path));
    if (global.threads > 0) {
        config.threads = global.threads;
    }
    return config;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot read " + path.string());
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const fs::path& path, std::string_view content) {
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    out << content;
}

void emit(const std::string& content, const std::string& out_path, std::ostream& out) {
    if (out_path.empty()) {
        out << content;
        if (content.empty() || content.back() != '\n') {
            out << '\n';
        }
    } else {
        write_file(out_path, content);
    }
}

std::vector<fs::path> expand_inputs(const std::vector<std::string>& paths) {
    std::vector<fs::path> files;
    for (const std::string& raw : paths) {
        const fs::path path(raw);
        if (fs::is_directory(path)) {
            std::vector<fs::path> found;
            for (const auto& entry : fs::recursive_directory_iterator(path)) {
                if (!entry.is_regular_file()) {
                    continue;
                }
                const std::string ext = entry.path().extension().string();
                if (ext == ".json" || ext == ".xml" || ext == ".tei") {
                    found.push_back(entry.path());
                }
            }
            std::sort(found.begin(), found.end());
            files.insert(files.end(), found.begin(), found.end());
        } else {
            files.push_back(path);
        }
    }
    return files;
}

// features points into corpus, so the pair is pinned in place:
// members initialize in order and the object never moves.
struct LoadedCorpus {
    Corpus corpus;
    CorpusFeatures features;

    LoadedCorpus(Corpus loaded, const RunConfig& config)
        : corpus(std::move(loaded)),
          features(corpus, config.consolidation, config.effective_threads()) {}
    LoadedCorpus(const LoadedCorpus&) = delete;
    LoadedCorpus& operator=(const LoadedCorpus&) = delete;
};

LoadedCorpus load_corpus(const fs::path& dir, const RunConfig& config) {
    return LoadedCorpus(Corpus::load(dir), config);
}

SearchIndex build_index(const CorpusFeatures& features) {
    SearchIndex index;
    for (std::size_t d = 0; d < features.size(); ++d) {
        const DocumentFeatures& f = features.of(d);
        index.add_document(f.doc_id, features.corpus().at(d).identifiers, f.citation_sequence,
                           f.fingerprints);
    }
    return index;
}

// --- ingest ------------------------------------------------------------------

int cmd_ingest(const GlobalOptions& global, const std::vector<std::string>& inputs,
               const std::string& format, const std::string& out_dir, std::ostream& out,
               std::ostream& err) {
    const RunConfig config = load_run_config(global);
    const std::vector<fs::path> files = expand_inputs(inputs);
    if (files.empty()) {
        err << "error: no input files found\n";
        return kExitUsage;
    }

    std::vector<Document> docs;
    std::size_t failures = 0;
    std::vector<std::string> seen_ids;
    for (const fs::path& file : files) {
        try {
            const std::string bytes = read_file(file);
            Document doc;
            std::vector<std::string> warnings;
            const std::string ext = file.extension().string();
            const bool is_tei =
                format == "tei" || (format == "auto" && (ext == ".xml" || ext == ".tei"));
            if (is_tei) {
                TeiParseResult parsed = parse_tei_verbose(bytes);
                doc = std::move(parsed.document);
                warnings = std::move(parsed.warnings);
            } else {
                doc = parse_json(bytes);
            }
            if (global.verbose) {
                for (const std::string& warning : warnings) {
                    err << file.string() << ": warning: " << warning << '\n';
                }
            }
            const std::vector<Violation> violations = validate(doc);
            if (!violations.empty()) {
                throw Error("invalid document: " + violations.front().field + " " +
                            violations.front().rule);
            }
            if (std::find(seen_ids.begin(), seen_ids.end(), doc.doc_id) != seen_ids.end()) {
                throw Error("duplicate doc_id '" + doc.doc_id + "'");
            }
            seen_ids.push_back(doc.doc_id);
            docs.push_back(std::move(doc));
        } catch (const std::exception& e) {
            ++failures;
            err << file.string() << ": error: " << e.what() << '\n';
        }
    }
    if (docs.empty()) {
        err << "error: all " << failures << " input files failed\n";
        return kExitUsage;
    }

    Corpus corpus(std::move(docs));
    corpus.save(out_dir);
    const CorpusFeatures features(corpus, config.consolidation, config.effective_threads());

    std::size_t identifiers = 0;
    std::size_t citations = 0;
    std::size_t references = 0;
    std::size_t fingerprints = 0;
    for (std::size_t d = 0; d < corpus.size(); ++d) {
        identifiers += corpus.at(d).identifiers.size();
        citations += corpus.at(d).citations.size();
        references += corpus.at(d).references.size();
        fingerprints += features.of(d).fingerprints.hashes.size();
    }
    out << "ingested " << corpus.size() << " documents into " << out_dir << '\n'
        << "  references:   " << references << '\n'
        << "  citations:    " << citations << '\n'
        << "  fingerprints: " << fingerprints << '\n'
        << "  identifiers:  " << identifiers << '\n'
        << "  consolidated reference identities: " << features.consolidation().cluster_count
        << '\n';
    if (failures > 0) {
        err << failures << " file(s) failed\n";
        return kExitPartial;
    }
    return kExitOk;
}

// --- generate ----------------------------------------------------------------

int cmd_generate(const GeneratorConfig& generator_config, const std::string& out_dir,
                 std::ostream& out) {
    const SyntheticCorpus corpus = generate_synthetic(generator_config);
    const fs::path docs_dir = fs::path(out_dir) / "docs";
    fs::create_directories(docs_dir);
    for (const Document& doc : corpus.documents) {
        write_file(docs_dir / (doc.doc_id + ".json"), serialize_json(doc));
    }
    write_file(fs::path(out_dir) / "cases.json", cases_to_json(corpus.cases));
    write_file(fs::path(out_dir) / "cases.csv", cases_to_csv(corpus.cases));
    if (!corpus.decoy_pairs.empty()) {
        write_file(fs::path(out_dir) / "decoys.json", cases_to_json(corpus.decoy_pairs));
    }
    out << "generated " << corpus.documents.size() << " documents in " << docs_dir.string()
        << " (" << corpus.cases.size() << " planted cases, " << corpus.decoy_pairs.size()
        << " decoy pairs)\n";
    return kExitOk;
}

// --- index -------------------------------------------------------------------

int cmd_index(const GlobalOptions& global, const std::string& corpus_dir,
              const std::string& out_dir, std::ostream& out) {
    const RunConfig config = load_run_config(global);
    const LoadedCorpus loaded = load_corpus(corpus_dir, config);
    const SearchIndex index = build_index(loaded.features);
    index.save(out_dir);
    out << "indexed " << index.doc_count() << " documents into " << out_dir << '\n';
    return kExitOk;
}

// --- query -------------------------------------------------------------------

int cmd_query(const GlobalOptions& global, const std::string& corpus_dir,
              const std::string& index_dir, const std::string& doc_id, std::size_t top_k_flag,
              std::ostream& out, std::ostream& err) {
    const RunConfig config = load_run_config(global);
    const LoadedCorpus loaded = load_corpus(corpus_dir, config);
    const std::optional<std::size_t> idx = loaded.corpus.find(doc_id);
    if (!idx) {
        err << "error: unknown document '" << doc_id << "'\n";
        return kExitUsage;
    }
    const SearchIndex index = SearchIndex::load(index_dir);
    const std::size_t k = top_k_flag > 0 ? top_k_flag : config.top_k;
    const CandidateSet candidates = retrieve_candidates(loaded.features, index, *idx, k);
    if (global.json_output) {
        emit(candidates_to_json(doc_id, candidates), "", out);
        return kExitOk;
    }
    const auto print_channel = [&](const char* name, const std::vector<std::string>& ids) {
        out << name << " (" << ids.size() << "):";
        for (const std::string& id : ids) {
            out << ' ' << id;
        }
        out << '\n';
    };
    print_channel("math", candidates.math);
    print_channel("citation", candidates.citation);
    print_channel("text", candidates.text);
    print_channel("union", candidates.union_ids);
    return kExitOk;
}

// --- compare -----------------------------------------------------------------

int cmd_compare(const GlobalOptions& global, const std::string& corpus_dir, const std::string& a,
                const std::string& b, std::ostream& out, std::ostream& err) {
    const RunConfig config = load_run_config(global);
    const LoadedCorpus loaded = load_corpus(corpus_dir, config);
    const std::optional<std::size_t> ia = loaded.corpus.find(a);
    const std::optional<std::size_t> ib = loaded.corpus.find(b);
    if (!ia || !ib) {
        err << "error: unknown document '" << (!ia ? a : b) << "'\n";
        return kExitUsage;
    }
    const SimilarityReport report = compare_pair(loaded.features.of(*ia), loaded.features.of(*ib),
                                                 config.gates, config.thresholds);
    if (global.json_output) {
        emit(report_to_json_string(report), "", out);
        return kExitOk;
    }
    out << "comparison " << report.doc_a << " vs " << report.doc_b << '\n';
    for (Measure m : kAllMeasures) {
        const MeasureScore& s = report.score(m);
        out << "  " << measure_name(m) << ": ";
        if (s.applicable()) {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.4f", *s.value);
            out << buf << (report.verdict(m) ? "  [significant]" : "");
        } else {
            out << "n/a (" << s.reason << ")";
        }
        out << '\n';
    }
    return kExitOk;
}

// --- calibrate ---------------------------------------------------------------

int cmd_calibrate(const GlobalOptions& global, const std::string& corpus_dir, std::size_t n,
                  std::uint64_t seed_flag, bool seed_given, const std::string& csv_path,
                  std::ostream& out, std::ostream& err) {
    const RunConfig config = load_run_config(global);
    const LoadedCorpus loaded = load_corpus(corpus_dir, config);
    const std::size_t sample_size = n > 0 ? n : config.sample_size;
    const std::uint64_t seed = seed_given ? seed_flag : config.seed;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    try {
        pairs = sample_pairs(loaded.features, sample_size, seed);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitPartial;
    }
    const auto distributions = score_distributions(loaded.features, pairs, config.gates,
                                                   config.effective_threads());
    const ThresholdConfig suggested = suggest_thresholds(distributions);
    if (!csv_path.empty()) {
        write_file(csv_path, distributions_to_csv(distributions));
    }
    if (global.json_output) {
        emit(distributions_to_json(distributions, suggested), "", out);
    } else {
        out << distributions_to_csv(distributions);
    }
    return kExitOk;
}

// --- evaluate ----------------------------------------------------------------

int cmd_evaluate(const GlobalOptions& global, const std::string& corpus_dir,
                 const std::string& index_dir, const std::string& cases_path,
                 std::size_t top_k_flag, const std::string& csv_path, std::ostream& out,
                 std::ostream& err) {
    const RunConfig config = load_run_config(global);
    const LoadedCorpus loaded = load_corpus(corpus_dir, config);
    const SearchIndex index = SearchIndex::load(index_dir);
    const std::vector<TestCase> cases = load_cases(cases_path);
    if (cases.empty()) {
        err << "error: case manifest is empty\n";
        return kExitUsage;
    }
    AnalyzeOptions options;
    options.top_k = top_k_flag > 0 ? top_k_flag : config.top_k;
    options.gates = config.gates;
    options.thresholds = config.thresholds;
    options.threads = config.effective_threads();
    const EvaluationResult result = evaluate(loaded.features, index, cases, options);
    if (!csv_path.empty()) {
        write_file(csv_path, evaluation_to_csv(result));
    }
    if (global.json_output) {
        emit(evaluation_to_json(result), "", out);
    } else {
        out << evaluation_to_csv(result);
    }
    return kExitOk;
}

// --- explore -----------------------------------------------------------------

int cmd_explore(const GlobalOptions& global, const std::string& corpus_dir,
                const std::string& index_dir, std::size_t limit_flag, std::size_t top_k_flag,
                std::ostream& out) {
    const RunConfig config = load_run_config(global);
    const LoadedCorpus loaded = load_corpus(corpus_dir, config);
    const SearchIndex index = SearchIndex::load(index_dir);
    ExploreOptions options;
    options.top_k = top_k_flag > 0 ? top_k_flag : config.top_k;
    options.histo_gate = config.explore_histo_gate;
    options.limit = limit_flag > 0 ? limit_flag : config.explore_limit;
    options.gates = config.gates;
    options.thresholds = config.thresholds;
    options.threads = config.effective_threads();
    const std::vector<SuspectPair> suspects = explore(loaded.features, index, options);
    if (global.json_output) {
        emit(suspects_to_json(suspects), "", out);
        return kExitOk;
    }
    out << "rank,doc_a,doc_b,histo,git\n";
    for (std::size_t i = 0; i < suspects.size(); ++i) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.4f,%.4f", suspects[i].histo_score,
                      suspects[i].git_score);
        out << (i + 1) << ',' << suspects[i].doc_a << ',' << suspects[i].doc_b << ',' << buf
            << '\n';
    }
    return kExitOk;
}

// --- report ------------------------------------------------------------------

int cmd_report(const GlobalOptions& global, const std::string& corpus_dir,
               const std::string& index_dir, const std::string& doc_id,
               const std::string& format_name, std::size_t top_k_flag,
               const std::string& out_path, std::ostream& out, std::ostream& err) {
    const RunConfig config = load_run_config(global);
    const ReportFormat format = report_format_from_name(format_name);
    const LoadedCorpus loaded = load_corpus(corpus_dir, config);
    if (!loaded.corpus.find(doc_id)) {
        err << "error: unknown document '" << doc_id << "'\n";
        return kExitUsage;
    }
    const SearchIndex index = SearchIndex::load(index_dir);
    AnalyzeOptions options;
    options.top_k = top_k_flag > 0 ? top_k_flag : config.top_k;
    options.gates = config.gates;
    options.thresholds = config.thresholds;
    options.threads = config.effective_threads();
    const Analysis analysis = analyze(loaded.features, index, doc_id, options);

    // render in GIT-descending order, not-applicable last
    std::vector<SimilarityReport> reports;
    for (const std::size_t idx : ranked_reports(analysis, Channel::union_all, Measure::git)) {
        reports.push_back(analysis.reports[idx]);
    }
    if (format == ReportFormat::json) {
        emit(analysis_to_json(analysis, config.thresholds), out_path, out);
    } else {
        emit(render_report(reports, format, config.thresholds), out_path, out);
    }
    if (!analysis.diagnostic.empty()) {
        err << "note: " << analysis.diagnostic << '\n';
    }
    return kExitOk;
}

GeneratorConfig parse_plant_spec_file(GeneratorConfig config, const fs::path& path) {
    const json root = json::parse(read_file(path), nullptr, false);
    if (root.is_discarded() || !root.is_object()) {
        throw ParseError("plant spec is not a JSON object: " + path.string());
    }
    if (root.contains("plants")) {
        for (const json& item : root.at("plants")) {
            PlantSpec spec;
            spec.case_id = item.value("case_id", "case" + std::to_string(config.plants.size()));
            spec.identifier_fraction = item.value("identifier_fraction", spec.identifier_fraction);
            spec.citation_fraction = item.value("citation_fraction", spec.citation_fraction);
            spec.text_fraction = item.value("text_fraction", spec.text_fraction);
            config.plants.push_back(std::move(spec));
        }
    }
    if (root.contains("decoys")) {
        for (const json& item : root.at("decoys")) {
            DecoySpec spec;
            const std::string kind = item.value("kind", "shared_author");
            if (kind == "shared_author") {
                spec.kind = DecoySpec::Kind::shared_author;
            } else if (kind == "older_cites_newer") {
                spec.kind = DecoySpec::Kind::older_cites_newer;
            } else {
                throw SchemaError("decoys.kind", "expected shared_author or older_cites_newer");
            }
            spec.case_id = item.value("case_id", "decoy" + std::to_string(config.decoys.size()));
            spec.identifier_fraction = item.value("identifier_fraction", spec.identifier_fraction);
            spec.citation_fraction = item.value("citation_fraction", spec.citation_fraction);
            spec.text_fraction = item.value("text_fraction", spec.text_fraction);
            config.decoys.push_back(std::move(spec));
        }
    }
    return config;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"hybrid similarity analysis for STEM document collections"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions global;
    app.add_option("--config", global.config_path, "key = value configuration file");
    app.add_option("--threads", global.threads, "worker thread cap (0 = hardware)");
    app.add_flag("--json", global.json_output, "machine-readable JSON output");
    app.add_flag("-v,--verbose", global.verbose, "print parse warnings");

    // ingest
    auto* ingest = app.add_subcommand("ingest", "parse documents into a corpus store");
    std::vector<std::string> ingest_inputs;
    std::string ingest_format = "auto";
    std::string ingest_out;
    ingest->add_option("paths", ingest_inputs, "input files or directories")->required();
    ingest->add_option("--format", ingest_format, "tei, json, or auto (by extension)")
        ->check(CLI::IsMember({"tei", "json", "auto"}));
    ingest->add_option("--out", ingest_out, "corpus store directory")->required();

    // generate
    auto* generate = app.add_subcommand("generate", "emit a synthetic corpus");
    GeneratorConfig generator_config;
    std::string generate_out;
    std::string plant_spec_path;
    std::size_t plant_count = 0;
    std::size_t decoy_shared = 0;
    std::size_t decoy_cites = 0;
    double plant_identifier_frac = 0.5;
    double plant_citation_frac = 0.4;
    double plant_text_frac = 0.3;
    generate->add_option("--out", generate_out, "output directory")->required();
    generate->add_option("--n", generator_config.n_docs, "background document count");
    generate->add_option("--seed", generator_config.seed, "generator seed");
    generate->add_option("--identifiers", generator_config.identifiers_per_doc,
                         "identifier occurrences per document");
    generate->add_option("--distinct-identifiers",
                         generator_config.distinct_identifiers_per_doc,
                         "distinct identifiers per document");
    generate->add_option("--references", generator_config.references_per_doc,
                         "references per document");
    generate->add_option("--citations", generator_config.citations_per_doc,
                         "in-text citations per document");
    generate->add_option("--words", generator_config.words_per_doc, "text words per document");
    generate->add_option("--identifier-universe", generator_config.identifier_universe,
                         "corpus-wide identifier vocabulary");
    generate->add_option("--vocabulary", generator_config.vocabulary, "text vocabulary size");
    generate->add_option("--plants", plant_count, "planted cases with default fractions");
    generate->add_option("--plant-identifier-frac", plant_identifier_frac,
                         "identifier fraction for --plants");
    generate->add_option("--plant-citation-frac", plant_citation_frac,
                         "citation fraction for --plants");
    generate->add_option("--plant-text-frac", plant_text_frac, "text fraction for --plants");
    generate->add_option("--decoys-shared-author", decoy_shared,
                         "decoy pairs sharing an author");
    generate->add_option("--decoys-older-cites-newer", decoy_cites,
                         "decoy pairs where the older document cites the newer");
    generate->add_option("--plant-spec", plant_spec_path,
                         "JSON file with explicit plant/decoy specs");

    // index
    auto* index_cmd = app.add_subcommand("index", "build the retrieval index");
    std::string index_corpus;
    std::string index_out;
    index_cmd->add_option("--corpus", index_corpus, "corpus store directory")->required();
    index_cmd->add_option("--out", index_out, "index directory")->required();

    // query
    auto* query = app.add_subcommand("query", "stage-1 candidate retrieval");
    std::string query_corpus;
    std::string query_index;
    std::string query_doc;
    std::size_t query_top_k = 0;
    query->add_option("--corpus", query_corpus, "corpus store directory")->required();
    query->add_option("--index", query_index, "index directory")->required();
    query->add_option("--doc", query_doc, "query document id")->required();
    query->add_option("--top-k", query_top_k, "candidates per channel");

    // compare
    auto* compare = app.add_subcommand("compare", "detailed analysis of one pair");
    std::string compare_corpus;
    std::string compare_a;
    std::string compare_b;
    compare->add_option("--corpus", compare_corpus, "corpus store directory")->required();
    compare->add_option("--a", compare_a, "query document id")->required();
    compare->add_option("--b", compare_b, "candidate document id")->required();

    // calibrate
    auto* calibrate = app.add_subcommand("calibrate", "chance-level score distributions");
    std::string calibrate_corpus;
    std::size_t calibrate_n = 0;
    std::uint64_t calibrate_seed = 0;
    std::string calibrate_csv;
    calibrate->add_option("--corpus", calibrate_corpus, "corpus store directory")->required();
    calibrate->add_option("--n", calibrate_n, "sampled pair count");
    auto* calibrate_seed_opt = calibrate->add_option("--seed", calibrate_seed, "sampling seed");
    calibrate->add_option("--csv", calibrate_csv, "also write CSV to this path");

    // evaluate
    auto* evaluate_cmd = app.add_subcommand("evaluate", "run a test-case manifest");
    std::string evaluate_corpus;
    std::string evaluate_index;
    std::string evaluate_cases;
    std::size_t evaluate_top_k = 0;
    std::string evaluate_csv;
    evaluate_cmd->add_option("--corpus", evaluate_corpus, "corpus store directory")->required();
    evaluate_cmd->add_option("--index", evaluate_index, "index directory")->required();
    evaluate_cmd->add_option("--cases", evaluate_cases, "case manifest (JSON or CSV)")
        ->required();
    evaluate_cmd->add_option("--top-k", evaluate_top_k, "candidates per channel");
    evaluate_cmd->add_option("--csv", evaluate_csv, "also write CSV to this path");

    // explore
    auto* explore_cmd = app.add_subcommand("explore", "corpus-wide suspicious-pair scan");
    std::string explore_corpus;
    std::string explore_index;
    std::size_t explore_limit = 0;
    std::size_t explore_top_k = 0;
    explore_cmd->add_option("--corpus", explore_corpus, "corpus store directory")->required();
    explore_cmd->add_option("--index", explore_index, "index directory")->required();
    explore_cmd->add_option("--limit", explore_limit, "suspect pairs to keep");
    explore_cmd->add_option("--top-k", explore_top_k, "candidates per channel");

    // report
    auto* report = app.add_subcommand("report", "analyze one document and render a report");
    std::string report_corpus;
    std::string report_index;
    std::string report_doc;
    std::string report_format = "json";
    std::size_t report_top_k = 0;
    std::string report_out;
    report->add_option("--corpus", report_corpus, "corpus store directory")->required();
    report->add_option("--index", report_index, "index directory")->required();
    report->add_option("--doc", report_doc, "query document id")->required();
    report->add_option("--format", report_format, "json or html")
        ->check(CLI::IsMember({"json", "html"}));
    report->add_option("--top-k", report_top_k, "candidates per channel");
    report->add_option("--out", report_out, "write to file instead of stdout");

    std::vector<std::string> argv_storage;
    argv_storage.push_back("stemsim");
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    argv.reserve(argv_storage.size());
    for (std::string& s : argv_storage) {
        argv.push_back(s.data());
    }

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        std::ostringstream message;
        const int code = app.exit(e, out, message);
        err << message.str();
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (ingest->parsed()) {
            return cmd_ingest(global, ingest_inputs, ingest_format, ingest_out, out, err);
        }
        if (generate->parsed()) {
            for (std::size_t i = 0; i < plant_count; ++i) {
                generator_config.plants.push_back({"case" + std::to_string(i),
                                                   plant_identifier_frac, plant_citation_frac,
                                                   plant_text_frac});
            }
            for (std::size_t i = 0; i < decoy_shared; ++i) {
                generator_config.decoys.push_back(
                    {DecoySpec::Kind::shared_author, "decoy_author" + std::to_string(i),
                     0.6, 0.4, 0.3});
            }
            for (std::size_t i = 0; i < decoy_cites; ++i) {
                generator_config.decoys.push_back(
                    {DecoySpec::Kind::older_cites_newer, "decoy_cites" + std::to_string(i),
                     0.6, 0.4, 0.3});
            }
            if (!plant_spec_path.empty()) {
                generator_config = parse_plant_spec_file(std::move(generator_config),
                                                         plant_spec_path);
            }
            return cmd_generate(generator_config, generate_out, out);
        }
        if (index_cmd->parsed()) {
            return cmd_index(global, index_corpus, index_out, out);
        }
        if (query->parsed()) {
            return cmd_query(global, query_corpus, query_index, query_doc, query_top_k, out,
                             err);
        }
        if (compare->parsed()) {
            return cmd_compare(global, compare_corpus, compare_a, compare_b, out, err);
        }
        if (calibrate->parsed()) {
            return cmd_calibrate(global, calibrate_corpus, calibrate_n, calibrate_seed,
                                 calibrate_seed_opt->count() > 0, calibrate_csv, out, err);
        }
        if (evaluate_cmd->parsed()) {
            return cmd_evaluate(global, evaluate_corpus, evaluate_index, evaluate_cases,
                                evaluate_top_k, evaluate_csv, out, err);
        }
        if (explore_cmd->parsed()) {
            return cmd_explore(global, explore_corpus, explore_index, explore_limit,
                               explore_top_k, out);
        }
        if (report->parsed()) {
            return cmd_report(global, report_corpus, report_index, report_doc, report_format,
                              report_top_k, report_out, out, err);
        }
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitPartial;
    }
    err << "error: no command\n";
    return kExitUsage;
}

} // namespace stemsim
