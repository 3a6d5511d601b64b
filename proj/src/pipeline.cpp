#include "stemsim/pipeline.hpp"

#include "stemsim/errors.hpp"
#include "stemsim/text.hpp"
#include "stemsim/util.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace stemsim {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

} // namespace

const SimilarityReport* Analysis::report_for(std::string_view candidate_id) const {
    for (const SimilarityReport& report : reports) {
        if (report.doc_b == candidate_id) {
            return &report;
        }
    }
    return nullptr;
}

Channel measure_channel(Measure m) {
    switch (m) {
        case Measure::histo:
        case Measure::lcis:
        case Measure::git:
            return Channel::math;
        case Measure::bc:
        case Measure::lccs:
        case Measure::gct:
            return Channel::citation;
        case Measure::enco:
            return Channel::text;
    }
    return Channel::text;
}

Analysis analyze(const CorpusFeatures& features, const SearchIndex& index,
                 std::string_view query_id, const AnalyzeOptions& options) {
    const std::optional<std::size_t> query_idx = features.corpus().find(query_id);
    if (!query_idx) {
        throw Error("unknown document '" + std::string(query_id) + "'");
    }
    Analysis analysis;
    analysis.query_id = std::string(query_id);
    analysis.candidates = retrieve_candidates(features, index, *query_idx, options.top_k);

    const std::vector<std::string>& union_ids = analysis.candidates.union_ids;
    if (union_ids.empty()) {
        const DocumentFeatures& f = features.of(*query_idx);
        if (f.identifier_total == 0 && f.citation_sequence.empty() &&
            f.fingerprints.hashes.empty()) {
            analysis.diagnostic = "document has no extractable features in any channel";
        } else {
            analysis.diagnostic = "no candidate documents matched";
        }
        return analysis;
    }

    analysis.reports.resize(union_ids.size());
    const DocumentFeatures& query_features = features.of(*query_idx);
    parallel_for(union_ids.size(), options.threads, [&](std::size_t i) {
        const std::optional<std::size_t> cand_idx = features.corpus().find(union_ids[i]);
        analysis.reports[i] = compare_pair(query_features, features.of(*cand_idx),
                                           options.gates, options.thresholds);
    });
    return analysis;
}

std::vector<std::size_t> ranked_reports(const Analysis& analysis, Channel channel, Measure m) {
    std::vector<std::size_t> indices;
    for (std::size_t i = 0; i < analysis.reports.size(); ++i) {
        if (analysis.candidates.in_channel(channel, analysis.reports[i].doc_b)) {
            indices.push_back(i);
        }
    }
    std::sort(indices.begin(), indices.end(), [&](std::size_t ia, std::size_t ib) {
        const MeasureScore& a = analysis.reports[ia].score(m);
        const MeasureScore& b = analysis.reports[ib].score(m);
        if (a.applicable() != b.applicable()) {
            return a.applicable();
        }
        if (a.applicable() && *a.value != *b.value) {
            return *a.value > *b.value;
        }
        return analysis.reports[ia].doc_b < analysis.reports[ib].doc_b;
    });
    return indices;
}

std::vector<TestCase> load_cases(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot read case manifest " + path.string());
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string content = buffer.str();

    std::vector<TestCase> cases;
    const std::string trimmed = trim(content);
    if (!trimmed.empty() && trimmed.front() == '[') {
        const json root = json::parse(content, nullptr, false);
        if (root.is_discarded() || !root.is_array()) {
            throw ParseError("case manifest is not a JSON array: " + path.string());
        }
        for (const json& item : root) {
            if (!item.is_object() || !item.contains("case_id") || !item.contains("query_doc") ||
                !item.contains("source_doc")) {
                throw SchemaError("cases", "each entry needs case_id, query_doc, source_doc");
            }
            cases.push_back({item["case_id"].get<std::string>(),
                             item["query_doc"].get<std::string>(),
                             item["source_doc"].get<std::string>()});
        }
        return cases;
    }

    // CSV: case_id,query_doc,source_doc with an optional header line.
    std::istringstream lines(content);
    std::string line;
    bool first = true;
    while (std::getline(lines, line)) {
        const std::string row = trim(line);
        if (row.empty()) {
            continue;
        }
        std::vector<std::string> fields;
        std::string field;
        std::istringstream cells(row);
        while (std::getline(cells, field, ',')) {
            fields.push_back(trim(field));
        }
        if (first && !fields.empty() && fields[0] == "case_id") {
            first = false;
            continue;
        }
        first = false;
        if (fields.size() != 3) {
            throw ParseError("case manifest row needs 3 columns: " + row);
        }
        cases.push_back({fields[0], fields[1], fields[2]});
    }
    return cases;
}

namespace {

struct RankWithTies {
    std::size_t rank = 0;  // pessimistically rounded mean rank of the tie group
    bool tied = false;
};

// Position of the source among the ranked reports, with tied scores assigned
// the ceiling of the tie group's mean rank.
std::optional<RankWithTies> source_rank(const Analysis& analysis,
                                        const std::vector<std::size_t>& ranked, Measure m,
                                        std::string_view source_id) {
    std::size_t source_pos = ranked.size();
    for (std::size_t pos = 0; pos < ranked.size(); ++pos) {
        if (analysis.reports[ranked[pos]].doc_b == source_id) {
            source_pos = pos;
            break;
        }
    }
    if (source_pos == ranked.size()) {
        return std::nullopt;
    }
    const MeasureScore& score = analysis.reports[ranked[source_pos]].score(m);
    if (!score.applicable()) {
        return std::nullopt;
    }
    const double value = *score.value;
    std::size_t first = source_pos;
    while (first > 0) {
        const MeasureScore& other = analysis.reports[ranked[first - 1]].score(m);
        if (!other.applicable() || *other.value != value) {
            break;
        }
        --first;
    }
    std::size_t last = source_pos;
    while (last + 1 < ranked.size()) {
        const MeasureScore& other = analysis.reports[ranked[last + 1]].score(m);
        if (!other.applicable() || *other.value != value) {
            break;
        }
        ++last;
    }
    RankWithTies result;
    // 1-based ranks; mean of first+1 .. last+1 rounded up.
    result.rank = (first + last + 2 + 1) / 2;
    result.tied = first != last;
    return result;
}

} // namespace

EvaluationResult evaluate(const CorpusFeatures& features, const SearchIndex& index,
                          std::span<const TestCase> cases, const AnalyzeOptions& options) {
    EvaluationResult result;
    for (const TestCase& test_case : cases) {
        if (!features.corpus().find(test_case.query_doc)) {
            throw Error("case '" + test_case.case_id + "': unknown query document '" +
                        test_case.query_doc + "'");
        }
        if (!features.corpus().find(test_case.source_doc)) {
            throw Error("case '" + test_case.case_id + "': unknown source document '" +
                        test_case.source_doc + "'");
        }
        const Analysis analysis = analyze(features, index, test_case.query_doc, options);

        CaseOutcome outcome;
        outcome.test_case = test_case;
        for (std::size_t c = 0; c < kChannelCount; ++c) {
            outcome.retrieved[c] =
                analysis.candidates.in_channel(static_cast<Channel>(c), test_case.source_doc);
        }
        for (Measure m : kAllMeasures) {
            MeasureOutcome& mo = outcome.measures[static_cast<std::size_t>(m)];
            if (const SimilarityReport* report = analysis.report_for(test_case.source_doc)) {
                mo.score = report->score(m).value;
            }
            const std::vector<std::size_t> own =
                ranked_reports(analysis, measure_channel(m), m);
            if (const auto r = source_rank(analysis, own, m, test_case.source_doc)) {
                mo.rank = r->rank;
                mo.tied = r->tied;
            }
            const std::vector<std::size_t> in_union =
                ranked_reports(analysis, Channel::union_all, m);
            if (const auto r = source_rank(analysis, in_union, m, test_case.source_doc)) {
                mo.union_rank = r->rank;
                mo.union_tied = r->tied;
            }
        }
        result.cases.push_back(std::move(outcome));
    }

    const double n = static_cast<double>(std::max<std::size_t>(1, result.cases.size()));
    for (std::size_t c = 0; c < kChannelCount; ++c) {
        std::size_t hits = 0;
        for (const CaseOutcome& outcome : result.cases) {
            hits += outcome.retrieved[c] ? 1 : 0;
        }
        result.recall[c] = static_cast<double>(hits) / n;
    }
    for (Measure m : kAllMeasures) {
        const std::size_t mi = static_cast<std::size_t>(m);
        double sum = 0.0;
        double sum_union = 0.0;
        for (const CaseOutcome& outcome : result.cases) {
            const MeasureOutcome& mo = outcome.measures[mi];
            sum += mo.rank ? 1.0 / static_cast<double>(*mo.rank) : 0.0;
            sum_union += mo.union_rank ? 1.0 / static_cast<double>(*mo.union_rank) : 0.0;
        }
        result.mrr[mi] = sum / n;
        result.mrr_union[mi] = sum_union / n;
    }
    return result;
}

namespace {

struct LightSuspect {
    std::size_t query_idx;
    std::size_t cand_idx;
    double histo_score;
    double git_score;
};

} // namespace

std::vector<SuspectPair> explore(const CorpusFeatures& features, const SearchIndex& index,
                                 const ExploreOptions& options) {
    const std::size_t n = features.size();
    std::vector<std::vector<LightSuspect>> per_doc(n);

    parallel_for(n, options.threads, [&](std::size_t d) {
        const CandidateSet candidates = retrieve_candidates(features, index, d, options.top_k);
        const DocumentFeatures& query = features.of(d);
        for (const std::string& cand_id : candidates.union_ids) {
            const std::size_t c = *features.corpus().find(cand_id);
            if (features.share_author(d, c)) {
                continue;
            }
            // Prune pairs where the older document cites the newer one;
            // pairs with missing or equal dates are retained.
            const auto& date_q = features.of(d).date;
            const auto& date_c = features.of(c).date;
            if (date_q && date_c && *date_q != *date_c) {
                const std::size_t older = *date_q < *date_c ? d : c;
                const std::size_t newer = older == d ? c : d;
                if (features.cites(older, newer)) {
                    continue;
                }
            }
            const MathPairScores scores = math_pair_scores(query, features.of(c), options.gates);
            if (!scores.histo || *scores.histo < options.histo_gate || !scores.git) {
                continue;
            }
            per_doc[d].push_back({d, c, *scores.histo, *scores.git});
        }
    });

    // Deduplicate unordered pairs, keeping the orientation with higher GIT
    // (ties: the orientation whose query id sorts first).
    std::map<std::pair<std::size_t, std::size_t>, LightSuspect> best;
    for (const std::vector<LightSuspect>& list : per_doc) {
        for (const LightSuspect& suspect : list) {
            const std::pair<std::size_t, std::size_t> key{
                std::min(suspect.query_idx, suspect.cand_idx),
                std::max(suspect.query_idx, suspect.cand_idx)};
            const auto [it, inserted] = best.emplace(key, suspect);
            if (inserted) {
                continue;
            }
            const LightSuspect& current = it->second;
            const bool replace =
                suspect.git_score > current.git_score ||
                (suspect.git_score == current.git_score &&
                 features.of(suspect.query_idx).doc_id < features.of(current.query_idx).doc_id);
            if (replace) {
                it->second = suspect;
            }
        }
    }

    std::vector<LightSuspect> survivors;
    survivors.reserve(best.size());
    for (const auto& [key, suspect] : best) {
        survivors.push_back(suspect);
    }
    std::sort(survivors.begin(), survivors.end(),
              [&](const LightSuspect& a, const LightSuspect& b) {
                  if (a.git_score != b.git_score) {
                      return a.git_score > b.git_score;
                  }
                  const std::string& a_id = features.of(a.query_idx).doc_id;
                  const std::string& b_id = features.of(b.query_idx).doc_id;
                  if (a_id != b_id) {
                      return a_id < b_id;
                  }
                  return features.of(a.cand_idx).doc_id < features.of(b.cand_idx).doc_id;
              });
    if (survivors.size() > options.limit) {
        survivors.resize(options.limit);
    }

    std::vector<SuspectPair> out(survivors.size());
    parallel_for(survivors.size(), options.threads, [&](std::size_t i) {
        const LightSuspect& s = survivors[i];
        SuspectPair& pair = out[i];
        pair.report = compare_pair(features.of(s.query_idx), features.of(s.cand_idx),
                                   options.gates, options.thresholds);
        pair.doc_a = pair.report.doc_a;
        pair.doc_b = pair.report.doc_b;
        pair.histo_score = *pair.report.score(Measure::histo).value;
        pair.git_score = *pair.report.score(Measure::git).value;
    });
    return out;
}

ReportFormat report_format_from_name(std::string_view name) {
    if (name == "json") {
        return ReportFormat::json;
    }
    if (name == "html") {
        return ReportFormat::html;
    }
    throw Error("unknown report format '" + std::string(name) + "' (expected json or html)");
}

namespace {

ordered_json tiles_to_json(const std::vector<Tile>& tiles) {
    ordered_json arr = ordered_json::array();
    for (const Tile& t : tiles) {
        arr.push_back({{"pos_a", t.pos_a}, {"pos_b", t.pos_b}, {"length", t.length}});
    }
    return arr;
}

ordered_json report_to_json(const SimilarityReport& report) {
    ordered_json scores;
    for (Measure m : kAllMeasures) {
        const MeasureScore& s = report.score(m);
        ordered_json entry;
        if (s.applicable()) {
            entry["value"] = *s.value;
        } else {
            entry["value"] = nullptr;
            entry["reason"] = s.reason;
        }
        entry["significant"] = report.verdict(m);
        scores[std::string(measure_name(m))] = std::move(entry);
    }
    ordered_json out;
    out["doc_a"] = report.doc_a;
    out["doc_b"] = report.doc_b;
    out["scores"] = std::move(scores);
    out["identifier_tiles"] = tiles_to_json(report.identifier_tiles);
    out["citation_tiles"] = tiles_to_json(report.citation_tiles);
    return out;
}

std::string html_escape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

std::string format_score(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

std::string render_html(std::span<const SimilarityReport> reports,
                        const ThresholdConfig& thresholds) {
    std::ostringstream out;
    out << "<!DOCTYPE html>\n<html>\n<head>\n<meta charset=\"utf-8\">\n"
        << "<title>Similarity report</title>\n<style>\n"
        << "table { border-collapse: collapse; }\n"
        << "td, th { border: 1px solid #999; padding: 4px 8px; }\n"
        << "td.significant { background: #ffd3d3; font-weight: bold; }\n"
        << "</style>\n</head>\n<body>\n";
    if (reports.empty()) {
        out << "<p>No candidates to report.</p>\n</body>\n</html>\n";
        return out.str();
    }
    out << "<table>\n<tr><th>query</th><th>candidate</th>";
    for (Measure m : kAllMeasures) {
        out << "<th>" << measure_name(m) << " &ge; " << format_score(thresholds.get(m))
            << "</th>";
    }
    out << "</tr>\n";
    for (const SimilarityReport& report : reports) {
        out << "<tr><td>" << html_escape(report.doc_a) << "</td><td>"
            << html_escape(report.doc_b) << "</td>";
        for (Measure m : kAllMeasures) {
            const MeasureScore& s = report.score(m);
            if (!s.applicable()) {
                out << "<td title=\"" << html_escape(s.reason) << "\">&ndash;</td>";
            } else if (report.verdict(m)) {
                out << "<td class=\"significant\">" << format_score(*s.value)
                    << " (significant)</td>";
            } else {
                out << "<td>" << format_score(*s.value) << "</td>";
            }
        }
        out << "</tr>\n";
    }
    out << "</table>\n";
    for (const SimilarityReport& report : reports) {
        if (report.identifier_tiles.empty() && report.citation_tiles.empty()) {
            continue;
        }
        out << "<h3>Matched tiles: " << html_escape(report.doc_a) << " vs "
            << html_escape(report.doc_b) << "</h3>\n<ul>\n";
        for (const Tile& t : report.identifier_tiles) {
            out << "<li>identifiers [" << t.pos_a << ", " << t.pos_b << "] length " << t.length
                << "</li>\n";
        }
        for (const Tile& t : report.citation_tiles) {
            out << "<li>citations [" << t.pos_a << ", " << t.pos_b << "] length " << t.length
                << "</li>\n";
        }
        out << "</ul>\n";
    }
    out << "</body>\n</html>\n";
    return out.str();
}

} // namespace

std::string report_to_json_string(const SimilarityReport& report) {
    return report_to_json(report).dump(2);
}

std::string render_report(std::span<const SimilarityReport> reports, ReportFormat format,
                          const ThresholdConfig& thresholds) {
    if (format == ReportFormat::html) {
        return render_html(reports, thresholds);
    }
    ordered_json out;
    out["report_count"] = reports.size();
    if (reports.empty()) {
        out["message"] = "no candidates";
    }
    ordered_json arr = ordered_json::array();
    for (const SimilarityReport& report : reports) {
        arr.push_back(report_to_json(report));
    }
    out["reports"] = std::move(arr);
    ordered_json thresholds_json;
    for (Measure m : kAllMeasures) {
        thresholds_json[std::string(measure_name(m))] = thresholds.get(m);
    }
    out["thresholds"] = std::move(thresholds_json);
    return out.dump(2);
}

} // namespace stemsim
